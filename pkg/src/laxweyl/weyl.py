"""Weyl connections, curvature, Einstein--Weyl and self-duality residuals.

Conventions (all indices refer to positions in ``coords.base``):

* connection coefficients ``G[k][i][j]`` represent ``Gamma^k_{ij}`` and are
  symmetric in ``(i, j)``;
* curvature ``R[l][k][i][j]`` is ``R^l_{k i j} = D_i Gamma^l_{jk}
  - D_j Gamma^l_{ik} + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}``;
* Ricci is the trace ``Ric_{kj} = R^i_{k i j}``.

A Weyl connection is the unique torsion-free connection with
``nabla g = -2 omega (x) g`` for a one-form ``omega``; its coefficients are
the Levi-Civita ones plus ``delta^k_i omega_j + delta^k_j omega_i
- g_{ij} omega^k``.  The Einstein--Weyl residual is the trace-free part of
the symmetrized Ricci tensor of that connection; in four dimensions the
relevant residual is instead the anti-self-dual (or self-dual, by
orientation) part of the conformally invariant Weyl tensor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .conformal import Metric
from .errors import KernelError, NoSolution
from .expr import (
    Expr,
    Var,
    ZERO,
    ONE,
    KIND_PARAM,
    _m_div,
    _m_degree,
    _p_leading,
    _p_mul,
    _p_sub,
)
from .ideal import SolvedSystem
from .jets import Coordinates


class Classification(Enum):
    """How a residual tensor vanishes (or fails to)."""

    IDENTICALLY_ZERO = "identically-zero"
    ZERO_MOD_IDEAL = "zero-mod-ideal"
    NONZERO = "nonzero"


@dataclass
class ResidualTensor:
    """A labelled family of residual entries, raw and reduced."""

    coords: Coordinates
    raw: Dict[str, Expr]
    reduced: Dict[str, Expr]

    def classify(self) -> Classification:
        if all(e.is_zero() for e in self.raw.values()):
            return Classification.IDENTICALLY_ZERO
        if all(e.is_zero() for e in self.reduced.values()):
            return Classification.ZERO_MOD_IDEAL
        return Classification.NONZERO

    def witness(self) -> Optional[Tuple[str, Expr]]:
        """A nonvanishing reduced entry, if any (deterministic choice)."""
        for label in sorted(self.reduced):
            if not self.reduced[label].is_zero():
                return label, self.reduced[label]
        return None

    def is_zero_mod_ideal(self) -> bool:
        return self.classify() in (Classification.IDENTICALLY_ZERO,
                                   Classification.ZERO_MOD_IDEAL)


# ---------------------------------------------------------------------------
# connections and curvature
# ---------------------------------------------------------------------------


def christoffel_levi_civita(metric: Metric) -> List[List[List[Expr]]]:
    """Levi-Civita coefficients ``Gamma^k_{ij}`` (total derivatives of the
    metric entries, exact)."""
    coords = metric.coords
    n = coords.dim
    inv = metric.inverse_matrix()
    D = coords.total_derivative
    dg = [[[D(metric.matrix[i][j], k) for k in range(n)] for j in range(n)]
          for i in range(n)]
    half = Expr.number(Fraction(1, 2))
    out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                total = ZERO
                for l in range(n):
                    total = total + inv[k][l] * (
                        dg[l][j][i] + dg[i][l][j] - dg[i][j][l])
                val = half * total
                out[k][i][j] = val
                out[k][j][i] = val
    return out


def christoffel_weyl(metric: Metric, omega: Sequence[Expr]) -> List[List[List[Expr]]]:
    """Coefficients of the Weyl connection with one-form ``omega``
    (covariant components, ordered like ``coords.base``)."""
    coords = metric.coords
    n = coords.dim
    lc = christoffel_levi_civita(metric)
    inv = metric.inverse_matrix()
    omega_up = [sum((inv[k][l] * omega[l] for l in range(n)), ZERO)
                for k in range(n)]
    out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                val = lc[k][i][j]
                if k == i:
                    val = val + omega[j]
                if k == j:
                    val = val + omega[i]
                val = val - metric.matrix[i][j] * omega_up[k]
                out[k][i][j] = val
                out[k][j][i] = val
    return out


def riemann_tensor(coords: Coordinates,
                   gamma: List[List[List[Expr]]]) -> List[List[List[List[Expr]]]]:
    """Curvature ``R^l_{kij}`` of a connection given by its coefficients."""
    n = coords.dim
    D = coords.total_derivative
    dgamma = [[[[D(gamma[l][i][k], m) for m in range(n)] for k in range(n)]
               for i in range(n)] for l in range(n)]
    out = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for l in range(n):
        for k in range(n):
            for i in range(n):
                for j in range(i + 1, n):
                    val = dgamma[l][j][k][i] - dgamma[l][i][k][j]
                    for m in range(n):
                        val = val + gamma[l][i][m] * gamma[m][j][k] \
                                  - gamma[l][j][m] * gamma[m][i][k]
                    out[l][k][i][j] = val
                    out[l][k][j][i] = -val
    return out


def ricci_tensor(coords: Coordinates,
                 riemann: List[List[List[List[Expr]]]]) -> List[List[Expr]]:
    """``Ric_{kj} = R^i_{kij}`` (not symmetric for a general Weyl
    connection)."""
    n = coords.dim
    return [[sum((riemann[i][k][i][j] for i in range(n)), ZERO)
             for j in range(n)] for k in range(n)]


# ---------------------------------------------------------------------------
# Einstein--Weyl (3D)
# ---------------------------------------------------------------------------


def ew_residual(system: SolvedSystem, metric: Metric,
                omega: Sequence[Expr]) -> ResidualTensor:
    """Trace-free symmetrized Ricci of the Weyl connection, raw and reduced
    modulo the system.  Vanishing mod the ideal is the Einstein--Weyl
    property of the conformal structure with Weyl form ``omega``."""
    coords = metric.coords
    n = coords.dim
    if n != 3:
        raise KernelError("the Einstein-Weyl residual is a 3D notion")
    gamma = christoffel_weyl(metric, omega)
    ric = ricci_tensor(coords, riemann_tensor(coords, gamma))
    half = Expr.number(Fraction(1, 2))
    sym = [[half * (ric[i][j] + ric[j][i]) for j in range(n)] for i in range(n)]
    inv = metric.inverse_matrix()
    trace = ZERO
    for i in range(n):
        for j in range(n):
            trace = trace + inv[i][j] * sym[i][j]
    third = Expr.number(Fraction(1, 3))
    raw = {}
    for i in range(n):
        for j in range(i, n):
            label = coords.base[i] + coords.base[j]
            raw[label] = sym[i][j] - third * trace * metric.matrix[i][j]
    reduced = {k: system.reduce(v) for k, v in raw.items()}
    return ResidualTensor(coords, raw, reduced)


def laplacian(metric: Metric, f: Expr) -> Expr:
    """Levi-Civita Laplacian ``g^{ij} (D_i D_j - Gamma^k_{ij} D_k) f``."""
    coords = metric.coords
    n = coords.dim
    inv = metric.inverse_matrix()
    lc = christoffel_levi_civita(metric)
    D = coords.total_derivative
    df = [D(f, k) for k in range(n)]
    total = ZERO
    for i in range(n):
        for j in range(n):
            term = D(df[j], i)
            for k in range(n):
                term = term - lc[k][i][j] * df[k]
            total = total + inv[i][j] * term
    return total


# ---------------------------------------------------------------------------
# Self-duality (4D)
# ---------------------------------------------------------------------------


def _fraction_sqrt(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    pn, pd = isqrt(c.numerator), isqrt(c.denominator)
    if pn * pn == c.numerator and pd * pd == c.denominator:
        return Fraction(pn, pd)
    return None


def expr_sqrt(e: Expr) -> Optional[Expr]:
    """Exact square root of an expression when one exists in the rational
    function field (None otherwise)."""
    if e.is_zero():
        return ZERO
    num = _poly_sqrt(e.num)
    if num is None:
        return None
    den = _poly_sqrt(e.den)
    if den is None:
        return None
    return Expr(num, den)


def _poly_sqrt(p) -> Optional[dict]:
    """Square root of a polynomial dict when it is a perfect square: build
    the root term by term against twice the leading root term."""
    if not p:
        return {}
    lead_mono, lead_coeff = _p_leading(p)
    if any(exp % 2 for _, exp in lead_mono):
        return None
    c = _fraction_sqrt(lead_coeff)
    if c is None:
        return None
    half_mono = tuple((v, exp // 2) for v, exp in lead_mono)
    root = {half_mono: c}
    for _ in range(len(p) * len(p) + 2):
        rem = _p_sub(p, _p_mul(root, root))
        if not rem:
            return root
        rm, rc = _p_leading(rem)
        div = _m_div(rm, half_mono)
        if div is None:
            return None
        coeff = rc / (2 * c)
        new = root.get(div, Fraction(0)) + coeff
        if new:
            root[div] = new
        else:
            root.pop(div, None)
    return None


_EPS4 = {}
for perm in itertools.permutations(range(4)):
    sign = 1
    lst = list(perm)
    for a in range(4):
        for b in range(a + 1, 4):
            if lst[a] > lst[b]:
                sign = -sign
    _EPS4[perm] = sign


def weyl_curvature_tensor(metric: Metric) -> Dict[tuple, Expr]:
    """Fully covariant conformal Weyl tensor ``C_{a b i j}`` of a 4D metric,
    returned on the index set ``a < b``, ``i < j`` (the other components
    follow by antisymmetry)."""
    coords = metric.coords
    n = coords.dim
    lc = christoffel_levi_civita(metric)
    riem_up = riemann_tensor(coords, lc)
    g = metric.matrix
    inv = metric.inverse_matrix()
    # R_{abij} = g_{am} R^m_{bij}
    riem = [[[[sum((g[a][m] * riem_up[m][b][i][j] for m in range(n)), ZERO)
               for j in range(n)] for i in range(n)] for b in range(n)]
            for a in range(n)]
    ric = ricci_tensor(coords, riem_up)
    scal = ZERO
    for i in range(n):
        for j in range(n):
            scal = scal + inv[i][j] * ric[i][j]
    half = Expr.number(Fraction(1, 2))
    sixth = Expr.number(Fraction(1, 6))
    # Schouten for n=4: P = (Ric - Scal g / 6) / 2
    P = [[half * (ric[i][j] - sixth * scal * g[i][j]) for j in range(n)]
         for i in range(n)]
    out: Dict[tuple, Expr] = {}
    for a in range(n):
        for b in range(a + 1, n):
            for i in range(n):
                for j in range(i + 1, n):
                    c = riem[a][b][i][j] \
                        - (g[a][i] * P[j][b] - g[a][j] * P[i][b]
                           + g[b][j] * P[i][a] - g[b][i] * P[j][a])
                    out[(a, b, i, j)] = c
    return out


def _weyl_component(c: Dict[tuple, Expr], a: int, b: int, i: int, j: int) -> Expr:
    if a == b or i == j:
        return ZERO
    sign = 1
    if a > b:
        a, b = b, a
        sign = -sign
    if i > j:
        i, j = j, i
        sign = -sign
    val = c[(a, b, i, j)]
    return val if sign > 0 else -val


def dual_on_second_pair(metric: Metric,
                        c: Dict[tuple, Expr]) -> Dict[tuple, Expr]:
    """Apply the volume-normalized star to the second index pair:
    ``(V C)_{abkl} = 1/2 eps_{klmn} g^{mp} g^{nq} C_{abpq}`` with the plain
    permutation symbol ``eps`` (the metric volume factor is handled by the
    caller through the square root of ``det g``)."""
    coords = metric.coords
    n = coords.dim
    inv = metric.inverse_matrix()
    half = Expr.number(Fraction(1, 2))
    # raise the second pair once: C_{ab}^{pq}
    raised: Dict[tuple, Expr] = {}
    for a in range(n):
        for b in range(a + 1, n):
            for p in range(n):
                for q in range(p + 1, n):
                    val = ZERO
                    for m in range(n):
                        for l in range(n):
                            cv = _weyl_component(c, a, b, m, l)
                            if not cv.is_zero():
                                val = val + inv[p][m] * inv[q][l] * cv
                    raised[(a, b, p, q)] = val
    out: Dict[tuple, Expr] = {}
    for a in range(n):
        for b in range(a + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    val = ZERO
                    for p in range(n):
                        for q in range(n):
                            eps = _EPS4.get((k, l, p, q), 0)
                            if eps == 0:
                                continue
                            if p < q:
                                term = raised[(a, b, p, q)]
                            else:
                                term = -raised[(a, b, q, p)]
                            val = val + Expr.number(eps) * term
                    out[(a, b, k, l)] = half * val
    return out


@dataclass
class SelfDualityReport:
    """Outcome of the 4D self-duality check."""

    residual: ResidualTensor
    orientation: str
    volume_sqrt: Optional[Expr]
    formal_pair: bool

    def classify(self) -> Classification:
        return self.residual.classify()


def sd_residual(system: SolvedSystem, metric: Metric,
                orientation: str = "+") -> SelfDualityReport:
    """Self-duality residual of the conformal structure.

    When ``sqrt(det g)`` exists in the rational-function field the residual
    is ``(C - sign * sqrt(det g) * V(C)) / 2`` where ``V`` is the star on the
    second index pair without the volume factor.  Otherwise both ``C`` and
    ``V(C)`` must vanish for the (anti-)self-duality to hold and the check
    degenerates to that pair (orientation is then immaterial); the report
    records which branch ran.
    """
    coords = metric.coords
    if coords.dim != 4:
        raise KernelError("self-duality is a 4D notion")
    if orientation not in ("+", "-"):
        raise ValueError("orientation must be '+' or '-'")
    c = weyl_curvature_tensor(metric)
    v = dual_on_second_pair(metric, c)
    det = system.reduce(metric.determinant())
    s = expr_sqrt(det)
    labels = lambda key: "C[%s%s|%s%s]" % tuple(coords.base[i] for i in key)
    if s is not None:
        if orientation == "-":
            s = -s
        half = Expr.number(Fraction(1, 2))
        raw = {labels(key): half * (c[key] - s * v[key]) for key in c}
        reduced = {k: system.reduce(e) for k, e in raw.items()}
        return SelfDualityReport(
            ResidualTensor(coords, raw, reduced), orientation, s, False)
    raw = {}
    for key in c:
        raw[labels(key)] = c[key]
        raw["V" + labels(key)] = v[key]
    reduced = {k: system.reduce(e) for k, e in raw.items()}
    return SelfDualityReport(
        ResidualTensor(coords, raw, reduced), orientation, None, True)


# ---------------------------------------------------------------------------
# solving for the Weyl one-form
# ---------------------------------------------------------------------------

ParamPoly = Dict[tuple, Fraction]  # monomials in PARAM vars -> coefficient


def _split_param_monomial(mono) -> tuple:
    params, rest = [], []
    for v, e in mono:
        (params if v.kind == KIND_PARAM else rest).append((v, e))
    return tuple(params), tuple(rest)


def _param_equations(e: Expr) -> List[ParamPoly]:
    """Coefficient-wise vanishing conditions: the numerator, grouped by its
    non-parameter monomial content, must vanish for every group."""
    groups: Dict[tuple, ParamPoly] = {}
    for mono, coeff in e.num.items():
        pmono, rest = _split_param_monomial(mono)
        group = groups.setdefault(rest, {})
        group[pmono] = group.get(pmono, Fraction(0)) + coeff
    eqs = []
    for poly in groups.values():
        poly = {m: c for m, c in poly.items() if c}
        if poly:
            eqs.append(poly)
    return eqs


def _pp_degree(poly: ParamPoly) -> int:
    return max(_m_degree(m) for m in poly)


def _pp_subs(poly: ParamPoly, var: Var, value: ParamPoly) -> ParamPoly:
    """Substitute ``var -> value`` (a param-poly) into a param-poly."""
    out: ParamPoly = {}
    for mono, coeff in poly.items():
        e = 0
        rest = []
        for v, exp in mono:
            if v is var:
                e = exp
            else:
                rest.append((v, exp))
        terms: Dict[tuple, Fraction] = {tuple(rest): coeff}
        for _ in range(e):
            new: Dict[tuple, Fraction] = {}
            for m1, c1 in terms.items():
                for m2, c2 in value.items():
                    prod = _pp_mono_mul(m1, m2)
                    new[prod] = new.get(prod, Fraction(0)) + c1 * c2
            terms = new
        for m, c in terms.items():
            out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c}


def _pp_mono_mul(a: tuple, b: tuple) -> tuple:
    d: Dict[Var, int] = {}
    for v, e in a:
        d[v] = d.get(v, 0) + e
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda kv: kv[0].key))


def _rational_roots(coeffs: Dict[int, Fraction]) -> List[Fraction]:
    """All rational roots of a univariate polynomial given as
    {degree: coefficient}."""
    lcm = 1
    for c in coeffs.values():
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    ints = {d: int(c * lcm) for d, c in coeffs.items()}
    degs = sorted(ints)
    low = degs[0]
    if low > 0:
        ints = {d - low: c for d, c in ints.items()}
        roots = [Fraction(0)]
    else:
        roots = []
    deg = max(ints)
    a0, an = ints.get(0, 0), ints[deg]
    if a0 == 0:
        return sorted(set(roots))
    for p in _divisors(abs(a0)):
        for q in _divisors(abs(an)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = sum(c * cand ** d for d, c in ints.items())
                if val == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> List[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _solve_param_system(equations: List[ParamPoly],
                        variables: List[Var]) -> tuple:
    """Solve polynomial equations over the rationals by iterated linear
    elimination, with branching on rational roots of univariate equations.

    Returns ``(solutions, blocked)`` where each solution is
    ``(assignment, free_vars)`` (an exact assignment dict plus leftover
    genuinely free variables that were set to zero) and ``blocked`` lists
    human-readable reasons why some branch could not be decided."""
    solutions = []
    blocked: List[str] = []
    seen_assignments = set()

    def recurse(eqs: List[ParamPoly], assign: Dict[Var, Fraction]):
        eqs = [e for e in (dict(e) for e in eqs) if e]
        changed = True
        while changed:
            changed = False
            for e in eqs:
                if list(e.keys()) == [()]:
                    return  # nonzero constant: inconsistent branch
            # linear pass: pick an equation linear in some variable whose
            # coefficient is a nonzero rational and substitute it away
            for e in eqs:
                target = None
                for mono in e:
                    if len(mono) == 1 and mono[0][1] == 1:
                        v = mono[0][0]
                        if all(v not in dict(m) for m in e if m != mono):
                            target = (v, mono)
                            break
                if target is None:
                    continue
                v, mono = target
                coeff = e[mono]
                rest = {m: -c / coeff for m, c in e.items() if m != mono}
                new_eqs = []
                for other in eqs:
                    if other is e:
                        continue
                    sub = _pp_subs(other, v, rest)
                    if sub:
                        new_eqs.append(sub)
                if all(m == () for m in rest):
                    assign[v] = rest.get((), Fraction(0))
                else:
                    # polynomial value: remember symbolically via back-subst
                    assign[v] = rest
                eqs = new_eqs
                changed = True
                break
        if not eqs:
            resolved = _back_substitute(assign)
            if resolved is None:
                blocked.append("cyclic symbolic assignment")
                return
            free = [v for v in variables if v not in resolved]
            for v in free:
                resolved[v] = Fraction(0)
            key = tuple(sorted(((v.name, resolved[v]) for v in resolved)))
            if key not in seen_assignments:
                seen_assignments.add(key)
                solutions.append((resolved, free))
            return
        # a single-monomial equation c * v1^a * v2^b ... = 0 forces one of
        # its variables to vanish (exact over a field): branch on each
        for e in eqs:
            if len(e) == 1:
                mono = next(iter(e))
                for v, _ in mono:
                    new_eqs = [_pp_subs(o, v, {}) for o in eqs if o is not e]
                    new_assign = dict(assign)
                    new_assign[v] = Fraction(0)
                    recurse([x for x in new_eqs if x], new_assign)
                return
        # branch on a univariate equation
        for e in eqs:
            vars_here = {v for m in e for v, _ in m}
            if len(vars_here) == 1:
                v = next(iter(vars_here))
                coeffs: Dict[int, Fraction] = {}
                for m, c in e.items():
                    d = m[0][1] if m else 0
                    coeffs[d] = coeffs.get(d, Fraction(0)) + c
                roots = _rational_roots(coeffs)
                if not roots:
                    blocked.append(
                        "univariate equation in %s has no rational root" % v.name)
                    return
                for r in roots:
                    new_eqs = [_pp_subs(o, v, {(): r} if r else {}) for o in eqs
                               if o is not e]
                    new_assign = dict(assign)
                    new_assign[v] = r
                    recurse([x for x in new_eqs if x], new_assign)
                return
        blocked.append(
            "stuck on a nonlinear system in variables {%s}"
            % ", ".join(sorted({v.name for e in eqs for m in e for v, _ in m})))

    recurse(equations, {})
    return solutions, blocked


def _back_substitute(assign: Dict[Var, object]) -> Optional[Dict[Var, Fraction]]:
    """Resolve symbolic (param-poly) assignments to plain rationals.  A
    variable that appears in a pending value but was never assigned is free
    and contributes zero; a genuine cycle returns None."""
    resolved: Dict[Var, Fraction] = {
        v: val for v, val in assign.items() if isinstance(val, Fraction)}
    pending = {v: val for v, val in assign.items()
               if not isinstance(val, Fraction)}
    while pending:
        progressed = False
        for v, poly in list(pending.items()):
            deps = {w for m in poly for w, _ in m}
            blocked_deps = {w for w in deps
                            if w not in resolved and w in pending}
            if blocked_deps:
                continue
            total = Fraction(0)
            for m, c in poly.items():
                val = c
                for w, e in m:
                    val *= resolved.get(w, Fraction(0)) ** e
                total += val
            resolved[v] = total
            del pending[v]
            progressed = True
        if not progressed:
            return None
    return resolved


@dataclass
class WeylFormSolution:
    """Result of :func:`solve_weyl_form`."""

    omega: List[Expr]
    unique: bool
    family_dim: int
    residual: ResidualTensor


def solve_weyl_form(system: SolvedSystem, metric: Optional[Metric] = None,
                    ansatz_order: Optional[int] = None) -> WeylFormSolution:
    """Find a Weyl one-form making the conformal structure Einstein--Weyl.

    The components of ``omega`` are sought as affine combinations, with
    unknown rational coefficients, of the non-reducible jet variables of
    order at most ``ansatz_order`` (default: one less than the system order,
    at least 1).  The coefficient equations are solved exactly over the
    rationals; :class:`NoSolution` is raised with diagnostics when no
    rational solution exists in the ansatz.
    """
    from .conformal import conformal_metric
    coords = system.coords
    if metric is None:
        metric = conformal_metric(system)
    if ansatz_order is None:
        ansatz_order = max(1, system.order - 1)
    # candidate monomials: 1 and every irreducible jet up to the order bound
    monomials: List[Expr] = [ONE]
    for order in range(ansatz_order + 1):
        for unk in coords.unknowns:
            for alpha in coords.multi_indices(order):
                v = coords.jet_var(unk, alpha)
                if system.reduction_target(v) is None:
                    monomials.append(Expr.variable(v))
    params: List[Var] = []
    omega: List[Expr] = []
    for i, base_name in enumerate(coords.base):
        comp = ZERO
        for k, mono in enumerate(monomials):
            p = Var.param("c_%s_%d" % (base_name, k))
            params.append(p)
            comp = comp + Expr.variable(p) * mono
        omega.append(comp)
    residual = ew_residual(system, metric, omega)
    equations: List[ParamPoly] = []
    seen = set()
    for entry in residual.reduced.values():
        for eq in _param_equations(entry):
            key = tuple(sorted(eq.items(), key=lambda kv: kv[0]))
            if key not in seen:
                seen.add(key)
                equations.append(eq)
    solutions, blocked = _solve_param_system(equations, params)
    if not solutions:
        raise NoSolution(
            "no rational Weyl form in the given ansatz",
            diagnostics={
                "ansatz_order": ansatz_order,
                "monomials": [str(m) for m in monomials],
                "equations": len(equations),
                "blocked": blocked,
            })
    assignment, free = solutions[0]
    point = {v: Expr.number(assignment[v]) for v in assignment}
    solved_omega = [comp.subs(point) for comp in omega]
    check = ew_residual(system, metric, solved_omega)
    if not check.is_zero_mod_ideal():
        raise NoSolution(
            "candidate Weyl form failed verification",
            diagnostics={"witness": str(check.witness())})
    unique = len(solutions) == 1 and not free
    return WeylFormSolution(solved_omega, unique, len(free), check)
