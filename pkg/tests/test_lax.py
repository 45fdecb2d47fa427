"""Lax pair verification, normalization, lifts, pencil geometry."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from laxweyl import (Coordinates, Expr, LaxPair, LaxVerdict, ONE, ZERO,
                     characteristic_check, conformal_equal, conformal_metric,
                     congruence_from_vectors, conic_oracle,
                     conic_oracle_sampling, monge_invariant, normal_lift_4d,
                     pullback, recover_metric, verify_lax, weyl_lift_3d)
from laxweyl.errors import (DegenerateCongruence, DegenerateFrame,
                            LambdaDependent)


class TestVerdicts:
    def test_dkp_lax_pair(self, dkp):
        report = verify_lax(dkp.system, dkp.pair)
        assert report.verdict is LaxVerdict.LAX_PAIR
        assert report.witness() is None

    def test_dkp_vertical_residual_is_generator(self, dkp):
        """The raw vertical residual reproduces the equation itself."""
        c = dkp.coords
        report = verify_lax(dkp.system, dkp.pair)
        generator = dkp.system.equations[0].residual(c)
        raw = report.raw["vertical"]
        assert (raw + generator).is_zero()
        assert all(report.raw[k].is_zero() for k in report.raw
                   if k != "vertical")

    def test_manakov_santini_lax_pair_not_normal(self, manakov_santini):
        doc = manakov_santini
        report = verify_lax(doc.system, doc.pair)
        assert report.verdict is LaxVerdict.LAX_PAIR
        assert not doc.pair.is_normal()

    def test_manakov_santini_horizontal_is_second_generator(
            self, manakov_santini):
        doc = manakov_santini
        c = doc.coords
        report = verify_lax(doc.system, doc.pair)
        second = next(eq for eq in doc.system.equations
                      if eq.label(c) == "G").residual(c)
        assert (report.raw["h_t"] + second).is_zero()

    def test_trivial_pair(self, dkp):
        c = dkp.coords
        lam = c.var("lam")
        report = verify_lax(dkp.system, LaxPair(c, lam, ZERO, ZERO, ZERO))
        assert report.verdict is LaxVerdict.TRIVIAL

    def test_broken_system_not_integrable(self, dkp_broken):
        doc = dkp_broken
        report = verify_lax(doc.system, doc.pair)
        assert report.verdict is LaxVerdict.NOT_INTEGRABLE
        label, value = report.witness()
        assert not value.is_zero()

    def test_second_heavenly_lax_pair(self, second_heavenly):
        doc = second_heavenly
        report = verify_lax(doc.system, doc.pair)
        assert report.verdict is LaxVerdict.LAX_PAIR
        assert doc.pair.is_normal()


class TestNormalization:
    def test_normalize_makes_normal(self, manakov_santini):
        doc = manakov_santini
        normalized = doc.pair.normalize(doc.system)
        assert normalized.is_normal()
        assert verify_lax(doc.system, normalized).verdict \
            is LaxVerdict.LAX_PAIR

    def test_normalize_fixes_frame(self, manakov_santini):
        doc = manakov_santini
        normalized = doc.pair.normalize(doc.system)
        assert (normalized.alpha - doc.pair.alpha).is_zero()
        assert (normalized.beta - doc.pair.beta).is_zero()

    def test_normalize_plus_shift_reaches_master_pair(
            self, manakov_santini, master_ew):
        """Normalizing and shifting the spectral parameter lands on the
        canonical geometric pair under the substitution that identifies the
        two systems."""
        ms, master = manakov_santini, master_ew
        c, mc = ms.coords, master.coords
        images = {"a": c.jet("v", "t"), "b": c.var("u") - c.jet("v", "y")}

        def pull(e):
            return pullback(e, mc, c, images)

        target = LaxPair(c, pull(master.pair.alpha), pull(master.pair.beta),
                         pull(master.pair.m), pull(master.pair.n))
        candidate = ms.pair.normalize(ms.system).shift_spectral(c.jet("v", "t"))
        assert candidate.is_normal()
        assert candidate.equal_mod(target, ms.system)
        wrong = ms.pair.normalize(ms.system).shift_spectral(-c.jet("v", "t"))
        assert not wrong.equal_mod(target, ms.system)


class TestNormalLift4D:
    def test_second_heavenly_integrable_ruling(self, second_heavenly):
        doc = second_heavenly
        lifted = normal_lift_4d(doc.coords, doc.pair.alpha, doc.pair.beta,
                                doc.pair.gamma, doc.pair.delta,
                                system=doc.system)
        assert lifted.is_normal()
        assert verify_lax(doc.system, lifted).verdict is LaxVerdict.LAX_PAIR
        assert lifted.equal_mod(doc.pair, doc.system)

    def test_second_heavenly_other_ruling_not_integrable(
            self, second_heavenly):
        """The opposite ruling of the null quadric is null but carries no
        Lax pair; its unique normal lift has a nonvanishing vertical
        residual."""
        doc = second_heavenly
        c = doc.coords
        lam = c.var("lam")
        uxx, uxy, uyy = c.jet("u", "xx"), c.jet("u", "xy"), c.jet("u", "yy")
        pencil = uxx - 2 * lam * uxy + lam * lam * uyy
        other = normal_lift_4d(c, -pencil / lam, -ONE / lam, lam, ZERO,
                               system=doc.system)
        assert other.is_normal()
        assert characteristic_check(other, doc.system)
        report = verify_lax(doc.system, other)
        assert report.verdict is LaxVerdict.NOT_INTEGRABLE
        assert report.witness()[0] == "vertical"

    def test_seeded_congruences_lift_normal(self, second_heavenly):
        """Random polynomial frames with invertible spectral Jacobian lift
        to normal pairs."""
        doc = second_heavenly
        c = doc.coords
        lam = c.var("lam")
        rng = random.Random(2026)
        atoms = [c.var("u"), c.jet("u", "x"), c.jet("u", "yt"), ONE]
        produced = 0
        while produced < 4:
            def rand_coeff():
                return (atoms[rng.randrange(len(atoms))]
                        * Fraction(rng.randint(-3, 3)))
            alpha = rand_coeff() + lam * rand_coeff()
            beta = rand_coeff() + lam * rand_coeff()
            gamma = rand_coeff() + lam * rand_coeff()
            delta = rand_coeff() + lam * rand_coeff()
            z2 = (alpha.partial(c.spectral_var()) * delta.partial(c.spectral_var())
                  - beta.partial(c.spectral_var()) * gamma.partial(c.spectral_var()))
            if z2.is_zero():
                continue
            lifted = normal_lift_4d(c, alpha, beta, gamma, delta)
            assert lifted.is_normal()
            produced += 1

    def test_degenerate_jacobian_rejected(self, second_heavenly):
        c = second_heavenly.coords
        lam = c.var("lam")
        with pytest.raises(DegenerateCongruence):
            normal_lift_4d(c, lam, lam, lam, lam)


class TestPencilGeometry:
    def test_null_covector_annihilates_frame(self, dkp):
        doc = dkp
        theta = doc.pair.null_covector()
        for vec in (doc.pair.x_components(), doc.pair.y_components()):
            paired = ZERO
            for ti, vi in zip(theta, vec):
                paired = paired + ti * vi
            assert paired.is_zero()

    def test_characteristic_check_corpus_pairs(self, dkp, manakov_santini,
                                               master_ew, second_heavenly,
                                               dkp_broken):
        for doc in (dkp, manakov_santini, master_ew, second_heavenly,
                    dkp_broken):
            assert characteristic_check(doc.pair, doc.system)

    def test_characteristic_check_rejects_non_null_frame(self, dkp):
        c = dkp.coords
        lam = c.var("lam")
        tampered = LaxPair(c, lam * lam + c.var("u"), lam,
                           dkp.pair.m, dkp.pair.n)
        assert not characteristic_check(tampered, dkp.system)


class TestMongeInvariant:
    def test_conic_sections_vanish(self, coords3):
        c = coords3
        lam = c.var("lam")
        assert monge_invariant(c, ONE / lam, lam).is_zero()
        assert monge_invariant(c, lam * lam, lam).is_zero()
        assert monge_invariant(c, lam * lam + 3 * lam + 1, lam).is_zero()

    def test_twisted_cubic_value(self, coords3):
        c = coords3
        lam = c.var("lam")
        value = monge_invariant(c, lam ** 3, lam)
        assert (value - Expr.number(8640)).is_zero()

    def test_general_conic_through_linear_fractions(self, coords3):
        c = coords3
        lam = c.var("lam")
        # circle-like parametrization: rational point sweep of a conic
        alpha = (ONE - lam * lam) / (ONE + lam * lam)
        beta = 2 * lam / (ONE + lam * lam)
        assert monge_invariant(c, alpha, beta).is_zero()


class TestConicOracle:
    def test_known_conics(self, coords3):
        c = coords3
        lam = c.var("lam")
        assert conic_oracle(c, lam * lam, lam)
        assert conic_oracle(c, ONE / lam, lam)
        assert not conic_oracle(c, lam ** 3, lam)

    def test_oracle_agrees_with_invariant_seeded(self, coords3):
        c = coords3
        lam = c.var("lam")
        rng = random.Random(314)
        for _ in range(12):
            coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(4)]
            alpha = sum((co * lam ** k for k, co in enumerate(coeffs)), ZERO)
            beta = lam
            on_conic = conic_oracle(c, alpha, beta)
            invariant_zero = monge_invariant(c, alpha, beta).is_zero()
            assert on_conic == invariant_zero

    def test_sampling_variant_agrees(self, coords3):
        c = coords3
        lam = c.var("lam")
        cases = [(lam * lam, lam), (ONE / lam, lam), (lam ** 3, lam),
                 (lam * lam + lam, lam)]
        for alpha, beta in cases:
            assert (conic_oracle(c, alpha, beta)
                    == conic_oracle_sampling(c, alpha, beta, seed=5))

    def test_jet_dependent_pencils(self, dkp, manakov_santini):
        for doc in (dkp, manakov_santini):
            assert conic_oracle(doc.coords, doc.pair.alpha, doc.pair.beta)


class TestRecoverMetric:
    def test_dkp_roundtrip(self, dkp):
        recovered = recover_metric(dkp.pair, system=dkp.system)
        assert conformal_equal(recovered, conformal_metric(dkp.system),
                               system=dkp.system)

    def test_second_heavenly_roundtrip(self, second_heavenly):
        doc = second_heavenly
        recovered = recover_metric(doc.pair, system=doc.system)
        assert conformal_equal(recovered, conformal_metric(doc.system),
                               system=doc.system)

    def test_manakov_santini_roundtrip(self, manakov_santini):
        doc = manakov_santini
        recovered = recover_metric(doc.pair, system=doc.system)
        assert conformal_equal(recovered, conformal_metric(doc.system),
                               system=doc.system)


class TestWeylLift3D:
    def test_master_lift_reproduces_pair(self, master_ew):
        doc = master_ew
        m, n = weyl_lift_3d(doc.system, doc.metric, doc.omega,
                            doc.pair.alpha, doc.pair.beta)
        assert (m - doc.pair.m).is_zero()
        assert (n - doc.pair.n).is_zero()

    def test_master_lift_frame_split(self, master_ew):
        """Subtracting the frame-change term recovers the geometric
        vertical components affine in the spectral parameter."""
        doc = master_ew
        c = doc.coords
        lam, a = c.var("lam"), c.var("a")
        m, n = weyl_lift_3d(doc.system, doc.metric, doc.omega,
                            doc.pair.alpha, doc.pair.beta)
        m_prime = m - (lam - a) * n
        assert (m_prime + c.jet("a", "y") * lam + c.jet("b", "y")).is_zero()
        assert (n + c.jet("a", "t") * lam + c.jet("b", "t")).is_zero()

    def test_dkp_specialization(self, dkp):
        doc = dkp
        m, n = weyl_lift_3d(doc.system, doc.metric, doc.omega,
                            doc.pair.alpha, doc.pair.beta)
        lifted = LaxPair(doc.coords, doc.pair.alpha, doc.pair.beta, m, n)
        assert lifted.equal_mod(doc.pair, doc.system)
        assert verify_lax(doc.system, lifted).verdict is LaxVerdict.LAX_PAIR


class TestCongruenceFromVectors:
    def test_rebuilds_positional_frame(self, dkp):
        c = dkp.coords
        lam = c.var("lam")
        u = c.var("u")
        v1 = [ONE, ZERO, -(lam * lam - u)]
        v2 = [ZERO, ONE, -lam]
        pair = congruence_from_vectors(c, v1, v2)
        assert (pair.alpha - (lam * lam - u)).is_zero()
        assert (pair.beta - lam).is_zero()

    def test_normalizes_general_position(self, dkp):
        """Vectors in general position are reduced to the positional frame
        spanning the same planes."""
        c = dkp.coords
        lam = c.var("lam")
        u = c.var("u")
        x_vec = [ONE, ZERO, -(lam * lam - u)]
        y_vec = [ZERO, ONE, -lam]
        mixed1 = [a + b for a, b in zip(x_vec, y_vec)]
        mixed2 = [a - b for a, b in zip(x_vec, y_vec)]
        pair = congruence_from_vectors(c, mixed1, mixed2)
        assert (pair.alpha - (lam * lam - u)).is_zero()
        assert (pair.beta - lam).is_zero()

    def test_degenerate_span_rejected(self, dkp):
        c = dkp.coords
        lam = c.var("lam")
        vec = [ONE, ZERO, lam]
        doubled = [2 * e for e in vec]
        with pytest.raises(DegenerateFrame):
            congruence_from_vectors(c, vec, doubled)
