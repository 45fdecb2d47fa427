"""Bundled corpus entries replay all recorded expectations."""

from __future__ import annotations

import pytest

from laxweyl import corpus


def test_available_lists_all_entries():
    names = corpus.available()
    assert names == ("dkp", "manakov_santini", "master_ew",
                     "flat_counterexample", "second_heavenly", "dkp_broken")


def test_source_returns_document_text():
    text = corpus.source("dkp")
    assert "[coords]" in text and "[expect]" in text


def test_load_parses():
    doc = corpus.load("dkp")
    assert doc.coords.dim == 3
    assert doc.pair is not None


def test_unknown_entry():
    with pytest.raises(KeyError):
        corpus.load("nope")


@pytest.mark.parametrize("name", corpus.ENTRIES)
def test_entry_verifies(name):
    report = corpus.verify(name)
    assert report.passed, "\n".join(
        "%s: %s" % (c.name, c.detail) for c in report.failures())


def test_report_details_populated():
    report = corpus.verify("dkp")
    names = [c.name for c in report.checks]
    assert names == ["metric", "verdict", "normal", "characteristic",
                     "conic", "curvature"]
    assert all(c.detail for c in report.checks)


def test_negative_control_expects_failure_modes():
    """The broken entry passes because its expectations assert failures."""
    report = corpus.verify("dkp_broken")
    verdict_check = next(c for c in report.checks if c.name == "verdict")
    assert verdict_check.passed
    assert "NOT_INTEGRABLE" in verdict_check.detail
