"""The named verification suites: registry, line format, and fast suites."""

from __future__ import annotations

import pytest

from cantorleb import SUITE_IDS, CheckLine, run_suite
from cantorleb.verify import exhaustive_endpoint_max
from cantorleb import SearchConfig, endpoint_nodes, lebesgue_constant, make_context

from oracles import exact


def test_registry_names_every_contracted_suite():
    assert set(SUITE_IDS) == {
        "core-invariants",
        "lemma-rr",
        "lemma-sum",
        "lemma-llq",
        "julia-construction",
        "theorem-beta",
        "theorem-bdd1",
        "theorem-unif",
        "theorem-bdd2",
        "theorem-notbdd",
        "mergelyan-ms",
    }


def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError):
        run_suite("spectral-flow")


def test_check_line_format():
    line = CheckLine("demo", "sub-check", True, "margin 1e-3").line()
    assert line.startswith("PASS demo:sub-check")
    assert "margin 1e-3" in line
    assert CheckLine("demo", "x", False, "").line().startswith("FAIL demo:x")


@pytest.mark.parametrize("suite", ["lemma-rr", "lemma-sum", "lemma-llq", "mergelyan-ms"])
def test_fast_suites_pass(suite):
    lines = run_suite(suite)
    assert lines, "suite produced no checks"
    assert all(isinstance(c, CheckLine) and c.suite == suite for c in lines)
    failures = [c.line() for c in lines if not c.passed]
    assert not failures, "\n".join(failures)


def test_exhaustive_endpoint_max_matches_search(third):
    # The brute-force reference itself agrees with the certified search.
    ctx = make_context(third, 8, 2**3)
    z = endpoint_nodes(third, 2, ctx)
    brute, arg, npoints = exhaustive_endpoint_max(z, 6)
    assert npoints == 2**7
    report = lebesgue_constant(z, SearchConfig(depth=6))
    rel = abs(exact(report.lambda_max) - exact(brute)) / exact(brute)
    assert rel < 1e-6
    assert abs(exact(arg) - exact(report.argmax)) < 1e-6
