"""The acceptance gate: one test (and one printed PASS/FAIL line) per criterion.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the per-criterion
lines as they complete; the whole gate targets well under fifteen minutes.
Criteria 1-11 delegate to the named verification suites (each of which
prints machine-readable sub-check lines through the ``verify`` CLI as
well); criterion 12 confronts the certified search with an exhaustive
endpoint evaluation.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from cantorleb import SearchConfig, endpoint_nodes, lebesgue_constant, make_context, run_suite
from cantorleb.verify import exhaustive_endpoint_max

from oracles import exact

CRITERIA = [
    (1, "core-invariants"),
    (2, "lemma-rr"),
    (3, "lemma-llq"),
    (4, "lemma-sum"),
    (5, "theorem-beta"),
    (6, "theorem-bdd1"),
    (7, "theorem-unif"),
    (8, "julia-construction"),
    (9, "theorem-bdd2"),
    (10, "theorem-notbdd"),
    (11, "mergelyan-ms"),
]


def _report(index: int, name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion-{index:02d} {name}  {detail}")


@pytest.mark.parametrize(
    "index, suite", CRITERIA, ids=[f"{i:02d}-{name}" for i, name in CRITERIA]
)
def test_criterion(index: int, suite: str) -> None:
    t0 = time.monotonic()
    checks = run_suite(suite)
    elapsed = time.monotonic() - t0
    assert checks, f"suite {suite} produced no checks"
    failures = [c for c in checks if not c.passed]
    _report(index, suite, not failures, f"({len(checks)} checks, {elapsed:.1f}s)")
    assert not failures, "\n".join(c.line() for c in failures)


def test_criterion_12_search_oracle(third) -> None:
    # K_{1/3}, N <= 8: the certified search agrees with brute-force
    # evaluation over every level-6 endpoint to within rel_tol = 1e-6.
    t0 = time.monotonic()
    ctx = make_context(third, 8, 2**3)
    worst = Fraction(0)
    for s in (0, 1, 2):
        z = endpoint_nodes(third, s, ctx)
        report = lebesgue_constant(z, SearchConfig(depth=6))
        brute, _, _ = exhaustive_endpoint_max(z, 6)
        rel = abs(exact(report.lambda_max) - exact(brute)) / exact(brute)
        worst = max(worst, rel)
    elapsed = time.monotonic() - t0
    ok = worst <= Fraction(1, 10**6)
    _report(12, "search-oracle", ok, f"(worst rel dev {float(worst):.3g}, {elapsed:.1f}s)")
    assert ok
