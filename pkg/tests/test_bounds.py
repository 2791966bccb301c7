"""Closed-form bounds and inequality checks against exact rational oracles."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cantorleb import (
    INEQUALITY_CHECK,
    LOWER_BOUND,
    UPPER_BOUND,
    GammaSequence,
    deleted_node_bound,
    endpoint_witness_bound,
    equilibrium_upper_bound,
    gap_sum_check,
    geometric_growth_bound,
    length_gap_ratio_check,
    make_context,
    mergelyan_scale,
)

import oracles
from oracles import exact


@pytest.fixture(scope="module")
def ctx(third):
    return make_context(third, 12, 2**9)


def _witness_formula(lengths, s: int) -> Fraction:
    return lengths[s] * Fraction(
        (1 - lengths[s]), (1 - lengths[1] + lengths[s - 1])
    ) ** (2 ** (s - 1))


# ---------------------------------------------------------------------------
# Lower bounds for the endpoint witness


@pytest.mark.parametrize("s", [3, 4, 6, 8])
def test_endpoint_witness_bound_matches_formula(third, ctx, s):
    lengths = oracles.beta_lengths(Fraction(1, 3), s)
    want = _witness_formula(lengths, s)
    got = endpoint_witness_bound(third, s, ctx)
    assert got.side == LOWER_BOUND
    assert got.params["s"] == s
    assert abs(exact(got.value) - want) <= want * Fraction(1, 2 ** (ctx.bits - 32))


def test_endpoint_witness_bound_exceeds_1e15_by_depth_eight(third, ctx):
    # The divergence acceptance anchor: ~4.74e18 at s = 8.
    got = endpoint_witness_bound(third, 8, ctx)
    assert float(got.value) == pytest.approx(4.743768e18, rel=1e-6)
    assert exact(got.value) > 10**15


def test_endpoint_witness_bound_on_alpha_family(ksq, ctx):
    lengths = oracles.alpha_lengths(2, Fraction(1, 3), 4)
    want = _witness_formula(lengths, 4)
    got = endpoint_witness_bound(ksq, 4, ctx)
    assert abs(exact(got.value) - want) <= want * Fraction(1, 2 ** (ctx.bits - 32))


def test_endpoint_witness_bound_preconditions(third, julia_desc, ctx):
    with pytest.raises(ValueError):
        endpoint_witness_bound(third, 2, ctx)
    with pytest.raises(ValueError):
        endpoint_witness_bound(julia_desc, 4, ctx)


@pytest.mark.parametrize("s", [3, 5, 8])
def test_geometric_growth_bound_matches_formula(ctx, s):
    beta = Fraction(1, 3)
    want = beta**s / (1 - beta**2) ** (2 ** (s - 1))
    got = geometric_growth_bound(beta, s, ctx)
    assert got.side == LOWER_BOUND
    assert abs(exact(got.value) - want) <= want * Fraction(1, 2 ** (ctx.bits - 32))


def test_geometric_growth_is_weaker_than_witness(third, ctx):
    for s in (3, 5, 7):
        weak = exact(geometric_growth_bound(Fraction(1, 3), s, ctx).value)
        strong = exact(endpoint_witness_bound(third, s, ctx).value)
        assert weak <= strong


def test_geometric_growth_preconditions(ctx):
    with pytest.raises(ValueError):
        geometric_growth_bound(Fraction(1, 2), 4, ctx)
    with pytest.raises(ValueError):
        geometric_growth_bound(Fraction(1, 3), 2, ctx)


# ---------------------------------------------------------------------------
# The refuted bounded-scale claim


@pytest.mark.parametrize("beta", [Fraction(1, 9), Fraction(1, 27)])
def test_mergelyan_scale_diverges(ctx, beta):
    from cantorleb import GeometricBeta

    desc = GeometricBeta(beta)
    logs = []
    for s in range(4, 10):
        log_ms, leading = mergelyan_scale(desc, s, ctx)
        logs.append(exact(log_ms))
        ratio = float(ctx.div(log_ms, leading))
        assert 0.5 < ratio < 2.0
        want_leading = 2 ** (s + 1) * (s + 1) * (math.log(1 / beta) - math.log(2))
        assert float(leading) == pytest.approx(want_leading, rel=1e-12)
    assert all(a < b for a, b in zip(logs, logs[1:]))


def test_mergelyan_scale_rejects_boundary_beta(third, ctx):
    # At beta = 1/3 the gaps vanish in the scale's denominator regime.
    with pytest.raises(ValueError):
        mergelyan_scale(third, 5, ctx)


# ---------------------------------------------------------------------------
# Gap-sum inequality


def _exact_gap_sum_holds(alpha: int, ell1: Fraction, c: int, n_lo: int, n_hi: int) -> bool:
    lengths = oracles.alpha_lengths(alpha, ell1, n_hi + 1)
    hs = oracles.gaps(lengths)
    total = Fraction(0)
    ok = True
    for n in range(n_hi + 1):
        total += Fraction(1, 2**n * hs[n])
        if n_lo <= n:
            ok = ok and total <= Fraction(c, 2**n * hs[n])
    return ok


def test_gap_sum_check_alpha_two(ctx):
    got = gap_sum_check(2, Fraction(1, 3), 20, ctx)
    assert got.side == INEQUALITY_CHECK
    assert got.passed is True
    assert got.params["C"] == 7 and got.params["n_alpha"] == 4
    # Independent exact confirmation at desk scale (the deep tail needs
    # logs; rationals up to n = 12 are still cheap).
    assert _exact_gap_sum_holds(2, Fraction(1, 3), 7, 0, 12)
    assert _exact_gap_sum_holds(2, Fraction(1, 3), 2, 4, 12)


def test_gap_sum_check_alpha_three(ctx):
    got = gap_sum_check(3, Fraction(1, 3), 20, ctx)
    assert got.passed is True
    assert got.params["C"] == 7 and got.params["n_alpha"] == 4
    assert _exact_gap_sum_holds(3, Fraction(1, 3), 7, 0, 8)


def test_gap_sum_check_small_alpha(ctx):
    got = gap_sum_check(Fraction(3, 2), Fraction(1, 9), 20, ctx)
    assert got.passed is True
    assert got.params["C"] == 5 and got.params["n_alpha"] == 5


def test_gap_sum_check_preconditions(ctx):
    with pytest.raises(ValueError):
        gap_sum_check(1, Fraction(1, 3), 10, ctx)
    with pytest.raises(ValueError):
        gap_sum_check(2, Fraction(1, 2), 10, ctx)


# ---------------------------------------------------------------------------
# Length/gap comparability


def test_length_gap_ratio_check_passes(ctx):
    got = length_gap_ratio_check(2, Fraction(1, 3), 8, ctx)
    assert got.side == INEQUALITY_CHECK
    assert got.passed is True
    assert got.params["k_max"] == 8


def test_length_gap_ratio_exact_anchor():
    # h_k >= l_k/3 for K^2: exact check of the first few levels.
    lengths = oracles.alpha_lengths(2, Fraction(1, 3), 9)
    hs = oracles.gaps(lengths)
    for k in range(2, 9):
        assert 3 * hs[k] >= lengths[k]


def test_length_gap_ratio_preconditions(ctx):
    with pytest.raises(ValueError):
        length_gap_ratio_check(2, Fraction(1, 3), 1, ctx)


# ---------------------------------------------------------------------------
# Equilibrium-family bounds


def test_equilibrium_upper_bound_is_one_plus_4e_over_105(gamma, ctx):
    got = equilibrium_upper_bound(gamma, ctx)
    assert got.side == UPPER_BOUND
    assert float(got.value) == pytest.approx(1 + 4 * math.e / 105, rel=1e-30)


def test_equilibrium_upper_bound_table_gamma(ctx):
    g = GammaSequence.explicit([Fraction(1, 32), Fraction(1, 64)])
    got = equilibrium_upper_bound(g, ctx)
    want = 1 + 4 * math.exp(16 * 3 / 64) / 105
    assert float(got.value) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("n, want", [(3, 1 / math.e), (15, 13 / math.e), (50, 48 / math.e)])
def test_deleted_node_bound_scales_linearly(gamma, ctx, n, want):
    got = deleted_node_bound(gamma, n, ctx)
    assert got.side == LOWER_BOUND
    assert got.params["n"] == n
    assert float(got.value) == pytest.approx(want, rel=1e-12)


def test_deleted_node_bound_needs_three_nodes(gamma, ctx):
    with pytest.raises(ValueError):
        deleted_node_bound(gamma, 2, ctx)
