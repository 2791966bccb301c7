"""Equilibrium-domain construction: parameter sequences, levels, invariants."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorleb import (
    GammaSequence,
    JuliaDescriptor,
    LevelBudgetError,
    build_levels,
    c0_constant,
    delta_values,
    eval_P,
    parse_descriptor,
    r_fractions,
    r_values,
    verification_context,
    verify_julia_invariants,
)

import oracles
from oracles import exact


@pytest.fixture(scope="module")
def vctx(gamma):
    return verification_context(gamma, 5)


# ---------------------------------------------------------------------------
# Parameter sequences


def test_gamma_cap_is_enforced():
    with pytest.raises(ValueError):
        GammaSequence.geometric(Fraction(1, 16), Fraction(1, 2))
    with pytest.raises(ValueError):
        GammaSequence.explicit([Fraction(1, 32), Fraction(1, 16)])


def test_gamma_geometric_values(gamma):
    assert [gamma.gamma(k) for k in (1, 2, 3)] == [
        Fraction(1, 32),
        Fraction(1, 64),
        Fraction(1, 128),
    ]
    assert gamma.total() == Fraction(1, 16)
    assert gamma.max_build_level() is None


def test_gamma_table_tail_is_zero():
    g = GammaSequence.explicit([Fraction(1, 32), Fraction(1, 64)])
    assert g.gamma(3) == 0
    assert g.max_build_level() == 2
    assert g.total() == Fraction(3, 64)


def test_r_sequence_squares_down(gamma):
    # r_s = gamma_s r_{s-1}^2 collapses to exact powers of two here.
    want = [Fraction(1)] + [Fraction(1, 2) ** e for e in (5, 16, 39, 86, 181)]
    assert r_fractions(gamma, 5) == want
    assert r_fractions(gamma, 5) == oracles.julia_r([gamma.gamma(k) for k in range(1, 6)], 5)


def test_r_and_delta_values_at_precision(gamma, vctx):
    rv = r_values(gamma, 3, vctx)
    assert [exact(v) for v in rv[1:]] == [Fraction(1, 2) ** e for e in (5, 16, 39)]
    dv = delta_values(gamma, 3, vctx)
    # delta_s = prod_{k<=s} gamma_k
    assert exact(dv[2]) == Fraction(1, 2048)
    assert exact(dv[3]) == Fraction(1, 2048 * 128)


def test_c0_is_exp_of_sixteen_gamma_total(gamma, vctx):
    c0 = c0_constant(gamma, vctx)
    assert float(c0) == pytest.approx(math.e)  # 16 * 1/16 = 1
    g = GammaSequence.explicit([Fraction(1, 32), Fraction(1, 64)])
    assert float(c0_constant(g, vctx)) == pytest.approx(math.exp(16 * 3 / 64))


# ---------------------------------------------------------------------------
# The iterated quadratic


@given(
    st.integers(min_value=1, max_value=4),
    st.fractions(min_value=Fraction(-1, 2), max_value=Fraction(3, 2), max_denominator=2**20),
)
@settings(max_examples=40, deadline=None)
def test_eval_P_matches_rational_recursion(gamma, vctx, s, x):
    gammas = [gamma.gamma(k) for k in range(1, s + 1)]
    want_p, want_dp = oracles.julia_P(gammas, s, x)
    got_p, got_dp = eval_P(gamma, s, x, vctx)
    tol = Fraction(1, 2 ** (vctx.bits - 32))
    scale_p = max(abs(want_p), Fraction(1))
    scale_dp = max(abs(want_dp), Fraction(1))
    assert abs(exact(got_p) - want_p) <= scale_p * tol
    assert abs(exact(got_dp) - want_dp) <= scale_dp * tol


def test_eval_P_roots_at_zero_and_one(gamma, vctx):
    for s in (1, 2, 3):
        p, _ = eval_P(gamma, s, Fraction(0), vctx)
        assert p == 0
        p1, _ = eval_P(gamma, 1, Fraction(1), vctx)
        assert p1 == 0


def test_table_gamma_cannot_build_past_its_last_level():
    g = GammaSequence.explicit([Fraction(1, 32), Fraction(1, 64)])
    with pytest.raises(LevelBudgetError):
        eval_P(g, 4, Fraction(1, 2), verification_context(g, 2))


# ---------------------------------------------------------------------------
# Level construction


def test_levels_double_and_nest(gamma, vctx):
    levels = build_levels(gamma, 4, vctx)
    assert levels.s_max == 4
    for s in range(1, 5):
        data = levels[s]
        assert len(data.intervals) == 2**s
        xs = sorted(iv.left for iv in data.intervals)
        assert all(vctx.gmp.sub(b, a) > 0 for a, b in zip(xs, xs[1:]))
    # Every level-s interval sits inside exactly one level-(s-1) interval.
    for s in range(2, 5):
        for child in levels[s].intervals:
            hits = [
                iv
                for iv in levels[s - 1].intervals
                if iv.left <= child.left and child.right <= iv.right
            ]
            assert len(hits) == 1


def test_level_interval_lengths_live_in_delta_window(gamma, vctx):
    # Every level-s interval length sits strictly between delta_s and
    # C_0 delta_s (here C_0 = e since 16 sum gamma_k = 1).
    levels = build_levels(gamma, 4, vctx)
    deltas = delta_values(gamma, 4, vctx)
    g = vctx.gmp
    for s in range(1, 5):
        for iv in levels[s].intervals:
            ratio = float(g.div(g.sub(iv.right, iv.left), deltas[s]))
            assert 1.0 < ratio < math.e


def test_verification_context_resolves_deepest_scale(gamma):
    ctx = verification_context(gamma, 5)
    # r_5 = 2^-181 must be representable with ~40 digits to spare.
    assert ctx.bits > 181 + 100


def test_invariant_report_passes(gamma, vctx):
    levels = build_levels(gamma, 5, vctx)
    report = verify_julia_invariants(levels, samples_per_interval=6)
    assert report.passed
    names = [c.name for c in report]
    assert len(names) == len(set(names)) and len(names) >= 5
    for check in report:
        assert check.passed, check.detail


# ---------------------------------------------------------------------------
# Descriptor plumbing


def test_julia_descriptor_tags_round_trip(gamma):
    desc = JuliaDescriptor(gamma)
    assert desc.tag() == "julia:geom:1/32:1/2"
    assert parse_descriptor(desc.tag()) == desc
    table_desc = parse_descriptor("julia:table:1/32,1/64")
    assert table_desc.tag() == "julia:table:1/32,1/64"


def test_julia_descriptor_lengths_are_irrational(julia_desc, vctx):
    assert julia_desc.length_fraction(2) is None
    # Sized off the delta_2 = 1/2048 floor with one headroom bit.
    assert julia_desc.log2_inv_length(2) == 12.0
    with pytest.raises(TypeError):
        julia_desc.log_length(2, vctx)


def test_julia_descriptor_budget(julia_desc):
    table_desc = parse_descriptor("julia:table:1/32,1/64")
    with pytest.raises(LevelBudgetError):
        table_desc.log2_inv_length(5)
    assert julia_desc.max_level() is None
