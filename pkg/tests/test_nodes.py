"""Node arrays: constructions, occupancy combinatorics, serialization."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorleb import (
    ALTERNATING,
    LEFT,
    RIGHT,
    CustomProvenance,
    DeletedProvenance,
    EndpointProvenance,
    NodeArray,
    UniformProvenance,
    adjacent_counts,
    delete_node,
    distance_profile,
    endpoint_nodes,
    from_text,
    is_uniform,
    max_pair_level,
    node_level,
    occupancy,
    parse_provenance,
    regenerate,
    to_text,
    uniform_nodes,
)

import oracles
from oracles import exact

THIRD_LENGTHS = oracles.beta_lengths(Fraction(1, 3), 12)


# ---------------------------------------------------------------------------
# Endpoint arrays


@pytest.mark.parametrize("s", [0, 1, 2, 4, 6])
def test_endpoint_nodes_enumerate_level_endpoints(third, ctx_third, s):
    z = endpoint_nodes(third, s, ctx_third)
    assert z.n == 2 ** (s + 1)
    assert z.level == s
    want = oracles.endpoints(THIRD_LENGTHS, s)
    got = [exact(p) for p in z.points]
    assert len(got) == len(want)
    tol = Fraction(1, 2 ** (ctx_third.bits - 8))
    assert all(abs(a - b) <= tol for a, b in zip(got, want))


def test_endpoint_nodes_are_strictly_sorted_deep(third):
    from cantorleb import make_context

    ctx = make_context(third, 9, 2**10)
    z = endpoint_nodes(third, 9, ctx)
    assert all(a < b for a, b in zip(z.points, z.points[1:]))


# ---------------------------------------------------------------------------
# Uniform arrays


@pytest.mark.parametrize("rule", [LEFT, RIGHT, ALTERNATING])
def test_full_uniform_arrays_match_oracle(third, ctx_third, rule):
    s = 3
    z = uniform_nodes(third, s, 2**s, rule=rule, ctx=ctx_third)
    want = oracles.uniform_points(THIRD_LENGTHS, s, rule)
    tol = Fraction(1, 2 ** (ctx_third.bits - 8))
    assert all(abs(exact(p) - w) <= tol for p, w in zip(z.points, want))


def test_one_empty_interval_defaults_to_the_last(third, ctx_third):
    s = 3
    z = uniform_nodes(third, s, 2**s - 1, ctx=ctx_third)
    assert z.n == 2**s - 1
    # Interval 8 is empty; every other level-3 interval holds one node.
    counts = [occupancy(z, (j, s)) for j in range(1, 2**s + 1)]
    assert counts == [1, 1, 1, 1, 1, 1, 1, 0]


def test_empty_index_override(third, ctx_third):
    z = uniform_nodes(third, 3, 7, ctx=ctx_third, empty_index=5)
    counts = [occupancy(z, (j, 3)) for j in range(1, 9)]
    assert counts == [1, 1, 1, 1, 0, 1, 1, 1]
    with pytest.raises(ValueError):
        uniform_nodes(third, 3, 6, ctx=ctx_third, empty_index=5)


@pytest.mark.parametrize("count", [4, 5, 6, 7, 8])
def test_partial_uniform_arrays_stay_balanced(third, ctx_third, count):
    # The bit-reversal spread keeps occupancies within 1 of each other at
    # every level, which is exactly the "uniform distribution" predicate.
    z = uniform_nodes(third, 3, count, ctx=ctx_third)
    assert z.n == count
    assert is_uniform(z, 3)
    for level in range(4):
        counts = [occupancy(z, (j, level)) for j in range(1, 2**level + 1)]
        assert max(counts) - min(counts) <= 1


def test_uniform_count_bounds(third, ctx_third):
    with pytest.raises(ValueError):
        uniform_nodes(third, 3, 3, ctx=ctx_third)
    with pytest.raises(ValueError):
        uniform_nodes(third, 3, 9, ctx=ctx_third)
    with pytest.raises(ValueError):
        uniform_nodes(third, 3, 8, rule="middle", ctx=ctx_third)


# ---------------------------------------------------------------------------
# Deletion and regeneration


def test_delete_node_keeps_provenance_chain(third, ctx_third):
    base = endpoint_nodes(third, 2, ctx_third)
    z = delete_node(base, 3)
    assert z.n == base.n - 1
    assert exact(z.points[2]) != exact(base.points[2])
    assert isinstance(z.provenance, DeletedProvenance)
    assert z.provenance.removed_index == 3
    again = regenerate(third, z.provenance, ctx_third)
    assert again.points == z.points


def test_delete_node_validates_index(third, ctx_third):
    base = endpoint_nodes(third, 1, ctx_third)
    with pytest.raises(ValueError):
        delete_node(base, 0)
    with pytest.raises(ValueError):
        delete_node(base, 5)


def test_regenerate_round_trips_all_kinds(third, ctx_third):
    arrays = [
        endpoint_nodes(third, 2, ctx_third),
        uniform_nodes(third, 3, 7, ctx=ctx_third),
        delete_node(endpoint_nodes(third, 2, ctx_third), 1),
    ]
    for z in arrays:
        again = regenerate(third, z.provenance, ctx_third)
        assert again.points == z.points
    with pytest.raises(ValueError):
        regenerate(third, CustomProvenance(0), ctx_third)


# ---------------------------------------------------------------------------
# Occupancy combinatorics


def test_occupancy_counts_closed_intervals(third, ctx_third):
    z = endpoint_nodes(third, 1, ctx_third)  # {0, 1/3, 2/3, 1}
    assert occupancy(z, (1, 0)) == 4
    assert occupancy(z, (1, 1)) == 2
    assert occupancy(z, (2, 1)) == 2
    assert occupancy(z, (1, 2)) == 1


def test_adjacent_counts_walks_sibling_subtrees(third, ctx_third):
    z = uniform_nodes(third, 2, 4, ctx=ctx_third)
    # From I_{1,1}: the only proper ancestor sibling is I_{2,1} (2 nodes).
    assert adjacent_counts(z, (1, 1)) == [(1, 2)]
    # From I_{1,2}: level-1 sibling holds 2 nodes, level-2 sibling holds 1.
    assert adjacent_counts(z, (1, 2)) == [(1, 2), (2, 1)]


def test_max_pair_level_uniform_is_level_minus_one(third, ctx_third):
    # 2^s - 1 uniformly distributed nodes: some level-(s-1) interval holds
    # exactly two of them, and no deeper interval holds two.
    for s in (2, 3, 4):
        z = uniform_nodes(third, s, 2**s - 1, ctx=ctx_third)
        assert max_pair_level(z, (1, 0), s + 3) == s - 1


def test_max_pair_level_detects_clustered_pairs(third, ctx_third):
    # Endpoints of one level-4 interval are 1/81 apart: the pair survives
    # to level 4 even though the array only has 4 points.
    geom = third.geometry(ctx_third)
    pts = tuple(
        sorted(
            [
                geom.bounds(1, 4)[0],
                geom.bounds(1, 4)[1],
                geom.bounds(3, 2)[0],
                geom.bounds(16, 4)[1],
            ]
        )
    )
    z = NodeArray(pts, third, CustomProvenance(0), ctx_third)
    assert max_pair_level(z, (1, 0), 8) == 4


def test_is_uniform_rejects_lopsided_arrays(third, ctx_third):
    geom = third.geometry(ctx_third)
    # Three nodes crammed into I_{1,2} while I_{2,1} holds one.
    pts = tuple(
        sorted(
            [
                geom.bounds(1, 3)[0],
                geom.bounds(1, 3)[1],
                geom.bounds(2, 3)[0],
                geom.bounds(4, 1)[1] if False else geom.bounds(2, 1)[1],
            ]
        )
    )
    z = NodeArray(pts, third, CustomProvenance(0), ctx_third)
    assert not is_uniform(z, 2)


# ---------------------------------------------------------------------------
# Distance profile


def test_distance_profile_is_sorted_and_exact(third, ctx_third):
    z = endpoint_nodes(third, 1, ctx_third)
    prof = distance_profile(Fraction(1, 2), z)
    ds = [exact(d) for d in prof.distances]
    assert ds == sorted(ds)
    assert ds[0] == pytest.approx(Fraction(1, 6), abs=1e-30)
    assert len(ds) == z.n


# ---------------------------------------------------------------------------
# Validation and serialization


def test_node_array_validation(third, ctx_third):
    one = ctx_third.real(1)
    with pytest.raises(ValueError):
        NodeArray((), third, CustomProvenance(0), ctx_third)
    with pytest.raises(ValueError):
        NodeArray((one, one), third, CustomProvenance(0), ctx_third)
    with pytest.raises(ValueError):
        NodeArray((ctx_third.real(Fraction(3, 2)),), third, CustomProvenance(0), ctx_third)


@pytest.mark.parametrize(
    "tag, level",
    [
        ("endpoints:2", 2),
        ("uniform:3:left:7", 3),
        ("deleted:8:endpoints:3", 3),
        ("custom:5", 5),
    ],
)
def test_provenance_tags_round_trip(tag, level):
    prov = parse_provenance(tag)
    assert prov.tag() == tag
    assert node_level(prov) == level


@pytest.mark.parametrize("tag", ["", "endpoints", "uniform:3:middle:7", "deleted:0:custom:1"])
def test_bad_provenance_tags(tag):
    with pytest.raises(ValueError):
        parse_provenance(tag)


def test_text_round_trip_is_exact(third, ctx_third):
    for z in (
        endpoint_nodes(third, 3, ctx_third),
        delete_node(uniform_nodes(third, 2, 4, rule=RIGHT, ctx=ctx_third), 2),
    ):
        text = to_text(z)
        back = from_text(text, ctx_third)
        assert back.points == z.points  # decimal digits suffice for exactness
        assert back.descriptor == z.descriptor
        assert back.provenance == z.provenance
        assert to_text(back) == text


def test_from_text_requires_header(ctx_third):
    with pytest.raises(ValueError):
        from_text("0.5\n", ctx_third)
