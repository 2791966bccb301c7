"""Interpolation node arrays on Cantor-type sets.

A :class:`NodeArray` is a strictly increasing tuple of points of K,
remembering the set descriptor, the precision context, and a provenance:

* ``EndpointProvenance(s)``    -- all 2^(s+1) endpoints of the level-s
  intervals (the arrays Y_s);
* ``UniformProvenance(s, rule, count)`` -- one point per occupied level-s
  interval, placed by an endpoint rule, with 2^(s-1) <= count <= 2^s;
* ``DeletedProvenance(base, removed_index)`` -- a base array with one
  node removed (1-based index into the base);
* ``CustomProvenance(level)``  -- externally supplied points.

Occupancy combinatorics (how many nodes fall in which basic interval)
drive both the uniformity test and the pair-separation depth; both are
computed by locating every node once per level, so no 2^level sweeps.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional, Union

from .cantor import (
    Address,
    Geometry,
    SetDescriptor,
    chain,
    geometry_for,
    parse_descriptor,
    sibling,
)
from .numerics import (
    BigReal,
    PrecisionContext,
    Real,
    decimal_digits_for_bits,
    decimal_str,
    parse_decimal,
)

LEFT = "left"
RIGHT = "right"
ALTERNATING = "alternating"
_RULES = (LEFT, RIGHT, ALTERNATING)


@dataclass(frozen=True)
class EndpointProvenance:
    level: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")

    def tag(self) -> str:
        return f"endpoints:{self.level}"


@dataclass(frozen=True)
class UniformProvenance:
    level: int
    rule: str
    count: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")
        if self.rule not in _RULES:
            raise ValueError(f"rule must be one of {_RULES}, got {self.rule!r}")
        total = 1 << self.level
        if not (max(1, total // 2) <= self.count <= total):
            raise ValueError(
                f"count must lie in [2^(level-1), 2^level] = "
                f"[{max(1, total // 2)}, {total}], got {self.count}"
            )

    def tag(self) -> str:
        return f"uniform:{self.level}:{self.rule}:{self.count}"


@dataclass(frozen=True)
class DeletedProvenance:
    base: "Provenance"
    removed_index: int

    def __post_init__(self) -> None:
        if self.removed_index < 1:
            raise ValueError(f"removed_index is 1-based, got {self.removed_index}")

    def tag(self) -> str:
        return f"deleted:{self.removed_index}:{self.base.tag()}"


@dataclass(frozen=True)
class CustomProvenance:
    level: int = 0

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")

    def tag(self) -> str:
        return f"custom:{self.level}"


Provenance = Union[EndpointProvenance, UniformProvenance, DeletedProvenance, CustomProvenance]


def parse_provenance(tag: str) -> Provenance:
    head, _, rest = tag.strip().partition(":")
    if head == "endpoints":
        return EndpointProvenance(int(rest))
    if head == "uniform":
        level, rule, count = rest.split(":")
        return UniformProvenance(int(level), rule, int(count))
    if head == "deleted":
        idx, _, base = rest.partition(":")
        return DeletedProvenance(parse_provenance(base), int(idx))
    if head == "custom":
        return CustomProvenance(int(rest))
    raise ValueError(f"unknown provenance tag {tag!r}")


def node_level(provenance: Provenance) -> int:
    """The construction level the array is spread over (search start level)."""
    if isinstance(provenance, DeletedProvenance):
        return node_level(provenance.base)
    return provenance.level


@dataclass(frozen=True)
class NodeArray:
    points: tuple[BigReal, ...]
    descriptor: SetDescriptor
    provenance: Provenance
    ctx: PrecisionContext

    def __post_init__(self) -> None:
        pts = self.points
        if not pts:
            raise ValueError("node array must be nonempty")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ValueError("nodes must be strictly increasing")
        if pts[0] < 0 or pts[-1] > 1:
            raise ValueError("nodes must lie in [0, 1]")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def level(self) -> int:
        return node_level(self.provenance)

    def geometry(self) -> Geometry:
        return geometry_for(self.descriptor, self.ctx)

    def index_of(self, x: BigReal) -> Optional[int]:
        """0-based index of x among the nodes (exact equality), else None."""
        i = bisect.bisect_left(self.points, x)
        if i < len(self.points) and self.points[i] == x:
            return i
        return None


# ---------------------------------------------------------------------------
# Constructions


def endpoint_nodes(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> NodeArray:
    """Y_s: the 2^(s+1) endpoints of the level-s basic intervals."""
    if s < 0:
        raise ValueError("level must be >= 0")
    geom = geometry_for(descriptor, ctx)
    pts: list[BigReal] = []
    for j in range(1, 2**s + 1):
        left, right = geom.bounds(j, s)
        pts.append(left)
        pts.append(right)
    return NodeArray(tuple(pts), descriptor, EndpointProvenance(s), ctx)


def _bit_reverse(i: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def _spread_empty_indices(s: int, m: int) -> set[int]:
    """m empty 1-based level-s interval indices, balanced at every level.

    Index 2^s - bitrev_s(i) for i = 0..m-1: bit reversal places successive
    empties in distinct dyadic blocks, so each block of 2^t intervals gets
    either floor or ceil of m / 2^(s-t) empties -- occupancies then differ
    by at most one everywhere.  For m <= 1 this is just the last interval.
    """
    return {2**s - _bit_reverse(i, s) for i in range(m)}


def uniform_nodes(
    descriptor: SetDescriptor,
    s: int,
    count: int,
    rule: str = LEFT,
    ctx: PrecisionContext | None = None,
    empty_index: int | None = None,
) -> NodeArray:
    """One node per occupied level-s interval, placed by an endpoint rule.

    Requires 2^(s-1) <= count <= 2^s, so every level-(s-1) interval keeps
    at least one node.  Empty intervals default to a bit-reversal spread
    (for a single empty: the last interval); ``empty_index`` overrides the
    placement when exactly one interval is empty.  ``rule``: "left",
    "right", or "alternating" (odd interval index -> left endpoint).
    """
    if ctx is None:
        raise ValueError("uniform_nodes needs an explicit PrecisionContext")
    if s < 0:
        raise ValueError("level must be >= 0")
    if rule not in _RULES:
        raise ValueError(f"rule must be one of {_RULES}, got {rule!r}")
    total = 2**s
    if not (max(1, total // 2) <= count <= total):
        raise ValueError(f"count must lie in [2^(s-1), 2^s] = [{total // 2}, {total}], got {count}")
    m = total - count
    if empty_index is not None:
        if m != 1:
            raise ValueError("empty_index applies only when exactly one interval is empty")
        if not (1 <= empty_index <= total):
            raise ValueError(f"empty_index {empty_index} out of range at level {s}")
        empties = {empty_index}
    else:
        empties = _spread_empty_indices(s, m)
    geom = geometry_for(descriptor, ctx)
    pts: list[BigReal] = []
    for j in range(1, total + 1):
        if j in empties:
            continue
        left, right = geom.bounds(j, s)
        if rule == LEFT or (rule == ALTERNATING and j % 2 == 1):
            pts.append(left)
        else:
            pts.append(right)
    return NodeArray(tuple(pts), descriptor, UniformProvenance(s, rule, count), ctx)


def delete_node(z: NodeArray, index: int) -> NodeArray:
    """Remove the 1-based ``index``-th node, remembering where it came from."""
    if not (1 <= index <= z.n):
        raise ValueError(f"index {index} out of range (array has {z.n} nodes)")
    if z.n < 2:
        raise ValueError("cannot delete from a singleton array")
    pts = z.points[: index - 1] + z.points[index:]
    return NodeArray(pts, z.descriptor, DeletedProvenance(z.provenance, index), z.ctx)


def regenerate(descriptor: SetDescriptor, provenance: Provenance, ctx: PrecisionContext) -> NodeArray:
    """Rebuild the array a provenance describes (Custom is not reconstructible)."""
    if isinstance(provenance, EndpointProvenance):
        return endpoint_nodes(descriptor, provenance.level, ctx)
    if isinstance(provenance, UniformProvenance):
        return uniform_nodes(descriptor, provenance.level, provenance.count, provenance.rule, ctx)
    if isinstance(provenance, DeletedProvenance):
        return delete_node(regenerate(descriptor, provenance.base, ctx), provenance.removed_index)
    raise ValueError(f"cannot regenerate from {provenance!r}")


# ---------------------------------------------------------------------------
# Occupancy combinatorics


def occupancy(z: NodeArray, addr: Address) -> int:
    """Number of nodes in the closed basic interval at ``addr``."""
    left, right = z.geometry().bounds(*addr)
    return bisect.bisect_right(z.points, right) - bisect.bisect_left(z.points, left)


def _locate_all(z: NodeArray, depth: int) -> list[Optional[Address]]:
    """Addresses of every node at ``depth`` (None for nodes in a gap there)."""
    geom = z.geometry()
    return [geom.locate(x, depth) for x in z.points]


def max_pair_level(z: NodeArray, addr: Address, depth_limit: int) -> Optional[int]:
    """Deepest level <= depth_limit where some subinterval of ``addr`` holds
    exactly 2 nodes (the interval itself counts), or None when the true
    maximum exceeds depth_limit.

    BFS over descendants with occupancy >= 2.  Once none survive, no
    deeper interval can hold 2 nodes and the best found is final; an
    interval keeping >= 2 nodes one level past the limit guarantees an
    exactly-2 interval deeper still (a separating group always leaves a
    child with >= 2 until the final split is 2 -> 1+1), hence None.
    """
    j0, s0 = addr
    start_occ = occupancy(z, addr)
    if start_occ < 2:
        raise ValueError(f"interval {addr} holds fewer than 2 nodes")
    if depth_limit < s0:
        raise ValueError("depth_limit must be at least the starting level")
    best: Optional[int] = s0 if start_occ == 2 else None
    active = [(j0, s0)]
    level = s0
    while active:
        level += 1
        nxt: list[Address] = []
        for j, s in active:
            for child in ((2 * j - 1, s + 1), (2 * j, s + 1)):
                occ = occupancy(z, child)
                if occ >= 2:
                    nxt.append(child)
                    if occ == 2 and level <= depth_limit:
                        best = level
        if level > depth_limit:
            return None if nxt else best
        active = nxt
    return best


def is_uniform(z: NodeArray, depth: int) -> bool:
    """Whether occupancies at every level differ by at most 1.

    Checks levels 1, 2, ... and stops as soon as the verdict is forced:
    once all occupancies are <= 1 deeper levels stay uniform (True); any
    interval keeping >= 2 nodes meets an empty interval by the level where
    2^level > n (pigeonhole), forcing a violation (False).  The verdict
    therefore never depends on ``depth``, which only asserts the caller's
    minimum depth of interest; the loop always runs past it if undecided.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = z.n
    level = 0
    while True:
        level += 1
        addrs = _locate_all(z, level)
        if any(a is None for a in addrs):
            raise ValueError(f"a node leaves the construction at level {level}")
        counts: dict[Address, int] = {}
        for a in addrs:
            counts[a] = counts.get(a, 0) + 1
        top = max(counts.values())
        empty_exists = len(counts) < 2**level
        low = 0 if empty_exists else min(counts.values())
        if top - low > 1:
            return False
        if top <= 1:
            return True
        # top >= 2 with no violation yet; 2^level <= n still, keep going


def adjacent_counts(z: NodeArray, addr: Address) -> list[tuple[int, int]]:
    """[(t, occupancy of the sibling of the level-t ancestor)] for t = 1..s.

    Walking the ancestor chain of ``addr``, the sibling subtree at each
    level collects the nodes at dyadic distance ~l_t; their counts weight
    the distance profile of any point in ``addr``.
    """
    j, s = addr
    out: list[tuple[int, int]] = []
    for anc in chain(addr)[:-1]:  # exclude the root, which has no sibling
        t = anc[1]
        out.append((t, occupancy(z, sibling(anc))))
    out.reverse()
    return out


# ---------------------------------------------------------------------------
# Distances


@dataclass(frozen=True)
class DistanceProfile:
    source_point: BigReal
    distances: tuple[BigReal, ...]


def distance_profile(x: Real, z: NodeArray) -> DistanceProfile:
    """Sorted distances |x - x_k| to every node, at the array's precision."""
    g = z.ctx.gmp
    xr = z.ctx.real(x)
    ds = sorted(g.abs(g.sub(xr, p)) for p in z.points)
    return DistanceProfile(xr, tuple(ds))


# ---------------------------------------------------------------------------
# Serialization


def to_text(z: NodeArray) -> str:
    """One decimal per line at full context precision, with a header
    recording the descriptor and provenance."""
    digits = decimal_digits_for_bits(z.ctx.bits)
    lines = [f"# descriptor={z.descriptor.tag()} provenance={z.provenance.tag()}"]
    lines.extend(decimal_str(p, digits) for p in z.points)
    return "\n".join(lines) + "\n"


def from_text(text: str, ctx: PrecisionContext) -> NodeArray:
    """Inverse of :func:`to_text` (points re-rounded to ctx precision)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("node file must start with a '# descriptor=... provenance=...' header")
    header = lines[0].lstrip("#").strip()
    fields = dict(part.split("=", 1) for part in header.split())
    descriptor = parse_descriptor(fields["descriptor"])
    provenance = parse_provenance(fields["provenance"])
    pts = tuple(parse_decimal(ln, ctx) for ln in lines[1:])
    return NodeArray(pts, descriptor, provenance, ctx)
