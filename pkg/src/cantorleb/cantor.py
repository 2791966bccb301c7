"""Geometrically symmetric Cantor sets on [0, 1].

A length sequence (l_s) with l_0 = 1 and 3 l_{s+1} <= l_s drives the
construction: level s consists of 2^s closed basic intervals of common
length l_s, each interval spawns two children of length l_{s+1} anchored
at its endpoints, and the central gap h_s = l_s - 2 l_{s+1} is at least
l_s / 3.  Supported families:

* :class:`GeometricBeta`   -- l_s = beta^s, 0 < beta <= 1/3;
* :class:`GeometricAlpha`  -- l_s = l_1^(alpha^(s-1)), alpha > 1, which
  shrinks super-geometrically;
* :class:`ExplicitLengths` -- a finite validated table.

Addressing: the j-th interval at level s is the pair (j, s) with
1 <= j <= 2^s; the children of (j, s) are (2j-1, s+1) and (2j, s+1).
The left endpoint has the closed form

    left(j, s) = sum_{k=1}^{s} b_k (l_{k-1} - l_k),

with b the big-endian bits of j - 1, so deep endpoints are produced in
O(s) exact rational operations and never accumulate subdivision error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import gmpy2

from .numerics import BigReal, PrecisionContext, Real, parse_ratio

Address = tuple[int, int]

ONE_THIRD = Fraction(1, 3)

# Exact-rational lengths are abandoned past this many bits of denominator;
# callers fall back to correctly rounded floats.
_EXACT_LENGTH_BIT_CAP = 2_000_000


class ExactUnavailable(ArithmeticError):
    """Raised when a quantity has no reachable exact rational form."""


class LevelBudgetError(ValueError):
    """Raised when a requested level is deeper than a descriptor can supply."""


class SetDescriptor:
    """Shared protocol for set families.

    Concrete kinds implement the length law (`length_fraction` /
    `log2_inv_length`), a canonical `tag` for serialization, and a
    `geometry(ctx)` factory giving interval endpoints at a precision.
    """

    def length_fraction(self, s: int) -> Optional[Fraction]:
        """Exact l_s, or None when it has no (reasonable) rational form."""
        raise NotImplementedError

    def log_length(self, s: int, ctx: PrecisionContext) -> BigReal:
        """log l_s at ctx precision (safe arbitrarily deep)."""
        raise NotImplementedError

    def log2_inv_length(self, s: int) -> float:
        """log2(1 / l_s) as a float; used only to size precision contexts."""
        raise NotImplementedError

    def max_level(self) -> Optional[int]:
        """Deepest constructible level, or None when unbounded."""
        return None

    def tag(self) -> str:
        raise NotImplementedError

    def geometry(self, ctx: PrecisionContext) -> "Geometry":
        return CantorGeometry(self, ctx)

    def _check_level(self, s: int) -> None:
        if s < 0:
            raise ValueError(f"level must be >= 0, got {s}")
        top = self.max_level()
        if top is not None and s > top:
            raise LevelBudgetError(f"level {s} exceeds the table (max {top})")


@dataclass(frozen=True)
class GeometricBeta(SetDescriptor):
    """l_s = beta^s with 0 < beta <= 1/3 (beta = 1/3 is the classic set)."""

    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", parse_ratio(self.beta))
        if not (0 < self.beta <= ONE_THIRD):
            raise ValueError(f"beta must lie in (0, 1/3], got {self.beta}")

    def length_fraction(self, s: int) -> Optional[Fraction]:
        self._check_level(s)
        if s * self.beta.denominator.bit_length() > _EXACT_LENGTH_BIT_CAP:
            return None
        return self.beta**s

    def log_length(self, s: int, ctx: PrecisionContext) -> BigReal:
        self._check_level(s)
        return ctx.mul(ctx.real(s), ctx.log(ctx.real(self.beta)))

    def log2_inv_length(self, s: int) -> float:
        return s * (math.log2(self.beta.denominator) - math.log2(self.beta.numerator))

    def tag(self) -> str:
        return f"beta:{self.beta}"


@dataclass(frozen=True)
class GeometricAlpha(SetDescriptor):
    """l_1 given, l_{s+1} = l_s^alpha, i.e. l_s = l_1^(alpha^(s-1)).

    Validity: alpha > 1, 0 < l_1 <= 1/3, and with alpha - 1 = p/q in
    lowest terms, l_1^p <= (1/3)^q.  This single exact test is equivalent
    to l_1^(alpha-1) <= 1/3, which keeps 3 l_{s+1} <= l_s at every level;
    q = 1 recovers the familiar integer-alpha condition.
    """

    alpha: Fraction
    ell1: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", parse_ratio(self.alpha))
        object.__setattr__(self, "ell1", parse_ratio(self.ell1))
        if self.alpha <= 1:
            raise ValueError(f"alpha must exceed 1, got {self.alpha}")
        if not (0 < self.ell1 <= ONE_THIRD):
            raise ValueError(f"l_1 must lie in (0, 1/3], got {self.ell1}")
        excess = self.alpha - 1
        p, q = excess.numerator, excess.denominator
        if self.ell1**p > ONE_THIRD**q:
            raise ValueError(
                f"l_1 = {self.ell1} too large for alpha = {self.alpha}: "
                f"requires l_1^{p} <= 3^-{q}"
            )

    def _exponent(self, s: int) -> Fraction:
        return self.alpha ** (s - 1)

    def length_fraction(self, s: int) -> Optional[Fraction]:
        self._check_level(s)
        if s == 0:
            return Fraction(1)
        e = self._exponent(s)
        if e.denominator != 1:
            return None
        if int(e) * self.ell1.denominator.bit_length() > _EXACT_LENGTH_BIT_CAP:
            return None
        return self.ell1 ** int(e)

    def log_length(self, s: int, ctx: PrecisionContext) -> BigReal:
        self._check_level(s)
        if s == 0:
            return ctx.real(0)
        return ctx.mul(ctx.real(self._exponent(s)), ctx.log(ctx.real(self.ell1)))

    def log2_inv_length(self, s: int) -> float:
        if s == 0:
            return 0.0
        lead = math.log2(self.ell1.denominator) - math.log2(self.ell1.numerator)
        return float(self.alpha) ** (s - 1) * lead

    def tag(self) -> str:
        return f"alpha:{self.alpha}:{self.ell1}"


@dataclass(frozen=True)
class ExplicitLengths(SetDescriptor):
    """A finite validated length table l_0, ..., l_T (l_0 = 1, 3 l_{s+1} <= l_s)."""

    lengths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        table = tuple(parse_ratio(v) for v in self.lengths)
        object.__setattr__(self, "lengths", table)
        if not table or table[0] != 1:
            raise ValueError("length table must start with l_0 = 1")
        for s, (a, b) in enumerate(zip(table, table[1:])):
            if b <= 0:
                raise ValueError(f"l_{s + 1} must be positive, got {b}")
            if 3 * b > a:
                raise ValueError(f"3 l_{s + 1} <= l_{s} fails: 3*{b} > {a}")

    def length_fraction(self, s: int) -> Optional[Fraction]:
        self._check_level(s)
        return self.lengths[s]

    def log_length(self, s: int, ctx: PrecisionContext) -> BigReal:
        self._check_level(s)
        return ctx.log(ctx.real(self.lengths[s]))

    def log2_inv_length(self, s: int) -> float:
        self._check_level(s)
        f = self.lengths[s]
        return math.log2(f.denominator) - math.log2(f.numerator)

    def max_level(self) -> Optional[int]:
        return len(self.lengths) - 1

    def tag(self) -> str:
        return "table:" + ",".join(str(v) for v in self.lengths)


# ---------------------------------------------------------------------------
# Lengths and gaps


def length(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> BigReal:
    """l_s at ctx precision."""
    f = descriptor.length_fraction(s)
    if f is not None:
        return ctx.real(f)
    v = ctx.exp(descriptor.log_length(s, ctx))
    if v == 0:
        raise OverflowError(f"l_{s} underflows even MPFR; use log_length")
    return v


def log_length(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> BigReal:
    return descriptor.log_length(s, ctx)


def gap_fraction(descriptor: SetDescriptor, s: int) -> Optional[Fraction]:
    a = descriptor.length_fraction(s)
    b = descriptor.length_fraction(s + 1)
    if a is None or b is None:
        return None
    return a - 2 * b


def gap(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> BigReal:
    """Central gap h_s = l_s - 2 l_{s+1} (>= l_s / 3, so no cancellation)."""
    f = gap_fraction(descriptor, s)
    if f is not None:
        return ctx.real(f)
    return ctx.sub(length(descriptor, s, ctx), ctx.mul(ctx.real(2), length(descriptor, s + 1, ctx)))


def log_gap(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> BigReal:
    """log h_s, safe arbitrarily deep: log l_s + log1p(-2 exp(log l_{s+1} - log l_s)).

    When the ratio l_{s+1}/l_s underflows, the correction term is below
    1 ulp and log1p(0) = 0 is the correctly rounded answer.
    """
    la = descriptor.log_length(s, ctx)
    lb = descriptor.log_length(s + 1, ctx)
    ratio = ctx.exp(ctx.sub(lb, la))
    return ctx.add(la, ctx.log1p(ctx.mul(ctx.real(-2), ratio)))


# ---------------------------------------------------------------------------
# Interval addresses


def _validate_address(j: int, s: int) -> None:
    if s < 0:
        raise ValueError(f"level must be >= 0, got {s}")
    if not (1 <= j <= 1 << s):
        raise ValueError(f"interval index {j} out of range at level {s}")


def children(addr: Address) -> tuple[Address, Address]:
    j, s = addr
    _validate_address(j, s)
    return (2 * j - 1, s + 1), (2 * j, s + 1)


def parent(addr: Address) -> Address:
    j, s = addr
    _validate_address(j, s)
    if s == 0:
        raise ValueError("the root interval has no parent")
    return (j + 1) // 2, s - 1


def sibling(addr: Address) -> Address:
    j, s = addr
    _validate_address(j, s)
    if s == 0:
        raise ValueError("the root interval has no sibling")
    return (j + 1 if j % 2 else j - 1), s


def chain(addr: Address) -> list[Address]:
    """The ancestor chain [(j, s), ..., (1, 0)], one address per level."""
    out = [addr]
    while addr[1] > 0:
        addr = parent(addr)
        out.append(addr)
    return out


def left_endpoint_fraction(descriptor: SetDescriptor, j: int, s: int) -> Fraction:
    """Exact left endpoint of I_{j,s}; raises ExactUnavailable off the rational path."""
    _validate_address(j, s)
    bits = format(j - 1, f"0{s}b") if s else ""
    total = Fraction(0)
    for k, b in enumerate(bits, start=1):
        if b == "1":
            a = descriptor.length_fraction(k - 1)
            c = descriptor.length_fraction(k)
            if a is None or c is None:
                raise ExactUnavailable(f"l_{k} has no rational form")
            total += a - c
    return total


@dataclass(frozen=True)
class BasicInterval:
    j: int
    s: int
    left: BigReal
    right: BigReal

    @property
    def address(self) -> Address:
        return (self.j, self.s)


def interval(descriptor: SetDescriptor, j: int, s: int, ctx: PrecisionContext) -> BasicInterval:
    """Endpoints of I_{j,s} at ctx precision.

    Rational families go through exact arithmetic and round once, so the
    endpoint-persistence identities hold bit-exactly; otherwise the sum
    accumulates with 2s + 32 extra bits and rounds once at the end.
    """
    _validate_address(j, s)
    try:
        left_f = left_endpoint_fraction(descriptor, j, s)
        len_f = descriptor.length_fraction(s)
        if len_f is None:
            raise ExactUnavailable(f"l_{s} has no rational form")
        return BasicInterval(j, s, ctx.real(left_f), ctx.real(left_f + len_f))
    except ExactUnavailable:
        pass
    wide = PrecisionContext(
        bits=ctx.bits + 2 * s + 32,
        target_digits=ctx.target_digits,
        level_budget=ctx.level_budget,
    )
    bits_str = format(j - 1, f"0{s}b") if s else ""
    total = wide.real(0)
    for k, b in enumerate(bits_str, start=1):
        if b == "1":
            step = wide.sub(length(descriptor, k - 1, wide), length(descriptor, k, wide))
            total = wide.add(total, step)
    right = wide.add(total, length(descriptor, s, wide))
    return BasicInterval(j, s, gmpy2.mpfr(total, ctx.bits), gmpy2.mpfr(right, ctx.bits))


# ---------------------------------------------------------------------------
# Geometry: cached endpoints + point location


class Geometry:
    """Interval endpoints for one (descriptor, context) pair, cached by address."""

    def __init__(self, descriptor: SetDescriptor, ctx: PrecisionContext):
        self.descriptor = descriptor
        self.ctx = ctx
        self._cache: dict[Address, tuple[BigReal, BigReal]] = {}

    def bounds(self, j: int, s: int) -> tuple[BigReal, BigReal]:
        key = (j, s)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._bounds(j, s)
            self._cache[key] = hit
        return hit

    def _bounds(self, j: int, s: int) -> tuple[BigReal, BigReal]:
        raise NotImplementedError

    def locate(self, x: Real, depth: int) -> Optional[Address]:
        """Address of the level-``depth`` interval containing x, else None.

        Walks one level at a time; points in a gap (or outside [0, 1])
        yield None.  Endpoints belong to their interval, so a point shared
        by an interval boundary resolves to the lower-indexed child first.
        """
        if depth < 0:
            raise ValueError("depth must be >= 0")
        x = self.ctx.real(x)
        left, right = self.bounds(1, 0)
        if not (left <= x <= right):
            return None
        j = 1
        for s in range(1, depth + 1):
            lo = 2 * j - 1
            l1, r1 = self.bounds(lo, s)
            if l1 <= x <= r1:
                j = lo
                continue
            l2, r2 = self.bounds(lo + 1, s)
            if l2 <= x <= r2:
                j = lo + 1
                continue
            return None
        return (j, depth)


class CantorGeometry(Geometry):
    def _bounds(self, j: int, s: int) -> tuple[BigReal, BigReal]:
        iv = interval(self.descriptor, j, s, self.ctx)
        return (iv.left, iv.right)


_GEOMETRIES: dict[tuple[SetDescriptor, PrecisionContext], Geometry] = {}


def geometry_for(descriptor: SetDescriptor, ctx: PrecisionContext) -> Geometry:
    key = (descriptor, ctx)
    geom = _GEOMETRIES.get(key)
    if geom is None:
        geom = descriptor.geometry(ctx)
        _GEOMETRIES[key] = geom
    return geom


def locate(descriptor: SetDescriptor, x: Real, depth: int, ctx: PrecisionContext) -> Optional[Address]:
    return geometry_for(descriptor, ctx).locate(x, depth)


# ---------------------------------------------------------------------------
# Regularity


def check_regularity(descriptor: SetDescriptor, s_max: int) -> bool:
    """Whether l_{s+1}^2 >= l_s l_{s+2} holds for all s < s_max (exact arithmetic).

    Geometric families reduce to exact Fraction facts: beta gives equality;
    for alpha the inequality is 2 alpha^s <= alpha^(s-1) + alpha^(s+1)
    (log l_1 < 0 reverses the exponent comparison), i.e. (alpha-1)^2 >= 0.
    """
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    if isinstance(descriptor, GeometricBeta):
        return True
    if isinstance(descriptor, GeometricAlpha):
        a = descriptor.alpha
        return all(2 * a**s <= a ** (s - 1) + a ** (s + 1) for s in range(1, s_max + 1))
    top = descriptor.max_level()
    for s in range(s_max + 1):
        if top is not None and s + 2 > top:
            break
        mid = descriptor.length_fraction(s + 1)
        lo = descriptor.length_fraction(s)
        hi = descriptor.length_fraction(s + 2)
        if mid is None or lo is None or hi is None:
            raise ExactUnavailable("regularity check needs rational lengths")
        if mid * mid < lo * hi:
            return False
    return True


# ---------------------------------------------------------------------------
# Descriptor tag parsing (used by node files and the CLI)

_PARSERS: dict[str, Callable[[str], SetDescriptor]] = {}


def register_descriptor_parser(prefix: str, fn: Callable[[str], SetDescriptor]) -> None:
    _PARSERS[prefix] = fn


def parse_descriptor(tag: str) -> SetDescriptor:
    """Inverse of SetDescriptor.tag(): 'beta:1/3', 'alpha:2:1/3', 'table:1,1/3', ..."""
    head, _, rest = tag.strip().partition(":")
    fn = _PARSERS.get(head)
    if fn is None:
        raise ValueError(f"unknown set descriptor {tag!r} (kinds: {sorted(_PARSERS)})")
    return fn(rest)


def _parse_alpha(rest: str) -> GeometricAlpha:
    parts = rest.split(":")
    if len(parts) != 2:
        raise ValueError(f"alpha descriptor needs 'alpha:<alpha>:<l_1>', got {rest!r}")
    return GeometricAlpha(parse_ratio(parts[0]), parse_ratio(parts[1]))


register_descriptor_parser("beta", lambda rest: GeometricBeta(parse_ratio(rest)))
register_descriptor_parser("alpha", _parse_alpha)
register_descriptor_parser(
    "table",
    lambda rest: ExplicitLengths(tuple(parse_ratio(p) for p in rest.split(","))),
)
