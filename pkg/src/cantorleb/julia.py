"""Equilibrium Cantor sets built by iterated quadratics.

Start from P_2(x) = x^2 - x and iterate

    P_{2^{s+1}} = P_{2^s} (P_{2^s} + r_s),      r_0 = 1,
    r_{s+1} = gamma_{s+1} r_s^2,

for a parameter sequence 0 < gamma_k <= 1/32.  Level s of the
construction is E_s = {x : -r_s <= P_{2^s}(x) <= 0}, a union of 2^s
closed intervals whose endpoints solve P_{2^s}(x) in {0, -r_s}; these are
produced exactly by recursive quadratic preimages, never by root polishing.
The limit set K(gamma) = cap E_s carries interval lengths squeezed between
delta_s = gamma_1 ... gamma_s and C_0 delta_s with C_0 = exp(16 sum gamma_k),
and |P'_{2^s}| ranges in (C_0^{-1} r_s/delta_s, r_s/delta_s] on E_s --
both facts are re-verified on the constructed data by
:func:`verify_julia_invariants`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import gmpy2

from .cantor import (
    BasicInterval,
    Geometry,
    LevelBudgetError,
    SetDescriptor,
    register_descriptor_parser,
)
from .numerics import (
    ACCUM_GUARD_BITS,
    MIN_BITS,
    BigReal,
    PrecisionContext,
    Real,
    ceil_div,
    parse_ratio,
)

GAMMA_CAP = Fraction(1, 32)


@dataclass(frozen=True)
class GammaSequence:
    """The parameter sequence gamma_1, gamma_2, ... with gamma_k <= 1/32.

    Either an explicit finite table (interpreted as gamma_k = 0 beyond the
    table -- such levels cannot be built, but the tail still contributes
    nothing to sums) or a geometric rule gamma_k = coeff * ratio^(k-1).
    """

    table: Optional[tuple[Fraction, ...]] = None
    coeff: Optional[Fraction] = None
    ratio: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.table is not None:
            if self.coeff is not None or self.ratio is not None:
                raise ValueError("give either a table or a geometric rule, not both")
            table = tuple(parse_ratio(v) for v in self.table)
            object.__setattr__(self, "table", table)
            if not table:
                raise ValueError("gamma table must be nonempty")
            for k, g in enumerate(table, start=1):
                if not (0 < g <= GAMMA_CAP):
                    raise ValueError(f"gamma_{k} must lie in (0, 1/32], got {g}")
        else:
            if self.coeff is None or self.ratio is None:
                raise ValueError("geometric rule needs both coeff and ratio")
            object.__setattr__(self, "coeff", parse_ratio(self.coeff))
            object.__setattr__(self, "ratio", parse_ratio(self.ratio))
            if not (0 < self.coeff <= GAMMA_CAP):
                raise ValueError(f"gamma_1 must lie in (0, 1/32], got {self.coeff}")
            if not (0 < self.ratio < 1):
                raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")

    @classmethod
    def explicit(cls, values: Iterable[Real]) -> "GammaSequence":
        return cls(table=tuple(parse_ratio(v) for v in values))

    @classmethod
    def geometric(cls, coeff: Real, ratio: Real) -> "GammaSequence":
        return cls(coeff=parse_ratio(coeff), ratio=parse_ratio(ratio))

    def gamma(self, k: int) -> Fraction:
        """gamma_k, 1-based; 0 beyond an explicit table."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if self.table is not None:
            return self.table[k - 1] if k <= len(self.table) else Fraction(0)
        return self.coeff * self.ratio ** (k - 1)

    def total(self) -> Fraction:
        """sum_k gamma_k, exactly (finite table sum or geometric series)."""
        if self.table is not None:
            return sum(self.table, Fraction(0))
        return self.coeff / (1 - self.ratio)

    def max_build_level(self) -> Optional[int]:
        """Deepest level with all needed gamma_k > 0 (None if unbounded)."""
        return len(self.table) if self.table is not None else None

    def tag(self) -> str:
        if self.table is not None:
            return "table:" + ",".join(str(v) for v in self.table)
        return f"geom:{self.coeff}:{self.ratio}"


def _check_build_level(gamma: GammaSequence, s: int) -> None:
    top = gamma.max_build_level()
    if top is not None and s > top:
        raise LevelBudgetError(
            f"level {s} needs gamma_{s} > 0 but the table ends at {top} "
            "(zero tail collapses intervals to points)"
        )


def r_fractions(gamma: GammaSequence, s_max: int) -> list[Fraction]:
    """Exact [r_0, ..., r_{s_max}]; denominators square each level."""
    _check_build_level(gamma, s_max)
    out = [Fraction(1)]
    for k in range(1, s_max + 1):
        out.append(gamma.gamma(k) * out[-1] ** 2)
    return out


def r_values(gamma: GammaSequence, s_max: int, ctx: PrecisionContext) -> list[BigReal]:
    """[r_0, ..., r_{s_max}] at ctx precision (safe far beyond exact range)."""
    _check_build_level(gamma, s_max)
    out = [ctx.real(1)]
    for k in range(1, s_max + 1):
        out.append(ctx.mul(ctx.real(gamma.gamma(k)), ctx.mul(out[-1], out[-1])))
    return out


def delta_values(gamma: GammaSequence, s_max: int, ctx: PrecisionContext) -> list[BigReal]:
    """[delta_0, ..., delta_{s_max}], delta_s = gamma_1 ... gamma_s."""
    out = [ctx.real(1)]
    for k in range(1, s_max + 1):
        out.append(ctx.mul(out[-1], ctx.real(gamma.gamma(k))))
    return out


def c0_constant(gamma: GammaSequence, ctx: PrecisionContext) -> BigReal:
    """C_0 = exp(16 sum_k gamma_k), the distortion constant of the family."""
    return ctx.exp(ctx.real(16 * gamma.total()))


def eval_P(gamma: GammaSequence, s: int, x: Real, ctx: PrecisionContext) -> tuple[BigReal, BigReal]:
    """(P_{2^s}(x), P'_{2^s}(x)) by the defining iteration, at ctx precision."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    _check_build_level(gamma, s - 1)
    g = ctx.gmp
    xr = ctx.real(x)
    p = g.mul(xr, g.sub(xr, ctx.real(1)))
    dp = g.sub(g.mul(ctx.real(2), xr), ctx.real(1))
    if s == 1:
        return p, dp
    rs = r_values(gamma, s - 1, ctx)
    for k in range(1, s):
        r = rs[k]
        dp = g.mul(dp, g.add(g.mul(ctx.real(2), p), r))
        p = g.mul(p, g.add(p, r))
    return p, dp


def _quad_preimages(c: BigReal, shift: BigReal, g: gmpy2.context) -> tuple[BigReal, BigReal]:
    """Solve u (u + shift) = c: u = (-shift +- sqrt(shift^2 + 4c)) / 2.

    (Unary minus on a BigReal rounds to the ambient context, so negation
    goes through g.minus here and everywhere else in this module.)
    """
    disc = g.add(g.mul(shift, shift), g.mul(4, c))
    if disc <= 0:
        raise ValueError("collapsed or complex preimage: gamma sequence invalid")
    root = g.sqrt(disc)
    return g.div(g.sub(root, shift), 2), g.div(g.sub(g.minus(root), shift), 2)


def _solve(gamma_rs: Sequence[BigReal], s: int, c: BigReal, g: gmpy2.context, one: BigReal) -> list[BigReal]:
    """All real x with P_{2^s}(x) = c, for c in [-r_s, 0]."""
    if s == 1:
        # x^2 - x = c  <=>  (x - 1/2)^2 = 1/4 + c
        hi, lo = _quad_preimages(c, g.minus(one), g)
        return [lo, hi]
    hi, lo = _quad_preimages(c, gamma_rs[s - 1], g)
    return _solve(gamma_rs, s - 1, lo, g, one) + _solve(gamma_rs, s - 1, hi, g, one)


@dataclass(frozen=True)
class JuliaLevelData:
    s: int
    r: BigReal
    delta: BigReal
    intervals: tuple[BasicInterval, ...]


@dataclass(frozen=True)
class JuliaLevels:
    """Levels 0..s_max of one construction, with their parameters."""

    gamma: GammaSequence
    ctx: PrecisionContext
    levels: tuple[JuliaLevelData, ...]

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, s: int) -> JuliaLevelData:
        return self.levels[s]

    def __iter__(self):
        return iter(self.levels)

    @property
    def s_max(self) -> int:
        return len(self.levels) - 1


def _build_level(gamma_rs: Sequence[BigReal], deltas: Sequence[BigReal], s: int, ctx: PrecisionContext) -> JuliaLevelData:
    g = ctx.gmp
    one = ctx.real(1)
    if s == 0:
        iv = (BasicInterval(1, 0, ctx.real(0), one),)
        return JuliaLevelData(0, gamma_rs[0], deltas[0], iv)
    zeros = _solve(gamma_rs, s, ctx.real(0), g, one)
    dips = _solve(gamma_rs, s, g.minus(gamma_rs[s]), g, one)
    pts = sorted(zeros + dips)
    if len(pts) != 2 ** (s + 1):
        raise ValueError(f"level {s}: expected {2 ** (s + 1)} endpoints, got {len(pts)}")
    ivs = tuple(
        BasicInterval(j + 1, s, pts[2 * j], pts[2 * j + 1]) for j in range(2**s)
    )
    return JuliaLevelData(s, gamma_rs[s], deltas[s], ivs)


def build_levels(gamma: GammaSequence, s_max: int, ctx: PrecisionContext) -> JuliaLevels:
    """Construct levels 0..s_max (endpoints via exact preimage recursion)."""
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    _check_build_level(gamma, s_max)
    rs = r_values(gamma, s_max, ctx)
    ds = delta_values(gamma, s_max, ctx)
    levels = tuple(_build_level(rs, ds, s, ctx) for s in range(s_max + 1))
    return JuliaLevels(gamma, ctx, levels)


def verification_context(gamma: GammaSequence, s_max: int, target_digits: int = 40) -> PrecisionContext:
    """A context wide enough that |P_{2^s}| <= r_s is a real check up to s_max.

    The polynomial values on level s live at scale r_s, which is double-
    exponentially below the interval lengths (~delta_s), so construction
    *verification* needs bits past log2(1/r_{s_max}) = sum_k 2^(s-k)
    log2(1/gamma_k); endpoint construction alone does not.
    """
    if s_max < 0:
        raise ValueError("s_max must be >= 0")
    _check_build_level(gamma, s_max)
    lead = 0.0
    for k in range(1, s_max + 1):
        gk = gamma.gamma(k)
        lead += 2.0 ** (s_max - k) * (math.log2(gk.denominator) - math.log2(gk.numerator))
    bits = math.ceil(lead) + ceil_div(333 * target_digits, 100) + ACCUM_GUARD_BITS
    return PrecisionContext(bits=max(MIN_BITS, bits), target_digits=target_digits, level_budget=s_max)


# ---------------------------------------------------------------------------
# Construction verification


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class JuliaVerification:
    checks: tuple[CheckOutcome, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __iter__(self):
        return iter(self.checks)


class _Worst:
    """Track the minimum slack across instances of one inequality.

    Pass/fail is decided on the full-precision values (a slack of 1e-900
    still passes even though it rounds to 0.0 as a float); the float
    margin is for reporting only.
    """

    def __init__(self) -> None:
        self.ok = True
        self.margin: Optional[float] = None
        self.where = ""

    def update(self, slack, where: str, strict: bool = True) -> None:
        if not (slack > 0 or (not strict and slack == 0)):
            self.ok = False
        m = float(slack)
        if self.margin is None or m < self.margin:
            self.margin = m
            self.where = where

    def outcome(self, name: str) -> CheckOutcome:
        m = self.margin if self.margin is not None else float("inf")
        return CheckOutcome(name, self.ok, m, f"worst at {self.where}" if self.where else "")


def _sample_points(iv: BasicInterval, interior: int, ctx: PrecisionContext) -> list[BigReal]:
    """Endpoints plus `interior` Chebyshev-pattern interior points."""
    g = ctx.gmp
    pts = [iv.left, iv.right]
    width = g.sub(iv.right, iv.left)
    pi = gmpy2.const_pi(ctx.bits)
    for i in range(1, interior + 1):
        t = g.div(g.add(1, ctx.cos(g.div(g.mul(2 * i - 1, pi), 2 * interior))), 2)
        pts.append(g.add(iv.left, g.mul(width, t)))
    return pts


def verify_julia_invariants(levels: JuliaLevels, samples_per_interval: int = 8) -> JuliaVerification:
    """Confront the constructed levels with every structural inequality.

    Strict inequalities (length window, child length, gap size, gap sign)
    are checked with zero tolerance.  Identities attained with equality in
    exact arithmetic carry slack 2^-(bits-32): absolute for the sublevel
    bound -r_s <= P_{2^s} <= 0 and the endpoint residuals |P_{2^s}(e)
    (P_{2^s}(e) + r_s)|, relative for |P'| <= r_s/delta_s.  Note the
    sublevel bound is only *informative* when ctx.bits resolves r_{s_max}
    (use :func:`verification_context`); the delta_s-sized contexts from
    make_context resolve endpoints but not the double-exponentially
    smaller polynomial values.  Returns one report entry per family of
    checks, each carrying the worst margin and its location.
    """
    if samples_per_interval < 0:
        raise ValueError("samples_per_interval must be >= 0")
    gamma, ctx = levels.gamma, levels.ctx
    g = ctx.gmp
    tol = ctx.real(Fraction(1, 2 ** (ctx.bits - 32)))
    c0 = c0_constant(gamma, ctx)
    inv_c0 = g.div(ctx.real(1), c0)

    window = _Worst()
    child = _Worst()
    gap_len = _Worst()
    sub_lo = _Worst()
    sub_hi = _Worst()
    deriv_lo = _Worst()
    deriv_hi = _Worst()
    deriv_sign = _Worst()
    residual = _Worst()
    gap_sign = _Worst()
    nesting = _Worst()

    for s in range(1, levels.s_max + 1):
        data = levels[s]
        parent_level = levels[s - 1]
        rho = g.div(data.r, data.delta)
        for iv in data.intervals:
            length = g.sub(iv.right, iv.left)
            where = f"I_{{{iv.j},{s}}}"
            # delta_s < length < C_0 delta_s, relative to delta_s
            window.update(g.div(g.sub(length, data.delta), data.delta), where + " lower")
            window.update(g.div(g.sub(g.mul(c0, data.delta), length), data.delta), where + " upper")
            # child vs parent length and nesting
            par = parent_level.intervals[(iv.j + 1) // 2 - 1]
            plen = g.sub(par.right, par.left)
            cap = g.mul(ctx.real(4 * gamma.gamma(s)), plen)
            child.update(g.div(g.sub(cap, length), cap), where)
            nesting.update(g.sub(iv.left, par.left), where + " left", strict=False)
            nesting.update(g.sub(par.right, iv.right), where + " right", strict=False)
            # samples: -r_s <= P <= 0 (absolute slack: the identity is
            # attained at endpoints) and the derivative window
            sgn = 0
            for x in _sample_points(iv, samples_per_interval, ctx):
                p, dp = eval_P(gamma, s, x, ctx)
                sub_hi.update(g.sub(tol, p), where)
                sub_lo.update(g.add(g.add(p, data.r), tol), where)
                mag = g.abs(dp)
                deriv_lo.update(g.div(g.sub(mag, g.mul(inv_c0, rho)), rho), where)
                deriv_hi.update(g.div(g.sub(g.mul(rho, g.add(1, tol)), mag), rho), where)
                this = gmpy2.sign(dp)
                if sgn == 0:
                    sgn = this
                deriv_sign.update(1 if this == sgn and this != 0 else -1, where)
            # endpoint residuals of the next iterate: P_{2^{s+1}} = P (P + r_s)
            for e in (iv.left, iv.right):
                p, _ = eval_P(gamma, s, e, ctx)
                res = g.abs(g.mul(p, g.add(p, data.r)))
                residual.update(g.sub(tol, res), where, strict=False)
        # the gap of each parent interval: size and positivity of P_{2^{s+1}}
        for pj, par in enumerate(parent_level.intervals, start=1):
            left_child = data.intervals[2 * pj - 2]
            right_child = data.intervals[2 * pj - 1]
            plen = g.sub(par.right, par.left)
            h = g.sub(right_child.left, left_child.right)
            floor_h = g.mul(ctx.real(1 - 4 * gamma.gamma(s)), plen)
            gap_len.update(g.div(g.sub(h, floor_h), plen), f"I_{{{pj},{s - 1}}}")
            mid = g.div(g.add(left_child.right, right_child.left), 2)
            p, _ = eval_P(gamma, s, mid, ctx)
            val = g.mul(p, g.add(p, data.r))
            gap_sign.update(val, f"I_{{{pj},{s - 1}}} midpoint")

    checks = (
        window.outcome("interval-length-window"),
        child.outcome("child-length"),
        gap_len.outcome("gap-length"),
        sub_hi.outcome("sublevel-upper"),
        sub_lo.outcome("sublevel-lower"),
        deriv_hi.outcome("derivative-upper"),
        deriv_lo.outcome("derivative-lower"),
        deriv_sign.outcome("derivative-sign"),
        residual.outcome("endpoint-residual"),
        gap_sign.outcome("gap-sign"),
        nesting.outcome("nesting"),
    )
    return JuliaVerification(checks)


# ---------------------------------------------------------------------------
# Descriptor protocol


@dataclass(frozen=True)
class JuliaDescriptor(SetDescriptor):
    """K(gamma) as a SetDescriptor; lengths are per-interval, not per-level."""

    gamma: GammaSequence

    def length_fraction(self, s: int) -> Optional[Fraction]:
        if s == 0:
            return Fraction(1)
        return None

    def log_length(self, s: int, ctx: PrecisionContext) -> BigReal:
        raise TypeError("equilibrium sets have per-interval lengths; use geometry bounds")

    def log2_inv_length(self, s: int) -> float:
        # lengths are > delta_s = prod gamma_k; one extra bit of headroom
        lead = 0.0
        for k in range(1, s + 1):
            gk = self.gamma.gamma(k)
            if gk == 0:
                raise LevelBudgetError(f"level {s} not constructible: gamma_{k} = 0")
            lead += math.log2(gk.denominator) - math.log2(gk.numerator)
        return lead + 1.0

    def max_level(self) -> Optional[int]:
        return self.gamma.max_build_level()

    def tag(self) -> str:
        return f"julia:{self.gamma.tag()}"

    def geometry(self, ctx: PrecisionContext) -> "JuliaGeometry":
        return JuliaGeometry(self, ctx)


class JuliaGeometry(Geometry):
    """Lazily deepened level data behind the shared bounds/locate protocol."""

    def __init__(self, descriptor: JuliaDescriptor, ctx: PrecisionContext):
        super().__init__(descriptor, ctx)
        self._gamma = descriptor.gamma
        self._rs = r_values(self._gamma, 0, ctx)
        self._ds = delta_values(self._gamma, 0, ctx)
        self._data: list[JuliaLevelData] = [_build_level(self._rs, self._ds, 0, ctx)]

    def _ensure(self, s: int) -> None:
        while len(self._data) <= s:
            t = len(self._data)
            _check_build_level(self._gamma, t)
            g = self.ctx.gmp
            self._rs.append(
                g.mul(self.ctx.real(self._gamma.gamma(t)), g.mul(self._rs[-1], self._rs[-1]))
            )
            self._ds.append(g.mul(self._ds[-1], self.ctx.real(self._gamma.gamma(t))))
            self._data.append(_build_level(self._rs, self._ds, t, self.ctx))

    def _bounds(self, j: int, s: int) -> tuple[BigReal, BigReal]:
        self._ensure(s)
        iv = self._data[s].intervals[j - 1]
        return (iv.left, iv.right)


def _parse_julia(rest: str) -> JuliaDescriptor:
    kind, _, body = rest.partition(":")
    if kind == "geom":
        c, _, r = body.partition(":")
        return JuliaDescriptor(GammaSequence.geometric(c, r))
    if kind == "table":
        return JuliaDescriptor(GammaSequence.explicit(body.split(",")))
    raise ValueError(f"unknown julia rule {kind!r} (use geom or table)")


register_descriptor_parser("julia", _parse_julia)
