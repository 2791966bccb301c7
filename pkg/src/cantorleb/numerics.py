"""Arbitrary-precision scalars and log-domain magnitude arithmetic.

Interval lengths like 3**(-2**s) underflow any fixed float format long
before the interesting regime, and Lagrange products over hundreds of
clustered nodes overflow it just as fast.  Everything numeric therefore
flows through two devices:

* ``BigReal`` -- an MPFR float carried at an explicit per-experiment
  precision (:class:`PrecisionContext`), and
* :class:`LogMagnitude` -- a (sign, log|value|) pair, closed under
  multiplication, which represents a product faithfully as long as its
  *logarithm* fits in a BigReal, even when the product itself never could.

Natural log is the canonical base throughout.  Nothing here relies on the
ambient (thread-default) MPFR precision: every operation goes through an
explicit context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

import gmpy2

BigReal = type(gmpy2.mpfr(0))

Real = Union["BigReal", int, Fraction, str]

MIN_BITS = 128
ACCUM_GUARD_BITS = 64
EVAL_GUARD_BITS = 64


def parse_ratio(text: Real) -> Fraction:
    """Parse a ratio or decimal literal ("1/3", "0.25", "3", "2.5e-4") exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a ratio or decimal literal: {text!r}") from exc


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def decimal_digits_for_bits(bits: int) -> int:
    """Decimal digits sufficient to reproduce a bits-bit float exactly."""
    return ceil_div(bits * 30103, 100000) + 2


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for one experiment.

    ``bits`` is the MPFR mantissa size, ``target_digits`` the number of
    decimal digits results are reported to, and ``level_budget`` the
    deepest construction level the context is sized to resolve (distinct
    endpoints at that level stay distinct after rounding).
    """

    bits: int
    target_digits: int = 40
    level_budget: int = 0

    def __post_init__(self) -> None:
        if self.bits < MIN_BITS:
            raise ValueError(f"bits must be >= {MIN_BITS}, got {self.bits}")
        if self.target_digits < 1:
            raise ValueError("target_digits must be >= 1")
        if self.level_budget < 0:
            raise ValueError("level_budget must be >= 0")

    @cached_property
    def gmp(self) -> gmpy2.context:
        """The gmpy2 context carrying out arithmetic at ``bits``.

        Beware bare ``-x`` / ``abs(x)`` on BigReals: those round to the
        *ambient* context (53 bits by default).  Use gmp.minus/gmp.abs or
        run inside ``with ctx.activate():``.
        """
        return gmpy2.context(precision=self.bits)

    def activate(self) -> gmpy2.context:
        """Fresh context-manager installing this precision thread-locally."""
        return gmpy2.context(precision=self.bits)

    def real(self, value: Real) -> BigReal:
        """Materialize an int/Fraction/str/BigReal at this precision."""
        if isinstance(value, str):
            value = parse_ratio(value)
        if isinstance(value, Fraction):
            value = gmpy2.mpq(value.numerator, value.denominator)
        return gmpy2.mpfr(value, self.bits)

    # Thin wrappers so call sites read ctx.log(x) rather than ctx.gmp.log(x).
    def add(self, a, b):
        return self.gmp.add(a, b)

    def sub(self, a, b):
        return self.gmp.sub(a, b)

    def mul(self, a, b):
        return self.gmp.mul(a, b)

    def div(self, a, b):
        return self.gmp.div(a, b)

    def log(self, x):
        return self.gmp.log(x)

    def exp(self, x):
        return self.gmp.exp(x)

    def log1p(self, x):
        return self.gmp.log1p(x)

    def expm1(self, x):
        return self.gmp.expm1(x)

    def sqrt(self, x):
        return self.gmp.sqrt(x)

    def cos(self, x):
        return self.gmp.cos(x)

    def neg(self, x):
        return self.gmp.minus(x)

    def abs(self, x):
        return self.gmp.abs(x)


def make_context(descriptor, level_budget: int, node_count: int, target_digits: int = 40) -> PrecisionContext:
    """Size a PrecisionContext for work on ``descriptor`` down to ``level_budget``.

    bits = ceil(log2(1/l_{level_budget})) + ceil(3.33 * target_digits)
           + 64 + ceil(log2(node_count)), floored at 128.

    The first term keeps level-``level_budget`` endpoints separated, the
    second covers the requested output digits, the rest is accumulation
    guard.  ``descriptor`` only needs a ``log2_inv_length(level)`` method.
    """
    if level_budget < 0:
        raise ValueError("level_budget must be >= 0")
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    lead = descriptor.log2_inv_length(level_budget)
    bits = (
        math.ceil(lead)
        + ceil_div(333 * target_digits, 100)
        + ACCUM_GUARD_BITS
        + (max(node_count - 1, 0)).bit_length()
    )
    return PrecisionContext(
        bits=max(MIN_BITS, bits),
        target_digits=target_digits,
        level_budget=level_budget,
    )


@dataclass(frozen=True)
class LogMagnitude:
    """A signed magnitude stored as (sign, log|value|).

    ``sign`` is -1, 0 or +1; ``log_abs`` is natural log of |value| (by
    convention -inf when sign == 0, 0.0 for an empty product).
    """

    sign: int
    log_abs: BigReal

    def is_zero(self) -> bool:
        return self.sign == 0


def _coerce_term(t, bits: int) -> BigReal:
    if isinstance(t, BigReal):
        return t
    if isinstance(t, str):
        t = parse_ratio(t)
    if isinstance(t, Fraction):
        t = gmpy2.mpq(t.numerator, t.denominator)
    return gmpy2.mpfr(t, bits)


def log_product(terms: Iterable, ctx: PrecisionContext | None = None) -> LogMagnitude:
    """Fold a sequence of factors into a LogMagnitude without overflow.

    The empty product is (+1, 0).  Any zero factor collapses the result to
    sign 0.  Accumulation happens at ctx.bits (or, absent a ctx, at the
    largest operand precision, floored at 128).
    """
    vals = list(terms)
    if ctx is not None:
        bits = ctx.bits
    else:
        bits = max(
            [t.precision for t in vals if isinstance(t, BigReal)] or [0]
        )
        bits = max(bits, MIN_BITS)
    g = gmpy2.context(precision=bits)
    sign = 1
    total = gmpy2.mpfr(0, bits)
    for t in vals:
        x = _coerce_term(t, bits)
        s = gmpy2.sign(x)
        if s == 0:
            return LogMagnitude(0, gmpy2.mpfr("-inf", bits))
        if s < 0:
            sign = -sign
        total = g.add(total, g.log(g.abs(x)))
    return LogMagnitude(sign, total)


def to_real(m: LogMagnitude, ctx: PrecisionContext) -> BigReal:
    """Materialize a LogMagnitude at ctx precision (may over/underflow to inf/0)."""
    if m.sign == 0:
        return ctx.real(0)
    v = ctx.exp(ctx.real(m.log_abs))
    return ctx.neg(v) if m.sign < 0 else v


def log_sum(logs: Iterable[BigReal], ctx: PrecisionContext) -> BigReal:
    """log(sum(exp(l) for l in logs)), computed stably at ctx precision."""
    vals = [ctx.real(v) for v in logs]
    if not vals:
        return ctx.real("-inf")
    m = max(vals)
    if gmpy2.is_infinite(m) and m < 0:
        return m
    acc = ctx.real(0)
    for v in vals:
        acc = ctx.add(acc, ctx.exp(ctx.sub(v, m)))
    return ctx.add(m, ctx.log(acc))


def decimal_str(x: BigReal, digits: int) -> str:
    """Deterministic scientific-notation rendering with ``digits`` digits."""
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    if x == 0:
        return "0"
    mant, exp10, _ = x.digits(10, digits)
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    head, tail = mant[0], mant[1:].rstrip("0")
    body = f"{head}.{tail}" if tail else head
    return f"{'-' if neg else ''}{body}e{exp10 - 1:+d}"


def parse_decimal(text: str, ctx: PrecisionContext) -> BigReal:
    """Parse a decimal/scientific literal, correctly rounded to ctx.bits."""
    return gmpy2.mpfr(text.strip(), ctx.bits)


def decimal_from_log(log_value: BigReal, ctx: PrecisionContext, digits: int) -> str:
    """Scientific rendering of exp(log_value), safe far beyond mpfr's exponent range.

    The decimal exponent is peeled off in the log domain, so values like
    exp(-1e9) print correctly instead of underflowing to 0.
    """
    if gmpy2.is_nan(log_value):
        return "nan"
    if gmpy2.is_infinite(log_value):
        return "0" if log_value < 0 else "inf"
    g = ctx.gmp
    log10_value = g.div(log_value, ctx.log(ctx.real(10)))
    e10 = int(gmpy2.floor(log10_value))
    mant = ctx.exp(g.mul(g.sub(log10_value, ctx.real(e10)), ctx.log(ctx.real(10))))
    body = decimal_str(mant, digits)  # mantissa in [1, 10): exponent 0 or 1
    head, _, shift = body.partition("e")
    return f"{head}e{e10 + int(shift):+d}"
