"""Closed-form bounds and inequality checks for Lebesgue data on Cantor sets.

Each function evaluates one proven bound -- lower bounds that computed
Lebesgue values must exceed, upper bounds that stabilized search results
must stay below, or standalone inequality families checked over a
parameter range.  Everything is computed in the log domain (the bounds
span hundreds of orders of magnitude and deep super-geometric lengths
underflow even MPFR's exponent range); the linear ``value`` field is a
best-effort materialization that may round to 0 or inf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import gmpy2

from .cantor import GeometricBeta, SetDescriptor, log_gap
from .julia import GammaSequence, c0_constant
from .numerics import BigReal, PrecisionContext, Real, log_sum, parse_ratio

LOWER_BOUND = "lower-bound-for-lambda"
UPPER_BOUND = "upper-bound-for-lambda"
INEQUALITY_CHECK = "inequality-check"


@dataclass(frozen=True)
class BoundResult:
    """A named bound value with the comparison direction it carries.

    side fixes how the verification harness uses it: lower bounds must be
    exceeded by computed Lebesgue values, upper bounds must dominate them,
    and inequality checks are self-contained (then ``passed`` is set;
    otherwise it is None).  log_value is authoritative; value = exp of it,
    materialized at the working precision, possibly 0 or inf.
    """

    name: str
    side: str
    log_value: BigReal
    value: BigReal
    params: dict = field(default_factory=dict)
    passed: Optional[bool] = None
    detail: str = ""


def _materialize(log_value: BigReal, ctx: PrecisionContext) -> BigReal:
    return ctx.exp(log_value)


def endpoint_witness_bound(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> BoundResult:
    """Lower bound l_s ((1 - l_s)/(1 - l_1 + l_{s-1}))^(2^(s-1)) for lambda(l_s).

    This is the sharp per-node bound behind the endpoint-witness growth:
    on the 2^s-point endpoint array Y_{s-1}, the fundamental polynomial of
    the node nearest the witness x = l_s already has at least this modulus,
    so lambda(l_s) does too.  Requires s >= 3 and a descriptor with
    explicit lengths (log_length).
    """
    if s < 3:
        raise ValueError(f"endpoint witness bound needs s >= 3, got {s}")
    try:
        log_ls = descriptor.log_length(s, ctx)
        log_ls1 = descriptor.log_length(s - 1, ctx)
        log_l1 = descriptor.log_length(1, ctx)
    except TypeError as exc:
        raise ValueError("endpoint witness bound needs an explicit-length family") from exc
    # log(1 - l_s) and log(1 - l_1 + l_{s-1}); exp underflow in either
    # length degrades gracefully to the correct limit.
    log_top = ctx.log1p(ctx.neg(ctx.exp(log_ls)))
    inner = ctx.add(ctx.sub(ctx.real(1), ctx.exp(log_l1)), ctx.exp(log_ls1))
    log_bot = ctx.log(inner)
    log_value = ctx.add(log_ls, ctx.mul(ctx.real(2 ** (s - 1)), ctx.sub(log_top, log_bot)))
    return BoundResult(
        name="endpoint-witness",
        side=LOWER_BOUND,
        log_value=log_value,
        value=_materialize(log_value, ctx),
        params={"descriptor": descriptor.tag(), "s": s},
    )


def geometric_growth_bound(beta: Real, s: int, ctx: PrecisionContext) -> BoundResult:
    """Weaker closed-form lower bound beta^s (1 - beta^2)^(-2^(s-1)).

    Follows from the endpoint-witness bound by replacing each length ratio
    with its geometric-family floor; still diverges doubly exponentially,
    which is all the unboundedness argument needs.  Requires 0 < beta <= 1/3
    and s >= 3.
    """
    b = parse_ratio(beta)
    if not (0 < b <= Fraction(1, 3)):
        raise ValueError(f"beta must lie in (0, 1/3], got {b}")
    if s < 3:
        raise ValueError(f"geometric growth bound needs s >= 3, got {s}")
    log_beta = ctx.log(ctx.real(b))
    log_one_minus_b2 = ctx.log1p(ctx.neg(ctx.real(b * b)))
    log_value = ctx.sub(ctx.mul(ctx.real(s), log_beta), ctx.mul(ctx.real(2 ** (s - 1)), log_one_minus_b2))
    return BoundResult(
        name="geometric-growth",
        side=LOWER_BOUND,
        log_value=log_value,
        value=_materialize(log_value, ctx),
        params={"beta": str(b), "s": s},
    )


def mergelyan_scale(descriptor: SetDescriptor, s: int, ctx: PrecisionContext) -> tuple[BigReal, BigReal]:
    """(log M_s, leading term), M_s = 2^(2s+3) l_{s+2} / ((2^(s+1))! l_{s+1}^(2^(s+1))).

    M_s is the scale factor whose divergence (for beta < 1/3) refutes the
    possibility of uniformly bounded interpolation there; its leading term
    is 2^(s+1) (s+1) (log(1/beta) - log 2).  The factorial enters as a log
    summation, everything stays in the log domain.
    """
    if not isinstance(descriptor, GeometricBeta):
        raise ValueError("mergelyan scale is defined for constant-ratio families")
    if descriptor.beta >= Fraction(1, 3):
        raise ValueError(f"mergelyan scale needs beta < 1/3, got {descriptor.beta}")
    n = 2 ** (s + 1)
    g = ctx.gmp
    log2 = ctx.log(ctx.real(2))
    log_fact = ctx.real(0)
    for k in range(2, n + 1):
        log_fact = g.add(log_fact, g.log(ctx.real(k)))
    log_ms = ctx.sub(
        ctx.add(ctx.mul(ctx.real(2 * s + 3), log2), descriptor.log_length(s + 2, ctx)),
        ctx.add(log_fact, ctx.mul(ctx.real(n), descriptor.log_length(s + 1, ctx))),
    )
    log_inv_beta = ctx.neg(ctx.log(ctx.real(descriptor.beta)))
    leading = ctx.mul(ctx.real(n * (s + 1)), ctx.sub(log_inv_beta, log2))
    return log_ms, leading


def _n_alpha(alpha: Fraction, ctx: PrecisionContext) -> int:
    """4 for alpha >= 2, else 3 + floor(log(log 12 / log 3)/log alpha).

    The floor is taken with a 2^-20 guard: the argument is irrational for
    the rational alphas in use, so a value within 2^-20 of an integer is
    treated as that integer reached from below.
    """
    if alpha >= 2:
        return 4
    g = ctx.gmp
    ratio = g.div(ctx.log(ctx.real(12)), ctx.log(ctx.real(3)))
    v = g.div(ctx.log(ratio), ctx.log(ctx.real(alpha)))
    f = int(gmpy2.floor(v))
    if g.sub(v, ctx.real(f)) > 1 - 2.0**-20:
        f += 1
    return 3 + f


def gap_sum_check(alpha: Real, ell1: Real, n_max: int, ctx: PrecisionContext) -> BoundResult:
    """Check sum_{k=0}^n 1/(2^k h_k) <= C_alpha/(2^n h_n) for all n <= n_max.

    C_alpha = 7 with threshold n_alpha = 4 when alpha >= 2; C_alpha = 5
    with n_alpha = 3 + floor(log(log 12/log 3)/log alpha) when 1 < alpha < 2.
    Beyond n_alpha the sharper constant 2 must hold as well.  Sums are
    accumulated by log-sum-exp over log(1/(2^k h_k)) = -(k log 2 + log h_k),
    so arbitrarily small gaps cost nothing.
    """
    a = parse_ratio(alpha)
    if not a > 1:
        raise ValueError(f"alpha must exceed 1, got {a}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    from .cantor import GeometricAlpha

    desc = GeometricAlpha(alpha=a, ell1=parse_ratio(ell1))
    c_alpha = 7 if a >= 2 else 5
    n_alpha = _n_alpha(a, ctx)
    g = ctx.gmp
    log2 = ctx.log(ctx.real(2))
    log_c = ctx.log(ctx.real(c_alpha))
    log_2const = ctx.log(ctx.real(2))
    term_logs: list[BigReal] = []
    passed = True
    worst = None  # (margin, n, constant)
    for n in range(n_max + 1):
        log_hn = log_gap(desc, n, ctx)
        log_wn = ctx.neg(ctx.add(ctx.mul(ctx.real(n), log2), log_hn))
        term_logs.append(log_wn)
        log_lhs = log_sum(term_logs, ctx)
        # bound: log C - log(2^n h_n) = log C + log_wn
        margin_c = g.sub(g.add(log_c, log_wn), log_lhs)
        if margin_c < 0:
            passed = False
        if worst is None or margin_c < worst[0]:
            worst = (margin_c, n, c_alpha)
        if n >= n_alpha:
            margin_2 = g.sub(g.add(log_2const, log_wn), log_lhs)
            if margin_2 < 0:
                passed = False
            if margin_2 < worst[0]:
                worst = (margin_2, n, 2)
    log_value = worst[0]
    return BoundResult(
        name="gap-sum",
        side=INEQUALITY_CHECK,
        log_value=log_value,
        value=_materialize(log_value, ctx),
        params={"alpha": str(a), "ell1": str(desc.ell1), "n_max": n_max,
                "C": c_alpha, "n_alpha": n_alpha},
        passed=passed,
        detail=f"worst log margin {float(worst[0]):.6g} at n={worst[1]} (constant {worst[2]})",
    )


def length_gap_ratio_check(alpha: Real, ell1: Real, k_max: int, ctx: PrecisionContext) -> BoundResult:
    """Check l_k/h_{k-1} <= (3^(alpha^(k-2)) - 2)^-1 and l_k/h_k <= 1 + 2 (3^(alpha^(k-1)) - 2)^-1.

    Checked for 2 <= k <= k_max in the log domain.  The first inequality
    admits an exact equality boundary at k = 2 when l_1^(alpha-1) = 1/3
    (e.g. alpha = 2, l_1 = 1/3): such within-tolerance cases are reported
    in the detail, not failed -- only violations beyond 2^-(bits-16)
    relative slack count.
    """
    a = parse_ratio(alpha)
    if not a > 1:
        raise ValueError(f"alpha must exceed 1, got {a}")
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    from .cantor import GeometricAlpha

    desc = GeometricAlpha(alpha=a, ell1=parse_ratio(ell1))
    g = ctx.gmp
    log3 = ctx.log(ctx.real(3))
    tol = gmpy2.mpfr(2, ctx.bits) ** -(ctx.bits - 16)
    passed = True
    boundary: list[str] = []
    worst = None

    def log_pow3_minus2(exponent: Fraction) -> BigReal:
        # log(3^x - 2) = x log 3 + log1p(-2 * 3^-x); the correction
        # underflows to 0 harmlessly once 3^x dwarfs 2.
        xl3 = ctx.mul(ctx.real(exponent), log3)
        return ctx.add(xl3, ctx.log1p(ctx.neg(ctx.mul(ctx.real(2), ctx.exp(ctx.neg(xl3))))))

    for k in range(2, k_max + 1):
        # (a): log l_k - log h_{k-1} <= -log(3^(alpha^(k-2)) - 2)
        lhs_a = g.sub(desc.log_length(k, ctx), log_gap(desc, k - 1, ctx))
        rhs_a = ctx.neg(log_pow3_minus2(a ** (k - 2)))
        margin_a = g.sub(rhs_a, lhs_a)
        # (b): log(l_k/h_k) <= log(1 + 2/(3^(alpha^(k-1)) - 2))
        lhs_b = g.sub(desc.log_length(k, ctx), log_gap(desc, k, ctx))
        rhs_b = ctx.log1p(ctx.exp(g.sub(ctx.log(ctx.real(2)), log_pow3_minus2(a ** (k - 1)))))
        margin_b = g.sub(rhs_b, lhs_b)
        for label, margin in ((f"l_{k}/h_{k-1}", margin_a), (f"l_{k}/h_{k}", margin_b)):
            if worst is None or margin < worst[0]:
                worst = (margin, label)
            if margin < 0:
                if g.abs(margin) <= tol:
                    boundary.append(f"{label} at equality (log margin {float(margin):.3g})")
                else:
                    passed = False
            elif margin <= tol:
                boundary.append(f"{label} at equality (log margin {float(margin):.3g})")
    detail = f"worst log margin {float(worst[0]):.6g} at {worst[1]}"
    if boundary:
        detail += "; boundary cases: " + ", ".join(boundary)
    return BoundResult(
        name="length-gap-ratio",
        side=INEQUALITY_CHECK,
        log_value=worst[0],
        value=_materialize(worst[0], ctx),
        params={"alpha": str(a), "ell1": str(desc.ell1), "k_max": k_max},
        passed=passed,
        detail=detail,
    )


def equilibrium_upper_bound(gamma: GammaSequence, ctx: PrecisionContext) -> BoundResult:
    """Upper bound 1 + 4 C_0 / 105 for every equilibrium-node Lebesgue constant.

    C_0 = exp(16 sum gamma_k); the admissibility constraints on gamma are
    enforced by GammaSequence itself.
    """
    c0 = c0_constant(gamma, ctx)
    value = ctx.add(ctx.real(1), ctx.div(ctx.mul(ctx.real(4), c0), ctx.real(105)))
    return BoundResult(
        name="equilibrium-upper",
        side=UPPER_BOUND,
        log_value=ctx.log(value),
        value=value,
        params={"gamma": gamma.tag()},
    )


def deleted_node_bound(gamma: GammaSequence, n: int, ctx: PrecisionContext) -> BoundResult:
    """Lower bound C_0^-1 (N - 2) for the Lebesgue constant after one node is deleted."""
    if n < 3:
        raise ValueError(f"deleted-node bound needs n >= 3, got {n}")
    c0 = c0_constant(gamma, ctx)
    value = ctx.div(ctx.real(n - 2), c0)
    return BoundResult(
        name="deleted-node",
        side=LOWER_BOUND,
        log_value=ctx.log(value),
        value=value,
        params={"gamma": gamma.tag(), "n": n},
    )
