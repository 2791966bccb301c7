"""Lebesgue functions, constants, and Lagrange interpolation in log domain.

With nodes clustered on a Cantor set the fundamental polynomials

    l_k(x) = prod_{i != k} (x - x_i) / (x_k - x_i)

run across hundreds of orders of magnitude, so nothing is multiplied
linearly: one pass over the nodes computes the differences d_i = x - x_i
(at full point precision -- deep endpoints differ by ~l_s) and accumulates
S(x) = sum_i log|d_i|; then

    log|l_k(x)| = S(x) - log|d_k| - w_k,
    w_k = sum_{i != k} log|x_k - x_i|     (precomputed once per array),

and lambda(x) = sum_k |l_k(x)| re-enters the linear domain through a
max-shifted exponential sum.  Signs are positional: the nodes are sorted,
so sign l_k(x) = (-1)^(#{i != k : x_i > x}) (-1)^(n-1-k).

The Lebesgue constant search is branch-and-bound over basic intervals:
interior samples steer which intervals are retained, but the reported
maximum and argmax come only from interval *endpoint* evaluations --
endpoints persist to every deeper level, hence lie in K, making the
result a certified lower bound for the supremum over K.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2

from .nodes import (
    ALTERNATING,
    LEFT,
    RIGHT,
    DeletedProvenance,
    EndpointProvenance,
    NodeArray,
    UniformProvenance,
    occupancy,
    regenerate,
)
from .numerics import (
    EVAL_GUARD_BITS,
    BigReal,
    LogMagnitude,
    PrecisionContext,
    Real,
    ceil_div,
)

ENDPOINT_WITNESS = "endpoint"
EMPTY_INTERVAL_WITNESS = "empty-interval"
DELETED_NODE_WITNESS = "deleted-node"


@dataclass(frozen=True)
class SearchConfig:
    """Branch-and-bound knobs.

    depth: maximum levels descended below the node level; samples_per_interval:
    evaluation points per interval including both endpoints (5 puts interior
    samples at relative 1/4, 1/2, 3/4); keep_margin: retain intervals whose
    best sample reaches (1 - keep_margin) x the best raw sample seen; rel_tol:
    relative stall threshold for stabilization.
    """

    depth: int = 6
    samples_per_interval: int = 5
    keep_margin: float = 0.5
    rel_tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.samples_per_interval < 2:
            raise ValueError("samples_per_interval must be >= 2 (the endpoints)")
        if not (0 < self.keep_margin < 1):
            raise ValueError("keep_margin must lie in (0, 1)")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")


@dataclass(frozen=True)
class LebesgueReport:
    """Outcome of a Lebesgue-constant search.

    lambda_max is a certified lower bound for Lambda_N = sup_K lambda_N
    (attained at argmax, a point of K); search_depth counts levels actually
    descended below the node level; stabilized means the last two depth
    increments each moved lambda_max by < rel_tol relatively.
    """

    node_count: int
    lambda_max: BigReal
    argmax: BigReal
    search_depth: int
    evaluations: int
    stabilized: bool
    precision_bits: int


def _default_eval_bits(ctx: PrecisionContext, n: int) -> int:
    """Accumulation precision: digits + headroom, never above ctx.bits, plus guard.

    Differences x - x_i must be formed at full ctx.bits (deep endpoints
    agree to hundreds of bits), but their *logarithms* are O(level) sized,
    so sums of n of them only need output-digits precision plus guard.
    """
    base = 64 + ceil_div(333 * (ctx.target_digits + 15), 100) + 2 * max(n - 1, 1).bit_length() + 16
    return min(ctx.bits, base) + EVAL_GUARD_BITS


class LagrangeEvaluator:
    """Per-array state for evaluating l_k, lambda, and interpolants.

    Building one costs O(n^2) subtractions and logs (the weights w_k);
    each subsequent point costs O(n).
    """

    def __init__(self, z: NodeArray, eval_bits: Optional[int] = None):
        self.z = z
        self.pts = z.points
        self.n = len(z.points)
        self.point_gmp = z.ctx.gmp
        self.eval_bits = eval_bits if eval_bits is not None else _default_eval_bits(z.ctx, self.n)
        self.gmp = gmpy2.context(precision=self.eval_bits)
        g, gp = self.gmp, self.point_gmp
        zero = gmpy2.mpfr(0, self.eval_bits)
        w = [zero] * self.n
        for k in range(self.n):
            xk = self.pts[k]
            for i in range(k):
                ld = g.log(gp.sub(xk, self.pts[i]))  # positive difference
                w[k] = g.add(w[k], ld)
                w[i] = g.add(w[i], ld)
        self.w = w

    # -- shared per-point pass ------------------------------------------

    def _log_diffs(self, x: BigReal) -> tuple[list[BigReal], BigReal]:
        """([log|x - x_i|], S = sum of them); x must not be a node."""
        g, gp = self.gmp, self.point_gmp
        logs = []
        total = gmpy2.mpfr(0, self.eval_bits)
        for xi in self.pts:
            ld = g.log(gp.abs(gp.sub(x, xi)))
            logs.append(ld)
            total = g.add(total, ld)
        return logs, total

    def _sign_parity(self, x: BigReal) -> int:
        """#{i : x_i > x}, giving sign omega(x) = (-1)^count."""
        return self.n - bisect.bisect_right(self.pts, x)

    def _coerce(self, x: Real) -> BigReal:
        return self.z.ctx.real(x)

    # -- public evaluations ---------------------------------------------

    def fundamental_log(self, k: int, x: Real) -> LogMagnitude:
        """l_k(x) as a LogMagnitude; k is 0-based here."""
        if not (0 <= k < self.n):
            raise ValueError(f"node index {k} out of range")
        xr = self._coerce(x)
        idx = self.z.index_of(xr)
        if idx is not None:
            if idx == k:
                return LogMagnitude(1, gmpy2.mpfr(0, self.eval_bits))
            return LogMagnitude(0, gmpy2.mpfr("-inf", self.eval_bits))
        g = self.gmp
        logs, total = self._log_diffs(xr)
        above = self._sign_parity(xr)
        num_sign = -1 if (above - (1 if self.pts[k] > xr else 0)) % 2 else 1
        den_sign = -1 if (self.n - 1 - k) % 2 else 1
        return LogMagnitude(
            num_sign * den_sign, g.sub(g.sub(total, logs[k]), self.w[k])
        )

    def lambda_at(self, x: Real) -> BigReal:
        """lambda(x) = sum_k |l_k(x)| at the array's precision (>= 1 on [0,1])."""
        xr = self._coerce(x)
        if self.z.index_of(xr) is not None:
            return self.z.ctx.real(1)
        g = self.gmp
        logs, total = self._log_diffs(xr)
        lk = [g.sub(g.sub(total, logs[k]), self.w[k]) for k in range(self.n)]
        m = max(lk)
        acc = gmpy2.mpfr(0, self.eval_bits)
        for v in lk:
            acc = g.add(acc, g.exp(g.sub(v, m)))
        return gmpy2.mpfr(g.mul(g.exp(m), acc), self.z.ctx.bits)

    def log_lambda_at(self, x: Real) -> BigReal:
        """log lambda(x); robust even when lambda overflows materialization."""
        xr = self._coerce(x)
        if self.z.index_of(xr) is not None:
            return self.z.ctx.real(0)
        g = self.gmp
        logs, total = self._log_diffs(xr)
        lk = [g.sub(g.sub(total, logs[k]), self.w[k]) for k in range(self.n)]
        m = max(lk)
        acc = gmpy2.mpfr(0, self.eval_bits)
        for v in lk:
            acc = g.add(acc, g.exp(g.sub(v, m)))
        return gmpy2.mpfr(g.add(m, g.log(acc)), self.z.ctx.bits)

    def interpolate_at(self, values: Sequence[Real], x: Real) -> BigReal:
        """L_n f(x) = sum_k f(x_k) l_k(x) for f given by its node values."""
        if len(values) != self.n:
            raise ValueError(f"need {self.n} node values, got {len(values)}")
        xr = self._coerce(x)
        idx = self.z.index_of(xr)
        g = self.gmp
        fv = [gmpy2.mpfr(self._coerce(v), self.eval_bits) for v in values]
        if idx is not None:
            return gmpy2.mpfr(fv[idx], self.z.ctx.bits)
        logs, total = self._log_diffs(xr)
        lk = [g.sub(g.sub(total, logs[k]), self.w[k]) for k in range(self.n)]
        m = max(lk)
        above = self._sign_parity(xr)
        acc = gmpy2.mpfr(0, self.eval_bits)
        for k, v in enumerate(lk):
            num_sign = (above - (1 if self.pts[k] > xr else 0)) % 2
            den_sign = (self.n - 1 - k) % 2
            term = g.mul(fv[k], g.exp(g.sub(v, m)))
            acc = g.sub(acc, term) if (num_sign + den_sign) % 2 else g.add(acc, term)
        return gmpy2.mpfr(g.mul(g.exp(m), acc), self.z.ctx.bits)


# ---------------------------------------------------------------------------
# Functional wrappers (k is 1-based in the public API)


def fundamental(z: NodeArray, k: int, x: Real) -> LogMagnitude:
    """l_k(x) as a LogMagnitude, k = 1..N."""
    if not (1 <= k <= z.n):
        raise ValueError(f"k must lie in [1, {z.n}], got {k}")
    return LagrangeEvaluator(z).fundamental_log(k - 1, x)


def lebesgue_function(z: NodeArray, x: Real) -> BigReal:
    return LagrangeEvaluator(z).lambda_at(x)


def interpolate(z: NodeArray, values: Sequence[Real], x: Real) -> BigReal:
    return LagrangeEvaluator(z).interpolate_at(values, x)


# ---------------------------------------------------------------------------
# Branch-and-bound search for the Lebesgue constant


def lebesgue_constant(z: NodeArray, search: Optional[SearchConfig] = None) -> LebesgueReport:
    """Certified lower bound for Lambda_N = sup_K lambda_N, by interval search.

    Starting from the basic intervals at the array's node level, each round
    evaluates lambda at every interval's endpoints (certified candidates)
    and at interior relative positions (retention steering only), keeps the
    intervals whose best sample reaches (1 - keep_margin) x the global raw
    best, and descends to their children.  Stops at ``depth`` levels below
    the node level or once stabilized (two consecutive rounds moving the
    certified best by < rel_tol each).  Deterministic: ascending interval
    order, strict improvement updates, ties broken toward the smaller point.
    """
    cfg = search if search is not None else SearchConfig()
    ev = LagrangeEvaluator(z)
    geom = z.geometry()
    gp = z.ctx.gmp
    level0 = z.level
    rel = [
        Fraction(i, cfg.samples_per_interval - 1)
        for i in range(1, cfg.samples_per_interval - 1)
    ]
    rel_q = [gmpy2.mpq(t.numerator, t.denominator) for t in rel]

    cache: dict[BigReal, BigReal] = {}

    def lam(x: BigReal) -> BigReal:
        v = cache.get(x)
        if v is None:
            v = ev.lambda_at(x)
            cache[x] = v
        return v

    best: Optional[BigReal] = None
    arg: Optional[BigReal] = None
    raw_best: Optional[BigReal] = None
    history: list[BigReal] = []
    active = [(j, level0) for j in range(1, 2**level0 + 1)]
    rounds = 0
    stabilized = False

    while True:
        scores: list[BigReal] = []
        for j, s in active:
            a, b = geom.bounds(j, s)
            width = gp.sub(b, a)
            iv_best: Optional[BigReal] = None
            for pt, certified in (
                [(a, True), (b, True)]
                + [(gp.add(a, gp.mul(width, q)), False) for q in rel_q]
            ):
                v = lam(pt)
                if iv_best is None or v > iv_best:
                    iv_best = v
                if raw_best is None or v > raw_best:
                    raw_best = v
                if certified and (
                    best is None or v > best or (v == best and pt < arg)
                ):
                    best, arg = v, pt
            scores.append(iv_best)
        history.append(best)
        if len(history) >= 3:
            h2, h1, h0 = history[-3], history[-2], history[-1]
            allowance = gp.mul(h0, gmpy2.mpfr(cfg.rel_tol, z.ctx.bits))
            stabilized = bool(
                gp.sub(h0, h1) <= allowance and gp.sub(h1, h2) <= allowance
            )
        if stabilized or rounds >= cfg.depth:
            break
        threshold = gp.mul(raw_best, gmpy2.mpfr(1 - Fraction(cfg.keep_margin), z.ctx.bits))
        nxt: list[tuple[int, int]] = []
        for (j, s), score in zip(active, scores):
            if score >= threshold:
                nxt.append((2 * j - 1, s + 1))
                nxt.append((2 * j, s + 1))
        active = nxt
        rounds += 1

    return LebesgueReport(
        node_count=z.n,
        lambda_max=best,
        argmax=arg,
        search_depth=rounds,
        evaluations=len(cache),
        stabilized=stabilized,
        precision_bits=z.ctx.bits,
    )


# ---------------------------------------------------------------------------
# Closed-form witness points


def witness_point(z: NodeArray, rule: str) -> BigReal:
    """The distinguished evaluation point a witness rule designates.

    "endpoint": for endpoint arrays Y_{s-1} with s >= 3, the right endpoint
    of the first level-s interval (= l_s for geometric families) -- the
    point whose lambda value admits a closed-form lower bound.
    "empty-interval": for uniform arrays with an unoccupied level-s
    interval, that interval's rule-side endpoint.
    "deleted-node": the removed node of a deleted array.
    """
    prov = z.provenance
    geom = z.geometry()
    if rule == ENDPOINT_WITNESS:
        if not isinstance(prov, EndpointProvenance):
            raise ValueError("endpoint witness needs an endpoint-array provenance")
        s = prov.level + 1
        if s < 3:
            raise ValueError(f"endpoint witness needs node level >= 2, got {prov.level}")
        return geom.bounds(1, s)[1]
    if rule == EMPTY_INTERVAL_WITNESS:
        if not isinstance(prov, UniformProvenance):
            raise ValueError("empty-interval witness needs a uniform-array provenance")
        level = prov.level
        for j in range(1, 2**level + 1):
            if occupancy(z, (j, level)) == 0:
                left, right = geom.bounds(j, level)
                if prov.rule == LEFT or (prov.rule == ALTERNATING and j % 2 == 1):
                    return left
                return right
        raise ValueError("uniform array has no empty interval (count = 2^s)")
    if rule == DELETED_NODE_WITNESS:
        if not isinstance(prov, DeletedProvenance):
            raise ValueError("deleted-node witness needs a deleted-array provenance")
        base = regenerate(z.descriptor, prov.base, z.ctx)
        return base.points[prov.removed_index - 1]
    raise ValueError(
        f"unknown witness rule {rule!r} (use {ENDPOINT_WITNESS!r}, "
        f"{EMPTY_INTERVAL_WITNESS!r}, or {DELETED_NODE_WITNESS!r})"
    )


def witness_lambda(z: NodeArray, rule: str) -> BigReal:
    """lambda at the witness point (a certified lower bound for Lambda_N)."""
    return LagrangeEvaluator(z).lambda_at(witness_point(z, rule))
