"""Named verification suites confronting computed data with proven statements.

Each suite function runs one family of checks -- structural invariants,
exhaustive small-case combinatorics, or one-sided comparisons between
computed Lebesgue values and closed-form bounds -- and returns CheckLine
records (one per check) that render as machine-readable ``PASS``/``FAIL``
lines.  Suites are registered by stable string ids; run_suite dispatches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

import gmpy2

from .bounds import (
    deleted_node_bound,
    endpoint_witness_bound,
    equilibrium_upper_bound,
    gap_sum_check,
    geometric_growth_bound,
    length_gap_ratio_check,
    mergelyan_scale,
)
from .cantor import GeometricAlpha, GeometricBeta, left_endpoint_fraction
from .julia import (
    GammaSequence,
    JuliaDescriptor,
    build_levels,
    verification_context,
    verify_julia_invariants,
)
from .lebesgue import LagrangeEvaluator, SearchConfig, lebesgue_constant, witness_lambda
from .nodes import (
    LEFT,
    ALTERNATING,
    CustomProvenance,
    NodeArray,
    delete_node,
    endpoint_nodes,
    is_uniform,
    max_pair_level,
    uniform_nodes,
)
from .numerics import BigReal, PrecisionContext, decimal_str, make_context

_SEED = 0x1EB

_THIRD = GeometricBeta(Fraction(1, 3))
_KSQ = GeometricAlpha(alpha=Fraction(2), ell1=Fraction(1, 3))
_GAMMA = GammaSequence.geometric(Fraction(1, 32), Fraction(1, 2))


@dataclass(frozen=True)
class CheckLine:
    """One verification check: suite id, check name, verdict, evidence."""

    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        text = f"{verdict} {self.suite}:{self.name}"
        return f"{text}  {self.detail}" if self.detail else text


# ---------------------------------------------------------------------------
# Shared helpers


def _tolerance(ctx: PrecisionContext) -> BigReal:
    return gmpy2.mpfr(2, ctx.bits) ** -(ctx.bits - 16)


def _random_dyadics(count: int, rng: random.Random) -> list[Fraction]:
    """Reproducible random points in [0, 1], exactly representable in binary."""
    return [Fraction(rng.getrandbits(48), 2**48) for _ in range(count)]


def _endpoint_fractions(descriptor, level: int) -> list[Fraction]:
    """Exact endpoints of all level-``level`` basic intervals, ascending."""
    pts: set[Fraction] = set()
    for j in range(1, 2**level + 1):
        left = left_endpoint_fraction(descriptor, j, level)
        pts.add(left)
        pts.add(left + descriptor.length_fraction(level))
    return sorted(pts)


def _rational_lagrange(xs: list[Fraction], values: list[Fraction], x: Fraction) -> Fraction:
    """Exact interpolation value sum_k f_k prod_{i != k} (x - x_i)/(x_k - x_i)."""
    total = Fraction(0)
    for k, xk in enumerate(xs):
        term = values[k]
        for i, xi in enumerate(xs):
            if i != k:
                term *= (x - xi) / (xk - xi)
        total += term
    return total


def exhaustive_endpoint_max(z: NodeArray, depth: int) -> tuple[BigReal, BigReal, int]:
    """(max lambda, argmax, points evaluated) over all level-``depth`` endpoints.

    Reference oracle for the branch-and-bound search: every endpoint of
    every level-``depth`` basic interval is evaluated, ties broken toward
    the smaller point.  Cost doubles per level -- keep depth small.
    """
    geom = z.geometry()
    pts: set[BigReal] = set()
    for j in range(1, 2**depth + 1):
        a, b = geom.bounds(j, depth)
        pts.add(a)
        pts.add(b)
    ev = LagrangeEvaluator(z)
    best = None
    arg = None
    for x in sorted(pts):
        v = ev.lambda_at(x)
        if best is None or v > best:
            best, arg = v, x
    return best, arg, len(pts)


# ---------------------------------------------------------------------------
# core-invariants


def _suite_core_invariants() -> list[CheckLine]:
    lines: list[CheckLine] = []
    rng = random.Random(_SEED)
    for n in (4, 8, 16, 32):
        level = n.bit_length() - 2  # Y_level has 2^(level+1) = n points
        ctx = make_context(_THIRD, level + 2, n)
        z = endpoint_nodes(_THIRD, level, ctx)
        ev = LagrangeEvaluator(z)
        tol = _tolerance(ctx)
        g = ctx.gmp

        worst = ctx.real(0)
        ones = [1] * n
        for x in _random_dyadics(200, rng):
            err = g.abs(g.sub(ev.interpolate_at(ones, x), ctx.real(1)))
            if err > worst:
                worst = err
        lines.append(CheckLine(
            "core-invariants", f"partition-of-unity-N{n}", worst < tol,
            f"max |sum l_k - 1| = {decimal_str(worst, 3)} < {decimal_str(tol, 3)} at 200 points",
        ))

        kron_ok = True
        for j in range(n):
            for k in range(n):
                lm = ev.fundamental_log(k, z.points[j])
                exact = (lm.sign == 1 and lm.log_abs == 0) if j == k else lm.sign == 0
                kron_ok = kron_ok and exact
        lines.append(CheckLine(
            "core-invariants", f"kronecker-N{n}", kron_ok,
            f"l_k(x_j) = delta_kj exactly for all {n}x{n} pairs",
        ))

    for n in (4, 8):
        level = n.bit_length() - 2
        ctx = make_context(_THIRD, level + 2, n)
        z = endpoint_nodes(_THIRD, level, ctx)
        ev = LagrangeEvaluator(z)
        tol = _tolerance(ctx)
        g = ctx.gmp
        xs_exact = _endpoint_fractions(_THIRD, level)
        mono_ok = True
        worst = ctx.real(0)
        pts = _random_dyadics(5, rng)
        for d in range(n):
            values = [xk**d for xk in xs_exact]
            for x in pts:
                oracle = _rational_lagrange(xs_exact, values, x)
                if oracle != x**d:
                    mono_ok = False
                err = g.abs(g.sub(ev.interpolate_at(values, x), ctx.real(oracle)))
                if err > worst:
                    worst = err
        lines.append(CheckLine(
            "core-invariants", f"monomial-reproduction-N{n}", mono_ok and worst < tol,
            f"x^d for d < {n}: exact rational reproduction, "
            f"max computed error {decimal_str(worst, 3)} < {decimal_str(tol, 3)}",
        ))
    return lines


# ---------------------------------------------------------------------------
# lemma-rr: occupancy combinatorics of 2^s - 1 points


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All ordered splits of ``total`` into ``parts`` nonnegative parts."""
    for bars in combinations(range(total + parts - 1), parts - 1):
        out = []
        prev = -1
        for b in bars + (total + parts - 1,):
            out.append(b - prev - 1)
            prev = b
        yield tuple(out)


def _partitions(total: int, max_part: Optional[int] = None) -> Iterable[tuple[int, ...]]:
    """All multisets of positive parts summing to ``total``, parts nonincreasing."""
    if total == 0:
        yield ()
        return
    cap = total if max_part is None else min(max_part, total)
    for first in range(cap, 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _realize(descriptor, s: int, counts: tuple[int, ...], ctx: PrecisionContext) -> NodeArray:
    """A point set with the given level-s interval occupancies.

    The c points assigned to interval (j, s) are the left endpoints of its
    first c level-(s+4) descendants (16 available, c <= 15): exact points
    of the set, strictly ordered, occupancy at level s as requested.
    """
    pts: list[BigReal] = []
    for j, c in enumerate(counts, start=1):
        for i in range(c):
            pts.append(ctx.real(left_endpoint_fraction(descriptor, 16 * (j - 1) + 1 + i, s + 4)))
    return NodeArray(points=tuple(pts), descriptor=descriptor, provenance=CustomProvenance(), ctx=ctx)


def _check_pattern(z: NodeArray, s: int, counts: tuple[int, ...]) -> bool:
    expect_uniform = max(counts) <= 1
    uni = is_uniform(z, s)
    r = max_pair_level(z, (1, 0), s + 5)
    if expect_uniform:
        return uni and r == s - 1
    return (not uni) and r is not None and r >= s


def _suite_lemma_rr() -> list[CheckLine]:
    lines: list[CheckLine] = []
    for s in (2, 3):
        ctx = make_context(_THIRD, s + 5, 2**s)
        n_uni = n_non = 0
        ok = True
        for counts in _compositions(2**s - 1, 2**s):
            if max(counts) <= 1:
                n_uni += 1
            else:
                n_non += 1
            ok = ok and _check_pattern(_realize(_THIRD, s, counts, ctx), s, counts)
        lines.append(CheckLine(
            "lemma-rr", f"all-patterns-s{s}", ok,
            f"{n_uni} uniform patterns give R = {s - 1}, "
            f"{n_non} non-uniform give R >= {s} (exhaustive)",
        ))
    # s = 4: verdicts depend only on the occupancy multiset (uniform side:
    # which interval is empty; non-uniform side: any part >= 2 already forces
    # is_uniform false and a level >= s pair), so enumerate the 16 empty
    # positions exactly and one canonical composition per partition class.
    s = 4
    ctx = make_context(_THIRD, s + 5, 2**s)
    ok_uni = True
    for empty in range(2**s):
        counts = tuple(0 if j == empty else 1 for j in range(2**s))
        ok_uni = ok_uni and _check_pattern(_realize(_THIRD, s, counts, ctx), s, counts)
    lines.append(CheckLine(
        "lemma-rr", "uniform-patterns-s4", ok_uni,
        f"all 16 single-empty patterns give R = {s - 1}",
    ))
    ok_non = True
    n_classes = 0
    for parts in _partitions(2**s - 1, None):
        if max(parts) <= 1:
            continue  # the uniform multiset, covered above
        if len(parts) > 2**s:
            continue
        n_classes += 1
        counts = tuple(list(parts) + [0] * (2**s - len(parts)))
        ok_non = ok_non and _check_pattern(_realize(_THIRD, s, counts, ctx), s, counts)
    lines.append(CheckLine(
        "lemma-rr", "nonuniform-classes-s4", ok_non,
        f"{n_classes} occupancy-multiset classes give R >= {s}",
    ))
    return lines


# ---------------------------------------------------------------------------
# lemma-sum and lemma-llq


def _suite_lemma_sum() -> list[CheckLine]:
    ctx = make_context(_KSQ, 8, 64)
    lines = []
    cases = [
        (Fraction(2), Fraction(1, 3), 20),
        (Fraction(3), Fraction(1, 3), 20),
        (Fraction(3, 2), Fraction(1, 9), 20),
    ]
    for alpha, ell1, n_max in cases:
        r = gap_sum_check(alpha, ell1, n_max, ctx)
        lines.append(CheckLine(
            "lemma-sum", f"gap-sum-alpha-{alpha}", bool(r.passed),
            f"C={r.params['C']}, n_alpha={r.params['n_alpha']}, n <= {n_max}: {r.detail}",
        ))
    for alpha, ell1 in ((Fraction(2), Fraction(1, 3)), (Fraction(3), Fraction(1, 3))):
        r = length_gap_ratio_check(alpha, ell1, 10, ctx)
        lines.append(CheckLine(
            "lemma-sum", f"length-gap-ratio-alpha-{alpha}", bool(r.passed), r.detail,
        ))
    return lines


def _uniform_fractions(descriptor, s: int, rule: str) -> list[Fraction]:
    """Exact one-node-per-interval uniform array at level s (count 2^s)."""
    ell_s = descriptor.length_fraction(s)
    pts = []
    for j in range(1, 2**s + 1):
        left = left_endpoint_fraction(descriptor, j, s)
        if rule == LEFT or (rule == ALTERNATING and j % 2 == 1):
            pts.append(left)
        else:
            pts.append(left + ell_s)
    return pts


def _suite_lemma_llq() -> list[CheckLine]:
    from .nodes import RIGHT

    lines = []
    for rule in (LEFT, RIGHT, ALTERNATING):
        for s in range(1, 7):
            xs = _uniform_fractions(_KSQ, s, rule)
            ell_s = _KSQ.length_fraction(s)
            ok = True
            worst: Optional[Fraction] = None
            for q in range(0, s + 1):
                ell_q = _KSQ.length_fraction(q)
                m = 2 ** (s - q)
                for j in range(1, m + 1):
                    margin = xs[j - 1] + xs[m - j] + ell_s - ell_q
                    if margin < 0:
                        ok = False
                    if worst is None or margin < worst:
                        worst = margin
            lines.append(CheckLine(
                "lemma-llq", f"{rule}-s{s}", ok,
                f"l_q <= x_j + x_(2^(s-q)+1-j) + l_s for all q <= {s}, "
                f"exact; worst slack {float(worst):.4g}",
            ))
    return lines


# ---------------------------------------------------------------------------
# julia-construction


def _suite_julia_construction() -> list[CheckLine]:
    s_max = 6
    ctx = verification_context(_GAMMA, s_max)
    levels = build_levels(_GAMMA, s_max, ctx)
    report = verify_julia_invariants(levels)
    return [
        CheckLine("julia-construction", c.name, c.passed, c.detail)
        for c in report.checks
    ]


# ---------------------------------------------------------------------------
# theorem suites: growth on K_beta, boundedness on K^2, julia arrays


def _suite_theorem_beta() -> list[CheckLine]:
    lines = []
    lam_last = None
    for s in range(3, 9):
        ctx = make_context(_THIRD, s + 2, 2**s)
        z = endpoint_nodes(_THIRD, s - 1, ctx)
        lam = witness_lambda(z, "endpoint")
        wb = endpoint_witness_bound(_THIRD, s, ctx)
        gb = geometric_growth_bound(Fraction(1, 3), s, ctx)
        ok = lam >= wb.value and wb.value >= gb.value
        lines.append(CheckLine(
            "theorem-beta", f"witness-chain-s{s}", bool(ok),
            f"lambda(l_{s}) = {decimal_str(lam, 6)} >= witness bound "
            f"{decimal_str(wb.value, 6)} >= growth bound {decimal_str(gb.value, 6)}",
        ))
        lam_last = lam
    lines.append(CheckLine(
        "theorem-beta", "diverges", bool(lam_last > 1e15),
        f"lambda at s=8 is {decimal_str(lam_last, 6)} > 1e15",
    ))
    return lines


def _suite_theorem_bdd1() -> list[CheckLine]:
    lines = []
    reports = {}
    for s in range(4, 9):
        ctx = make_context(_KSQ, s + 6, 2**s)
        z = endpoint_nodes(_KSQ, s - 1, ctx)
        rep = lebesgue_constant(z, SearchConfig(depth=6))
        reports[s] = rep
        lines.append(CheckLine(
            "theorem-bdd1", f"stabilized-s{s}", rep.stabilized,
            f"Lambda_{2**s} = {decimal_str(rep.lambda_max, 12)} "
            f"(depth {rep.search_depth}, {rep.evaluations} evaluations)",
        ))
    mono = all(reports[s].lambda_max <= reports[s - 1].lambda_max for s in range(6, 9))
    lines.append(CheckLine(
        "theorem-bdd1", "nonincreasing", mono,
        "Lambda_(2^s) nonincreasing for s >= 5",
    ))
    gap = reports[8].lambda_max - 1
    lines.append(CheckLine(
        "theorem-bdd1", "approach", bool(gap < 1e-2),
        f"Lambda_256 - 1 = {decimal_str(gap, 4)} < 1e-2",
    ))
    return lines


def _suite_theorem_unif() -> list[CheckLine]:
    lines = []
    prev = None
    lam = None
    for s in range(4, 9):
        ctx = make_context(_KSQ, s + 2, 2**s)
        z = uniform_nodes(_KSQ, s, 2**s - 1, ctx=ctx)
        lam = witness_lambda(z, "empty-interval")
        ok = prev is None or lam > prev
        lines.append(CheckLine(
            "theorem-unif", f"witness-s{s}", bool(ok),
            f"lambda at empty-interval witness = {decimal_str(lam, 6)} "
            f"({2**s - 1} nodes){'' if prev is None else ', increasing'}",
        ))
        prev = lam
    lines.append(CheckLine(
        "theorem-unif", "diverges", bool(lam > 10),
        f"lambda at s=8 is {decimal_str(lam, 6)} > 10",
    ))
    return lines


def _suite_theorem_bdd2() -> list[CheckLine]:
    desc = JuliaDescriptor(_GAMMA)
    lines = []
    for s in range(2, 7):
        ctx = make_context(desc, s + 6, 2**s)
        z = endpoint_nodes(desc, s - 1, ctx)
        rep = lebesgue_constant(z, SearchConfig(depth=6))
        bound = equilibrium_upper_bound(_GAMMA, ctx)
        ok = rep.stabilized and rep.lambda_max <= bound.value
        lines.append(CheckLine(
            "theorem-bdd2", f"bounded-s{s}", bool(ok),
            f"Lambda_{2**s} = {decimal_str(rep.lambda_max, 9)} <= "
            f"{decimal_str(bound.value, 6)} (stabilized={rep.stabilized})",
        ))
    return lines


def _suite_theorem_notbdd() -> list[CheckLine]:
    desc = JuliaDescriptor(_GAMMA)
    lines = []
    for s in (3, 4, 5):
        ctx = make_context(desc, s + 2, 2**s)
        y = endpoint_nodes(desc, s - 1, ctx)
        n = y.n
        bound = deleted_node_bound(_GAMMA, n - 1, ctx)
        for label, k in (("first", 1), ("middle", n // 2), ("last", n)):
            z = delete_node(y, k)
            lam = witness_lambda(z, "deleted-node")
            ok = lam > bound.value
            lines.append(CheckLine(
                "theorem-notbdd", f"s{s}-remove-{label}", bool(ok),
                f"lambda(removed x_{k}) = {decimal_str(lam, 6)} > "
                f"(N-2)/C_0 = {decimal_str(bound.value, 6)} (N={n - 1})",
            ))
    return lines


def _suite_mergelyan_ms() -> list[CheckLine]:
    lines = []
    for beta in (Fraction(1, 9), Fraction(1, 27)):
        desc = GeometricBeta(beta)
        ctx = make_context(desc, 12, 2048)
        prev = None
        ok_mono = True
        ok_ratio = True
        worst_ratio = None
        for s in range(4, 10):
            log_ms, leading = mergelyan_scale(desc, s, ctx)
            if prev is not None and not log_ms > prev:
                ok_mono = False
            ratio = ctx.gmp.div(log_ms, leading)
            if not (0.5 < ratio < 2):
                ok_ratio = False
            if worst_ratio is None or abs(float(ratio) - 1) > abs(worst_ratio - 1):
                worst_ratio = float(ratio)
            prev = log_ms
        lines.append(CheckLine(
            "mergelyan-ms", f"beta-{beta.denominator}", ok_mono and ok_ratio,
            f"log M_s strictly increasing for s=4..9, ratio to leading term "
            f"within (0.5, 2) (farthest {worst_ratio:.4f})",
        ))
    return lines


# ---------------------------------------------------------------------------
# Registry

_SUITES: dict[str, Callable[[], list[CheckLine]]] = {
    "core-invariants": _suite_core_invariants,
    "lemma-rr": _suite_lemma_rr,
    "lemma-sum": _suite_lemma_sum,
    "lemma-llq": _suite_lemma_llq,
    "julia-construction": _suite_julia_construction,
    "theorem-beta": _suite_theorem_beta,
    "theorem-bdd1": _suite_theorem_bdd1,
    "theorem-unif": _suite_theorem_unif,
    "theorem-bdd2": _suite_theorem_bdd2,
    "theorem-notbdd": _suite_theorem_notbdd,
    "mergelyan-ms": _suite_mergelyan_ms,
}

SUITE_IDS: tuple[str, ...] = tuple(_SUITES)


def run_suite(suite: str) -> list[CheckLine]:
    """Run one named suite; raises ValueError for unknown ids."""
    try:
        fn = _SUITES[suite]
    except KeyError:
        raise ValueError(
            f"unknown suite {suite!r}; known: {', '.join(SUITE_IDS)}"
        ) from None
    return fn()
