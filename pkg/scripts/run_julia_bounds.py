#!/usr/bin/env python3
"""Bounded vs unbounded Lebesgue constants on an equilibrium Cantor set.

For gamma_k = coeff * ratio^(k-1) the endpoint arrays Y_{s-1} keep the
Lebesgue constant below 1 + 4 C_0 / 105, while removing any single node
forces lambda above (N - 2)/C_0 at the removed point.  The sweep prints
the certified constants next to both closed-form bounds, after checking
the level construction invariants.

Example:
  python scripts/run_julia_bounds.py --coeff 1/32 --ratio 1/2 --s-max 6
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from cantorleb import (
    DELETED_NODE_WITNESS,
    GammaSequence,
    JuliaDescriptor,
    SearchConfig,
    build_levels,
    decimal_str,
    delete_node,
    deleted_node_bound,
    endpoint_nodes,
    equilibrium_upper_bound,
    lebesgue_constant,
    make_context,
    verification_context,
    verify_julia_invariants,
    witness_lambda,
)

COLUMNS = [
    "s", "N", "lambda_max", "upper_bound", "below_upper", "stabilized",
    "lambda_deleted_mid", "deleted_lower_bound", "above_lower",
    "precision_bits", "elapsed_ms",
]


def run(coeff, ratio, s_max: int, depth: int, digits: int) -> list[dict]:
    gamma = GammaSequence.geometric(coeff, ratio)
    vctx = verification_context(gamma, s_max, digits)
    report = verify_julia_invariants(build_levels(gamma, s_max, vctx))
    if not report.passed:
        failing = ", ".join(c.name for c in report.checks if not c.passed)
        raise SystemExit(f"construction invariants failed: {failing}")
    print(f"# construction invariants: {len(report.checks)} checks pass "
          f"at {vctx.bits} bits", file=sys.stderr)

    desc = JuliaDescriptor(gamma)
    rows = []
    for s in range(2, s_max + 1):
        t0 = time.monotonic()
        ctx = make_context(desc, s + depth, 2**s, digits)
        z = endpoint_nodes(desc, s - 1, ctx)
        rep = lebesgue_constant(z, SearchConfig(depth=depth))
        upper = equilibrium_upper_bound(gamma, ctx)
        deleted = delete_node(z, z.n // 2)
        lam_del = witness_lambda(deleted, DELETED_NODE_WITNESS)
        lower = deleted_node_bound(gamma, z.n, ctx)
        rows.append({
            "s": s,
            "N": z.n,
            "lambda_max": decimal_str(rep.lambda_max, digits),
            "upper_bound": decimal_str(upper.value, digits),
            "below_upper": str(bool(rep.stabilized and rep.lambda_max <= upper.value)).lower(),
            "stabilized": str(rep.stabilized).lower(),
            "lambda_deleted_mid": decimal_str(lam_del, digits),
            "deleted_lower_bound": decimal_str(lower.value, digits),
            "above_lower": str(bool(lam_del > lower.value)).lower(),
            "precision_bits": ctx.bits,
            "elapsed_ms": int(round((time.monotonic() - t0) * 1000)),
        })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--coeff", default="1/32", help="gamma_1 (must be <= 1/32)")
    ap.add_argument("--ratio", default="1/2", help="geometric ratio in (0, 1)")
    ap.add_argument("--s-max", type=int, default=6)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--digits", type=int, default=20)
    ap.add_argument("--out", type=Path, default=None, help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    rows = run(args.coeff, args.ratio, args.s_max, args.depth, args.digits)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
    stream = args.out.open("w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(stream, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        stream.close()
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
