#!/usr/bin/env python3
"""Two node policies on the small Cantor set K^alpha, side by side.

On l_{s+1} = l_s^alpha sets the Lebesgue constant of the 2^s endpoint
arrays collapses to 1 doubly exponentially fast, while dropping a single
node (2^s - 1 uniform nodes, one basic interval left empty) makes it blow
up.  This sweep prints both columns for the same levels so the contrast
is visible in one table.

Example:
  python scripts/run_alpha_convergence.py --alpha 2 --ell1 1/3 --s-max 8
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from cantorleb import (
    EMPTY_INTERVAL_WITNESS,
    GeometricAlpha,
    SearchConfig,
    decimal_str,
    endpoint_nodes,
    lebesgue_constant,
    make_context,
    parse_ratio,
    uniform_nodes,
    witness_lambda,
)

COLUMNS = [
    "s", "N_full", "lambda_full", "lambda_full_minus_1", "stabilized",
    "N_holed", "lambda_at_hole", "precision_bits", "elapsed_ms",
]


def run(alpha, ell1, s_max: int, depth: int, digits: int) -> list[dict]:
    desc = GeometricAlpha(alpha=parse_ratio(alpha), ell1=parse_ratio(ell1))
    rows = []
    for s in range(3, s_max + 1):
        t0 = time.monotonic()
        ctx = make_context(desc, s + depth, 2**s, digits)
        report = lebesgue_constant(endpoint_nodes(desc, s - 1, ctx), SearchConfig(depth=depth))
        holed = uniform_nodes(desc, s, 2**s - 1, ctx=ctx)
        lam_hole = witness_lambda(holed, EMPTY_INTERVAL_WITNESS)
        excess = ctx.sub(report.lambda_max, ctx.real(1))
        rows.append({
            "s": s,
            "N_full": report.node_count,
            "lambda_full": decimal_str(report.lambda_max, digits),
            "lambda_full_minus_1": decimal_str(excess, digits),
            "stabilized": str(report.stabilized).lower(),
            "N_holed": holed.n,
            "lambda_at_hole": decimal_str(lam_hole, digits),
            "precision_bits": ctx.bits,
            "elapsed_ms": int(round((time.monotonic() - t0) * 1000)),
        })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", default="2", help="length exponent, > 1")
    ap.add_argument("--ell1", default="1/3", help="first level length")
    ap.add_argument("--s-max", type=int, default=8)
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--digits", type=int, default=20)
    ap.add_argument("--out", type=Path, default=None, help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    rows = run(args.alpha, args.ell1, args.s_max, args.depth, args.digits)
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
