#!/usr/bin/env python3
"""Endpoint-witness growth on geometric Cantor sets.

For each level s, interpolation on the 2^s-point endpoint array Y_{s-1}
of K_beta is evaluated at the witness x = l_s and compared against the
two closed-form lower bounds.  The witness value races past 10^18 within
eight levels at beta = 1/3 -- the table is mostly a stress test of the
log-domain evaluation pipeline.

Example:
  python scripts/run_beta_growth.py --beta 1/3 --s-max 8 --out results/beta_growth.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from cantorleb import (
    ENDPOINT_WITNESS,
    GeometricBeta,
    decimal_from_log,
    endpoint_nodes,
    endpoint_witness_bound,
    geometric_growth_bound,
    make_context,
    parse_ratio,
    witness_lambda,
    witness_point,
)

COLUMNS = [
    "s", "N", "witness_x", "lambda_at_witness", "lambda_log10",
    "witness_bound", "growth_bound", "bound_holds", "precision_bits", "elapsed_ms",
]


def run(beta, s_max: int, digits: int) -> list[dict]:
    desc = GeometricBeta(parse_ratio(beta))
    rows = []
    for s in range(3, s_max + 1):
        t0 = time.monotonic()
        ctx = make_context(desc, s + 2, 2**s, digits)
        z = endpoint_nodes(desc, s - 1, ctx)
        lam = witness_lambda(z, ENDPOINT_WITNESS)
        witness = endpoint_witness_bound(desc, s, ctx)
        growth = geometric_growth_bound(desc.beta, s, ctx)
        log_lam = ctx.log(lam)
        rows.append({
            "s": s,
            "N": z.n,
            "witness_x": decimal_from_log(ctx.log(witness_point(z, ENDPOINT_WITNESS)), ctx, digits),
            "lambda_at_witness": decimal_from_log(log_lam, ctx, digits),
            "lambda_log10": f"{float(ctx.div(log_lam, ctx.log(ctx.real(10)))):.6f}",
            "witness_bound": decimal_from_log(witness.log_value, ctx, digits),
            "growth_bound": decimal_from_log(growth.log_value, ctx, digits),
            "bound_holds": str(bool(lam >= witness.value and lam >= growth.value)).lower(),
            "precision_bits": ctx.bits,
            "elapsed_ms": int(round((time.monotonic() - t0) * 1000)),
        })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", default="1/3", help="length ratio, e.g. 1/3 or 1/9")
    ap.add_argument("--s-max", type=int, default=8)
    ap.add_argument("--digits", type=int, default=20)
    ap.add_argument("--out", type=Path, default=None, help="CSV path (default: stdout)")
    args = ap.parse_args(argv)

    rows = run(args.beta, args.s_max, args.digits)
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
