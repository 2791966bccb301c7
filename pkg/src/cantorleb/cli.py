"""Command-line harness: node generation, Lebesgue experiments, bound reports.

Subcommands
-----------
lengths    interval length/gap table for a set descriptor
nodes      generate a node array and print it in the text format
lambda     evaluate the Lebesgue function of a stored node array at a point
constant   run one Lebesgue-constant search and emit a CSV row
sweep      run a JSON-configured experiment over a range of levels
julia      build equilibrium-domain levels; optionally run the invariant checks
bounds     evaluate one closed-form bound and print it as JSON
verify     run a named verification suite (PASS/FAIL line per check)

Exit codes: 0 success (all checks pass), 1 check failures, 2 configuration
errors, 3 level-budget/precision failures.  All numeric parameters accept
integer-ratio strings ("1/3") so exact inputs stay exact; LC_DIGITS
overrides the default output precision of 40 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .bounds import (
    BoundResult,
    LOWER_BOUND,
    UPPER_BOUND,
    deleted_node_bound,
    endpoint_witness_bound,
    equilibrium_upper_bound,
    gap_sum_check,
    geometric_growth_bound,
    length_gap_ratio_check,
    mergelyan_scale,
)
from .cantor import (
    ExactUnavailable,
    GeometricBeta,
    LevelBudgetError,
    SetDescriptor,
    log_gap,
    log_length,
    parse_descriptor,
)
from .julia import (
    GammaSequence,
    JuliaDescriptor,
    build_levels,
    c0_constant,
    verification_context,
    verify_julia_invariants,
)
from .lebesgue import SearchConfig, LagrangeEvaluator, lebesgue_constant
from .nodes import (
    NodeArray,
    DeletedProvenance,
    EndpointProvenance,
    UniformProvenance,
    delete_node,
    endpoint_nodes,
    from_text,
    node_level,
    parse_provenance,
    regenerate,
    to_text,
    uniform_nodes,
)
from .numerics import (
    PrecisionContext,
    decimal_from_log,
    decimal_str,
    make_context,
    parse_ratio,
)
from .verify import SUITE_IDS, run_suite

DEFAULT_DIGITS = 40

CSV_COLUMNS = [
    "s", "N", "lambda_max", "lambda_max_log10", "argmax",
    "bound_name", "bound_value", "bound_side", "satisfied",
    "stabilized", "depth", "precision_bits", "elapsed_ms",
]


class ConfigError(ValueError):
    """Invalid configuration input (exit code 2)."""


def _target_digits(explicit: Optional[int]) -> int:
    if explicit is not None:
        if explicit < 1:
            raise ConfigError(f"digits must be >= 1, got {explicit}")
        return explicit
    env = os.environ.get("LC_DIGITS")
    if env:
        try:
            digits = int(env)
        except ValueError:
            raise ConfigError(f"LC_DIGITS must be an integer, got {env!r}") from None
        if digits < 1:
            raise ConfigError(f"LC_DIGITS must be >= 1, got {digits}")
        return digits
    return DEFAULT_DIGITS


def _log10(ctx: PrecisionContext, log_value) -> str:
    return f"{float(ctx.gmp.div(log_value, ctx.log(ctx.real(10)))):.10g}"


# ---------------------------------------------------------------------------
# Experiment configuration (sweep + constant share the row machinery)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a node family on a set, searched over a level range."""

    descriptor: SetDescriptor
    kind: str  # endpoints | uniform | deleted
    s_values: tuple[int, ...]
    rule: str = "left"
    count: Optional[int] = None  # uniform only; default 2^s - 1 per level
    empty_index: Optional[int] = None
    omit: Optional[int] = None  # deleted only; default last node
    search: SearchConfig = SearchConfig()
    target_digits: int = DEFAULT_DIGITS
    bound: Optional[str] = None
    out_format: str = "csv"
    out_path: Optional[str] = None

    @classmethod
    def from_json(cls, doc: dict) -> "ExperimentConfig":
        try:
            desc = parse_descriptor(str(doc["set"]))
            nodes = doc.get("nodes", {})
            kind = str(nodes.get("kind", "endpoints"))
            if kind not in ("endpoints", "uniform", "deleted"):
                raise ConfigError(f"unknown node kind {kind!r}")
            sweep = doc.get("sweep")
            if sweep is not None:
                s_values = tuple(range(int(sweep["s_min"]), int(sweep["s_max"]) + 1))
                if not s_values:
                    raise ConfigError("sweep range is empty")
            else:
                s_values = (int(nodes["s"]),)
            search_doc = doc.get("search", {})
            search = SearchConfig(
                depth=int(search_doc.get("depth", 6)),
                samples_per_interval=int(search_doc.get("samples_per_interval", 5)),
                keep_margin=float(parse_ratio(search_doc.get("keep_margin", "1/2"))),
                rel_tol=float(parse_ratio(search_doc.get("rel_tol", "1e-6"))),
            )
            output = doc.get("output", {})
            fmt = str(output.get("format", "csv"))
            if fmt not in ("csv", "json"):
                raise ConfigError(f"output format must be csv or json, got {fmt!r}")
            count = nodes.get("count")
            omit = nodes.get("omit")
            empty_index = nodes.get("empty_index")
            return cls(
                descriptor=desc,
                kind=kind,
                s_values=s_values,
                rule=str(nodes.get("rule", "left")),
                count=None if count is None else int(count),
                empty_index=None if empty_index is None else int(empty_index),
                omit=None if omit is None else int(omit),
                search=search,
                target_digits=_target_digits(
                    None if "precision" not in doc else int(doc["precision"].get("target_digits", DEFAULT_DIGITS))
                ),
                bound=doc.get("bound"),
                out_format=fmt,
                out_path=output.get("path"),
            )
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, LevelBudgetError):
                raise
            raise ConfigError(f"invalid experiment config: {exc}") from exc


def _build_array(cfg: ExperimentConfig, s: int) -> NodeArray:
    if cfg.kind == "endpoints":
        n = 2 ** (s + 1)
        ctx = make_context(cfg.descriptor, s + cfg.search.depth + 2, n, cfg.target_digits)
        return endpoint_nodes(cfg.descriptor, s, ctx)
    if cfg.kind == "uniform":
        count = cfg.count if cfg.count is not None else 2**s - 1
        ctx = make_context(cfg.descriptor, s + cfg.search.depth + 2, max(count, 2), cfg.target_digits)
        return uniform_nodes(cfg.descriptor, s, count, rule=cfg.rule, ctx=ctx,
                             empty_index=cfg.empty_index)
    n = 2 ** (s + 1)
    ctx = make_context(cfg.descriptor, s + cfg.search.depth + 2, n, cfg.target_digits)
    base = endpoint_nodes(cfg.descriptor, s, ctx)
    omit = cfg.omit if cfg.omit is not None else base.n
    return delete_node(base, omit)


def _attach_bound(cfg: ExperimentConfig, z: NodeArray, s: int) -> Optional[BoundResult]:
    if cfg.bound is None:
        return None
    name = cfg.bound
    ctx = z.ctx
    # The witness-growth bounds only exist from depth 3 on; shallower sweep
    # rows simply carry no bound columns rather than failing the whole run.
    if name == "endpoint-witness":
        if s + 1 < 3:
            return None
        return endpoint_witness_bound(cfg.descriptor, s + 1, ctx)
    if name == "geometric-growth":
        if not isinstance(cfg.descriptor, GeometricBeta):
            raise ConfigError("geometric-growth bound needs a beta: set")
        if s + 1 < 3:
            return None
        return geometric_growth_bound(cfg.descriptor.beta, s + 1, ctx)
    if name == "equilibrium-upper":
        if not isinstance(cfg.descriptor, JuliaDescriptor):
            raise ConfigError("equilibrium-upper bound needs a julia: set")
        return equilibrium_upper_bound(cfg.descriptor.gamma, ctx)
    if name == "deleted-node":
        if not isinstance(cfg.descriptor, JuliaDescriptor):
            raise ConfigError("deleted-node bound needs a julia: set")
        return deleted_node_bound(cfg.descriptor.gamma, z.n, ctx)
    raise ConfigError(f"unknown bound {name!r} for experiment rows")


def _one_row(cfg: ExperimentConfig, s: int) -> dict[str, str]:
    t0 = time.monotonic()
    z = _build_array(cfg, s)
    report = lebesgue_constant(z, cfg.search)
    bound = _attach_bound(cfg, z, s)
    elapsed = int(round((time.monotonic() - t0) * 1000))
    ctx = z.ctx
    if bound is None:
        bname = bvalue = bside = satisfied = ""
    else:
        bname = bound.name
        bvalue = decimal_from_log(bound.log_value, ctx, cfg.target_digits)
        bside = bound.side
        if bound.side == LOWER_BOUND:
            satisfied = str(report.lambda_max >= bound.value).lower()
        elif bound.side == UPPER_BOUND:
            satisfied = str(bool(report.stabilized and report.lambda_max <= bound.value)).lower()
        else:
            satisfied = str(bool(bound.passed)).lower()
    return {
        "s": str(s),
        "N": str(report.node_count),
        "lambda_max": decimal_str(report.lambda_max, cfg.target_digits),
        "lambda_max_log10": _log10(ctx, ctx.log(report.lambda_max)),
        "argmax": decimal_str(report.argmax, cfg.target_digits),
        "bound_name": bname,
        "bound_value": bvalue,
        "bound_side": bside,
        "satisfied": satisfied,
        "stabilized": str(report.stabilized).lower(),
        "depth": str(report.search_depth),
        "precision_bits": str(report.precision_bits),
        "elapsed_ms": str(elapsed),
    }


def _run_rows(cfg: ExperimentConfig) -> list[dict[str, str]]:
    # Per-level runs are independent (no shared mutable state; all gmpy2
    # arithmetic goes through per-call context objects), so a sweep fans
    # out across threads.  map() preserves input order, so rows come back
    # sorted by s no matter which level finishes first.
    if len(cfg.s_values) <= 1:
        return [_one_row(cfg, s) for s in cfg.s_values]
    workers = min(len(cfg.s_values), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: _one_row(cfg, s), cfg.s_values))


def _emit_rows(rows: list[dict[str, str]], fmt: str, stream: TextIO) -> None:
    if fmt == "csv":
        writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        json.dump({"columns": CSV_COLUMNS, "rows": rows}, stream, indent=2)
        stream.write("\n")


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_lengths(args: argparse.Namespace) -> int:
    desc = parse_descriptor(args.set)
    digits = _target_digits(args.digits)
    ctx = make_context(desc, args.s_max, 2, digits)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["s", "length", "length_log10", "gap", "gap_log10"])
    for s in range(args.s_max + 1):
        ll = log_length(desc, s, ctx)
        lg = log_gap(desc, s, ctx)
        writer.writerow([
            s,
            decimal_from_log(ll, ctx, digits), _log10(ctx, ll),
            decimal_from_log(lg, ctx, digits), _log10(ctx, lg),
        ])
    return 0


def _cmd_nodes(args: argparse.Namespace) -> int:
    desc = parse_descriptor(args.set)
    digits = _target_digits(args.digits)
    ctx = make_context(desc, args.s + 2, max(2 ** (args.s + 1), 2), digits)
    if args.kind == "endpoints":
        z = endpoint_nodes(desc, args.s, ctx)
    elif args.kind == "uniform":
        count = args.count if args.count is not None else 2**args.s - 1
        z = uniform_nodes(desc, args.s, count, rule=args.rule, ctx=ctx,
                          empty_index=args.empty_index)
    elif args.kind == "deleted":
        base = endpoint_nodes(desc, args.s, ctx)
        z = delete_node(base, args.omit if args.omit is not None else base.n)
    else:  # pragma: no cover - argparse choices guard this
        raise ConfigError(f"unknown node kind {args.kind!r}")
    text = to_text(z)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_lambda(args: argparse.Namespace) -> int:
    desc = parse_descriptor(args.set)
    digits = _target_digits(args.digits)
    with open(args.nodes_file) as fh:
        text = fh.read()
    header = text.splitlines()[0] if text.splitlines() else ""
    n_points = max(sum(1 for ln in text.splitlines()[1:] if ln.strip()), 2)
    fields = dict(part.split("=", 1) for part in header.lstrip("#").split())
    prov = parse_provenance(fields.get("provenance", "custom:0"))
    ctx = make_context(desc, node_level(prov) + 2, n_points, digits)
    z = from_text(text, ctx)
    if z.descriptor != desc:
        raise ConfigError(
            f"node file was generated for {z.descriptor.tag()!r}, not {args.set!r}"
        )
    value = LagrangeEvaluator(z).lambda_at(parse_ratio(args.x))
    sys.stdout.write(decimal_str(value, digits) + "\n")
    return 0


def _cmd_constant(args: argparse.Namespace) -> int:
    desc = parse_descriptor(args.set)
    prov = parse_provenance(args.nodes)
    search = SearchConfig(
        depth=args.depth,
        samples_per_interval=args.samples,
        keep_margin=float(parse_ratio(args.keep_margin)),
        rel_tol=float(parse_ratio(args.rel_tol)),
    )
    if isinstance(prov, EndpointProvenance):
        kind, s, extra = "endpoints", prov.level, {}
    elif isinstance(prov, UniformProvenance):
        kind, s = "uniform", prov.level
        extra = {"count": prov.count, "rule": prov.rule}
    elif isinstance(prov, DeletedProvenance):
        if not isinstance(prov.base, EndpointProvenance):
            raise ConfigError("constant supports deletion from endpoint arrays only")
        kind, s = "deleted", prov.base.level
        extra = {"omit": prov.removed_index}
    else:
        raise ConfigError(f"cannot build nodes from provenance {args.nodes!r}")
    cfg = ExperimentConfig(
        descriptor=desc, kind=kind, s_values=(s,), search=search,
        target_digits=_target_digits(args.digits), bound=args.bound, **extra,
    )
    _emit_rows(_run_rows(cfg), "csv", sys.stdout)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    with open(args.config) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    cfg = ExperimentConfig.from_json(doc)
    rows = _run_rows(cfg)
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            _emit_rows(rows, cfg.out_format, fh)
    else:
        _emit_rows(rows, cfg.out_format, sys.stdout)
    return 0


def _cmd_julia(args: argparse.Namespace) -> int:
    gamma_spec = args.gamma
    kind, _, body = gamma_spec.partition(":")
    if kind == "geom":
        coeff, _, ratio = body.partition(":")
        gamma = GammaSequence.geometric(coeff, ratio)
    elif kind == "table":
        gamma = GammaSequence.explicit(body.split(","))
    else:
        raise ConfigError(f"gamma must be geom:<coeff>:<ratio> or table:<g1,...>, got {gamma_spec!r}")
    digits = _target_digits(args.digits)
    if args.verify:
        ctx = verification_context(gamma, args.s_max, digits)
        levels = build_levels(gamma, args.s_max, ctx)
        report = verify_julia_invariants(levels)
        doc = {
            "gamma": gamma.tag(),
            "s_max": args.s_max,
            "precision_bits": ctx.bits,
            "passed": report.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "margin": c.margin, "detail": c.detail}
                for c in report.checks
            ],
        }
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0 if report.passed else 1
    desc = JuliaDescriptor(gamma)
    ctx = make_context(desc, args.s_max, 2 ** (args.s_max + 1), digits)
    levels = build_levels(gamma, args.s_max, ctx)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["s", "intervals", "r_s", "delta_s", "min_length", "max_length"])
    g = ctx.gmp
    for data in levels:
        lengths = [g.sub(iv.right, iv.left) for iv in data.intervals]
        writer.writerow([
            data.s, len(data.intervals),
            decimal_str(data.r, digits), decimal_str(data.delta, digits),
            decimal_str(min(lengths), digits), decimal_str(max(lengths), digits),
        ])
    return 0


def _bound_json(result: BoundResult, ctx: PrecisionContext, digits: int) -> dict:
    return {
        "name": result.name,
        "side": result.side,
        "value": decimal_from_log(result.log_value, ctx, digits),
        "log10_value": _log10(ctx, result.log_value),
        "params": result.params,
        "passed": result.passed,
        "detail": result.detail,
    }


def _cmd_bounds(args: argparse.Namespace) -> int:
    digits = _target_digits(args.digits)
    name = args.name

    def need(attr: str, flag: str):
        value = getattr(args, attr)
        if value is None:
            raise ConfigError(f"bound {name!r} requires {flag}")
        return value

    if name in ("endpoint-witness", "geometric-growth", "mergelyan-scale"):
        desc = parse_descriptor(need("set", "--set"))
        s = need("s", "--s")
        ctx = make_context(desc, s + 2, 2**min(s, 24), digits)
        if name == "endpoint-witness":
            result = endpoint_witness_bound(desc, s, ctx)
        elif name == "geometric-growth":
            if not isinstance(desc, GeometricBeta):
                raise ConfigError("geometric-growth needs a beta: set")
            result = geometric_growth_bound(desc.beta, s, ctx)
        else:
            log_ms, leading = mergelyan_scale(desc, s, ctx)
            json.dump({
                "name": "mergelyan-scale",
                "s": s,
                "log_Ms": decimal_str(log_ms, digits),
                "leading_term": decimal_str(leading, digits),
                "ratio": decimal_str(ctx.gmp.div(log_ms, leading), digits),
            }, sys.stdout, indent=2)
            sys.stdout.write("\n")
            return 0
    elif name in ("gap-sum", "length-gap-ratio"):
        alpha = parse_ratio(need("alpha", "--alpha"))
        ell1 = parse_ratio(need("ell1", "--ell1"))
        limit = need("limit", "--limit")
        probe = GeometricBeta(Fraction(1, 3))
        ctx = make_context(probe, 8, 64, digits)
        if name == "gap-sum":
            result = gap_sum_check(alpha, ell1, limit, ctx)
        else:
            result = length_gap_ratio_check(alpha, ell1, limit, ctx)
    elif name in ("equilibrium-upper", "deleted-node"):
        tag = need("gamma", "--gamma")
        kind, _, body = tag.partition(":")
        if kind == "geom":
            coeff, _, ratio = body.partition(":")
            gamma = GammaSequence.geometric(coeff, ratio)
        elif kind == "table":
            gamma = GammaSequence.explicit(body.split(","))
        else:
            raise ConfigError(f"gamma must be geom:... or table:..., got {tag!r}")
        ctx = make_context(JuliaDescriptor(gamma), 4, 16, digits)
        if name == "equilibrium-upper":
            result = equilibrium_upper_bound(gamma, ctx)
        else:
            result = deleted_node_bound(gamma, need("n", "--n"), ctx)
    else:  # pragma: no cover - argparse choices guard this
        raise ConfigError(f"unknown bound {name!r}")
    doc = _bound_json(result, ctx, digits)
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if result.passed is False:
        return 1
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        lines = run_suite(args.suite)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    ok = True
    for check in lines:
        sys.stdout.write(check.line() + "\n")
        ok = ok and check.passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorleb",
        description="Lebesgue constants for Lagrange interpolation on Cantor-type sets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lengths", help="interval length/gap table")
    p.add_argument("set", help="set descriptor, e.g. beta:1/3, alpha:2:1/3, julia:geom:1/32:1/2")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(handler=_cmd_lengths)

    p = sub.add_parser("nodes", help="generate a node array")
    p.add_argument("set")
    p.add_argument("--kind", choices=("endpoints", "uniform", "deleted"), required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--count", type=int, default=None, help="uniform node count (default 2^s - 1)")
    p.add_argument("--rule", choices=("left", "right", "alternating"), default="left")
    p.add_argument("--empty-index", type=int, default=None)
    p.add_argument("--omit", type=int, default=None, help="1-based node to delete (default last)")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=_cmd_nodes)

    p = sub.add_parser("lambda", help="evaluate the Lebesgue function at a point")
    p.add_argument("set")
    p.add_argument("--nodes-file", required=True)
    p.add_argument("--x", required=True, help="evaluation point (ratio or decimal)")
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(handler=_cmd_lambda)

    p = sub.add_parser("constant", help="one Lebesgue-constant search, CSV row output")
    p.add_argument("set")
    p.add_argument("--nodes", required=True, help="provenance tag, e.g. endpoints:3 or uniform:4:left:15")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--keep-margin", default="1/2")
    p.add_argument("--rel-tol", default="1e-6")
    p.add_argument("--bound", default=None,
                   choices=("endpoint-witness", "geometric-growth", "equilibrium-upper", "deleted-node"))
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(handler=_cmd_constant)

    p = sub.add_parser("sweep", help="JSON-configured experiment over a level range")
    p.add_argument("config", help="path to the JSON experiment config")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("julia", help="equilibrium-domain level table / invariant checks")
    p.add_argument("gamma", help="geom:<coeff>:<ratio> or table:<g1,g2,...>")
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="run the construction invariant checks")
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(handler=_cmd_julia)

    p = sub.add_parser("bounds", help="evaluate one closed-form bound")
    p.add_argument("name", choices=(
        "endpoint-witness", "geometric-growth", "mergelyan-scale",
        "gap-sum", "length-gap-ratio", "equilibrium-upper", "deleted-node",
    ))
    p.add_argument("--set", default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--ell1", default=None)
    p.add_argument("--limit", type=int, default=None, help="n_max / k_max for the check families")
    p.add_argument("--gamma", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITE_IDS)}")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (LevelBudgetError, ExactUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
