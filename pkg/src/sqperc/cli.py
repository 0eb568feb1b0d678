"""Command-line interface: ``sqperc <subcommand> [options]``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import montecarlo, series, walks
from .errors import PercolationError

COLUMNS = {
    "walks": ["n", "s_plus", "s_times", "s_n", "walk_bound", "ratio_to_lambda_plus"],
    "cycles": ["k", "r_k", "bound_4k1_s2k1", "r_odd_2k_minus_1"],
    "series": ["k", "partial_sum", "tail_bound", "lower", "upper"],
    "simulate": ["c", "p_fin", "p_fin_se", "p_inf", "p_inf_se", "crossing", "crossing_se"],
    "threshold": ["c_lo", "c_hi", "iterations"],
    "validate": ["check", "status", "detail"],
}
COLUMNS["sweep"] = COLUMNS["simulate"]

# execution knobs that must not change the output
_NOT_ECHOED = {"workers", "output", "format", "func"}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return f"{value:.12g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return _fmt(value)
    return value


def _csv_field(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def render(fmt, command, config, columns, rows, extra=None) -> str:
    if fmt == "json":
        doc = {"command": command, "config": {k: _json_value(v) for k, v in config.items()},
               "columns": columns, "rows": [[_json_value(v) for v in r] for r in rows]}
        if extra:
            doc.update(extra)
        return json.dumps(doc) + "\n"
    lines = [f"# sqperc {command}"]
    lines += [f"# {k}={_fmt(v)}" for k, v in config.items()]
    lines.append(",".join(columns))
    lines += [",".join(_csv_field(_fmt(v)) for v in r) for r in rows]
    if extra:
        for name, block in extra.items():
            lines.append(f"# {name}")
            lines.append(",".join(block["columns"]))
            lines += [",".join(_csv_field(_fmt(v)) for v in r) for r in block["rows"]]
    return "\n".join(lines) + "\n"


def _se(est):
    return [est.value, est.std_error]


def _sim_row(row):
    return [row.concentration, *_se(row.p_fin), *_se(row.p_inf), *_se(row.crossing)]


def cmd_walks(args):
    if args.max_n < 1:
        raise ValueError("--max-n must be >= 1")
    rows = []
    for n in range(1, args.max_n + 1):
        sp, sx, s = walks.walk_counts(n)
        ratio = s / walks.walk_counts(n - 1)[2] / walks.LAMBDA_PLUS if n > 1 else math.nan
        rows.append([n, sp, sx, s, walks.walk_count_bound(n), ratio])
    return rows, None


def cmd_cycles(args):
    if not 2 <= args.max_k <= args.cap:
        raise ValueError(f"--max-k must lie in [2, --cap={args.cap}]")
    rows, listing = [], []
    for k in range(2, args.max_k + 1):
        even = walks.enumerate_cycles(k, args.cap)
        odd = walks.enumerate_cycles_of_length(2 * k - 1, args.cap)
        rows.append([k, even.r_k, walks.cycle_count_bound(k), odd.r_k])
        for cen in (odd, even):
            for i, cyc in enumerate(cen.cycles):
                listing.append([cen.length, i, " ".join(f"{x}:{y}" for x, y in cyc.vertices)])
    extra = None
    if args.list:
        extra = {"cycles": {"columns": ["length", "index", "vertices"], "rows": listing}}
    return rows, extra


def cmd_series(args):
    if not 2 <= args.max_k <= args.cap:
        raise ValueError(f"--max-k must lie in [2, --cap={args.cap}]")
    rows = []
    for k in range(2, args.max_k + 1):
        br = series.finite_cluster_probability_bracket(args.c, k, args.cap)
        rows.append([k, br.partial_sum, br.tail, br.lower, br.upper])
    return rows, None


def cmd_simulate(args):
    row = montecarlo.simulate(args.c, args.size, args.samples, args.seed, workers=args.workers)
    return [_sim_row(row)], None


def cmd_sweep(args):
    if args.steps < 1:
        raise ValueError("--steps must be >= 1")
    cs = [args.c_min + i * (args.c_max - args.c_min) / args.steps for i in range(args.steps + 1)]
    rows = montecarlo.sweep(cs, args.size, args.samples, args.seed, workers=args.workers)
    return [_sim_row(r) for r in rows], None


def cmd_threshold(args):
    iv = montecarlo.estimate_threshold(args.size, args.samples, args.tol, args.seed,
                                       workers=args.workers)
    return [[iv.c_lo, iv.c_hi, iv.iterations]], None


def cmd_validate(args):
    from .validate import run_all
    results = run_all(quick=not args.full)
    rows = [[r.name, "pass" if r.passed else "FAIL", r.detail] for r in results]
    return rows, None


def _default_seed() -> int:
    raw = os.environ.get("PERC_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: PERC_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="concurrent workers (output is unaffected)")

    mc = argparse.ArgumentParser(add_help=False)
    mc.add_argument("--size", type=int, default=32, help="window half-width L_h")
    mc.add_argument("--samples", type=int, default=10_000)
    mc.add_argument("--seed", type=int, default=None, help="default: $PERC_SEED or 0")

    p = argparse.ArgumentParser(prog="sqperc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("walks", parents=[common], help="transfer-matrix walk counts")
    s.add_argument("--max-n", type=int, default=20)
    s.set_defaults(func=cmd_walks)

    s = sub.add_parser("cycles", parents=[common], help="census of enclosing boundary cycles")
    s.add_argument("--max-k", type=int, default=4)
    s.add_argument("--cap", type=int, default=walks.DEFAULT_CAP)
    s.add_argument("--list", action="store_true", help="also list every cycle")
    s.set_defaults(func=cmd_cycles)

    s = sub.add_parser("series", parents=[common], help="truncated cluster decomposition with tail bound")
    s.add_argument("--c", type=float, required=True)
    s.add_argument("--max-k", type=int, default=4)
    s.add_argument("--cap", type=int, default=walks.DEFAULT_CAP)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("simulate", parents=[common, mc], help="origin statistics and crossing at one c")
    s.add_argument("--c", type=float, required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("sweep", parents=[common, mc], help="simulate over a grid of c")
    s.add_argument("--c-min", type=float, default=0.0)
    s.add_argument("--c-max", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=20)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("threshold", parents=[common, mc], help="bisect for crossing probability 1/2")
    s.add_argument("--tol", type=float, default=0.01)
    s.set_defaults(func=cmd_threshold)

    s = sub.add_parser("validate", parents=[common], help="run the cross-validation suite")
    s.add_argument("--full", action="store_true", help="use acceptance-size samples (minutes)")
    s.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed") and args.seed is None:
        args.seed = _default_seed()
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        rows, extra = args.func(args)
    except (PercolationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    config = {k: v for k, v in vars(args).items() if k not in _NOT_ECHOED and k != "command"}
    text = render(args.format, args.command, config, COLUMNS[args.command], rows, extra)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "validate" and any(r[1] != "pass" for r in rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
