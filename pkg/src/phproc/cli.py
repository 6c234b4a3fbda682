"""Command-line front end.

Subcommands: simulate, moments, estimate, bootstrap, fit, validate.  Output is
CSV (default) or JSON, written to stdout or, with --output, to a file via an
atomic write-then-rename so no partial file survives an error.  All numbers
are emitted with 12 significant digits, locale-independent.  Exit codes:
0 success, 1 domain/validation error (one-line diagnostic on stderr), 2 usage
error (argparse usage text).

The environment variable PHPROC_OUTPUT_DIR, when set, resolves relative
--output paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional

from .analytics import crossing_prob, theoretical_moments
from .exceptions import PhprocError
from .fitting import fit, load_series
from .inference import estimate, summarize
from .montecarlo import StudyConfig, empirical_check, simulation_study
from .processes import (
    AmParams,
    KunduParams,
    ProcessKind,
    ProcessSpec,
    generate_path,
    pareto_baseline,
    transform_marginal,
)

FMT = "%.12g"


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, float):
        return FMT % x
    return str(x)


def _csv_lines(rows: list[list]) -> str:
    return "\n".join(",".join(_fmt(c) for c in row) for row in rows) + "\n"


def _write_output(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    out_dir = os.environ.get("PHPROC_OUTPUT_DIR")
    if out_dir and not os.path.isabs(output):
        output = os.path.join(out_dir, output)
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".phproc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _add_kind(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in ProcessKind],
                   help="process kind")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)


def _add_io(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _shape_from_args(parser: argparse.ArgumentParser, args) -> tuple[ProcessKind, object, Optional[float]]:
    kind = ProcessKind(args.kind)
    if kind.is_kundu:
        if args.beta is None:
            parser.error(f"--beta is required for {kind.value}")
        if args.delta is not None:
            parser.error(f"--delta is not a parameter of {kind.value}")
        shape = KunduParams(args.alpha, args.beta)
    else:
        if args.delta is None:
            parser.error(f"--delta is required for {kind.value}")
        if args.beta is not None:
            parser.error(f"--beta is not a parameter of {kind.value}")
        shape = AmParams(args.alpha, args.delta)
    if kind.is_pareto:
        if args.sigma is None:
            parser.error(f"--sigma is required for {kind.value}")
    elif args.sigma is not None:
        parser.error(f"--sigma is not a parameter of {kind.value}")
    return kind, shape, args.sigma


def _parse_baseline(parser: argparse.ArgumentParser, text: str):
    name, _, arg = text.partition(":")
    if name != "pareto" or not arg:
        parser.error("--baseline must look like pareto:<sigma>")
    try:
        sigma = float(arg)
    except ValueError:
        parser.error(f"bad baseline scale {arg!r}")
    return pareto_baseline(sigma)


def _cmd_simulate(parser, args) -> str:
    kind, shape, sigma = _shape_from_args(parser, args)
    spec = ProcessSpec(kind=kind, shape=shape, m=args.length, seed=args.seed, sigma=sigma)
    path = generate_path(spec)
    if args.transform is not None:
        if args.baseline is None:
            parser.error("--transform requires --baseline")
        baseline = _parse_baseline(parser, args.baseline)
        path = transform_marginal(path, baseline, direction=args.transform)
    return path.to_json() + "\n" if args.format == "json" else path.to_csv()


def _cmd_moments(parser, args) -> str:
    kind, shape, sigma = _shape_from_args(parser, args)
    rep = theoretical_moments(kind, shape, sigma)
    cross = crossing_prob(kind, shape)
    rows = [["quantity", "value", "applicable", "note"]]
    for name in ("mean", "variance", "cross_moment", "lag1_corr"):
        ok = rep.applicable.get(name, False)
        val = getattr(rep, name)
        rows.append([name, val if ok else None, ok, rep.notes.get(name, "")])
    rows.append(["crossing_prob", cross, True, "P(next < current)"])
    if rep.breakdown is not None:
        for term in "ABCD":
            rows.append([f"cross_term_{term}", getattr(rep.breakdown, term), True, ""])
    if args.format == "json":
        doc = {r[0]: {"value": r[1], "applicable": r[2], "note": r[3]} for r in rows[1:]}
        return json.dumps(doc, indent=2) + "\n"
    return _csv_lines(rows)


def _cmd_estimate(parser, args) -> str:
    kind = ProcessKind(args.kind)
    series = load_series(args.input, column=args.column)
    stats = summarize(series.values)
    est = estimate(kind, stats)
    d = est.to_dict()
    if args.format == "json":
        d["stats"] = {"mean": stats.mean, "p_down": stats.p_down, "p_up": stats.p_up,
                      "sample_min": stats.sample_min, "pairs": stats.pairs}
        return json.dumps(d, indent=2) + "\n"
    rows = [["parameter", "estimate"]]
    for name in ("alpha", "beta", "delta", "sigma"):
        if name in d:
            rows.append([name, d[name]])
    rows.append(["branch", d["branch"]])
    rows.append(["valid", d["valid"]])
    rows.append(["diagnostics", "; ".join(d["diagnostics"])])
    return _csv_lines(rows)


def _cmd_bootstrap(parser, args) -> str:
    kind, shape, sigma = _shape_from_args(parser, args)
    try:
        sizes = tuple(int(s) for s in args.sizes.split(","))
    except ValueError:
        parser.error(f"bad --sizes list {args.sizes!r}")
    config = StudyConfig(kind=kind, shape=shape, sizes=sizes,
                         replicates=args.replicates, master_seed=args.seed, sigma=sigma)
    report = simulation_study(config)
    return report.to_json() + "\n" if args.format == "json" else report.to_csv()


def _cmd_fit(parser, args) -> str:
    kind = ProcessKind(args.kind)
    series = load_series(args.input, column=args.column)
    report = fit(series, kind)
    return report.to_json() + "\n" if args.format == "json" else report.to_csv()


def _cmd_validate(parser, args) -> str:
    kind, shape, sigma = _shape_from_args(parser, args)
    report = empirical_check(kind, shape, m=args.length, seed=args.seed, sigma=sigma)
    return report.to_json() + "\n" if args.format == "json" else report.to_csv()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phproc",
        description="Simulate, analyze and fit stationary minification processes "
                    "with bounded or heavy-tailed marginals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a sample path")
    _add_kind(p)
    _add_params(p)
    p.add_argument("--length", type=int, required=True, help="highest index m (m+1 values)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--baseline", default=None, help="marginal baseline, e.g. pareto:1.5")
    p.add_argument("--transform", choices=["ph", "prh"], default=None,
                   help="push the path through the baseline quantile")
    _add_io(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("moments", help="closed-form moments and crossing probability")
    _add_kind(p)
    _add_params(p)
    _add_io(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("estimate", help="method-of-moments estimates from a CSV path")
    _add_kind(p)
    p.add_argument("--input", required=True)
    p.add_argument("--column", default=None,
                   help="column name or 0-based index (default: first column)")
    _add_io(p)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("bootstrap", help="sampling-distribution study of the estimators")
    _add_kind(p)
    _add_params(p)
    p.add_argument("--sizes", required=True, help="comma-separated path sizes, ascending")
    p.add_argument("--replicates", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_io(p)
    p.set_defaults(func=_cmd_bootstrap)

    p = sub.add_parser("fit", help="fit a process kind to observed data")
    _add_kind(p)
    p.add_argument("--input", required=True)
    p.add_argument("--column", default=None)
    _add_io(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("validate", help="closed-form vs Monte-Carlo validation report")
    _add_kind(p)
    _add_params(p)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_io(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.__dict__.get("column") is not None:
        # accept both names and numeric indices
        try:
            args.column = int(args.column)
        except ValueError:
            pass
    try:
        text = args.func(parser, args)
        _write_output(text, args.output)
    except PhprocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
