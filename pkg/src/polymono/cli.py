"""Command line front end.

Subcommands: gram, decompose, check-monotone, tightness, reach.
Exit codes: 0 ok, 2 usage/parse error, 3 validation failure, 4 solver
iteration cap reached (output is still written).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import warnings
from pathlib import Path

from . import analysis, decomposition, reach
from .decomposition import Interval
from .gram import GramParam
from .polynomial import Polynomial, PolynomialSyntaxError, parse
from .psd_split import SolverWarning, certify_monotone

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_SOLVER_CAP = 0, 2, 3, 4

TIGHTNESS_METHODS = decomposition.METHODS + ("jacobian", "tight") + tuple(
    "ref:" + name for name in analysis.REFERENCE_COEFFS)


class UsageError(Exception):
    pass


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"value must be finite: {text!r}")
    return v


def _dump_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, allow_nan=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_poly(args) -> Polynomial:
    if (args.poly is None) == (args.poly_file is None):
        raise UsageError("give exactly one of --poly or --poly-file")
    if args.poly is not None:
        return parse(args.poly)
    try:
        with open(args.poly_file) as fh:
            return Polynomial.from_json(json.load(fh))
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read polynomial from {args.poly_file}: {exc}") from exc


def cmd_gram(args) -> int:
    p = _load_poly(args)
    gp = GramParam.of(p.derivative())
    out = {"poly": p.to_json(), "derivative": gp.source.to_json(), "m": gp.m}
    out.update(gp.to_json())
    _dump_json(out, args.json_out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    p = _load_poly(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SolverWarning)
        df = decomposition.decompose(p, args.objective)
    report = decomposition.validate(df)
    out = df.to_json()
    out["validation"] = report.to_json()
    _dump_json(out, args.json_out)
    if not report.ok:
        return EXIT_VALIDATION
    if any(issubclass(w.category, SolverWarning) for w in caught):
        return EXIT_SOLVER_CAP
    return EXIT_OK


def cmd_check_monotone(args) -> int:
    p = _load_poly(args)
    gp = GramParam.of(p.derivative())
    dirs = ("increasing", "decreasing") if args.direction == "both" else (args.direction,)
    out = {"poly": p.to_json()}
    for d in dirs:
        cert = certify_monotone(gp, d)
        out[d] = None if cert is None else cert.to_json()
    _dump_json(out, args.json_out)
    return EXIT_OK


def _evaluator(p: Polynomial, method: str, domain: Interval):
    if method == "jacobian":
        return decomposition.jacobian_decomposition(p, domain)
    if method == "tight":
        return analysis.TightEnvelope(p)
    if method.startswith("ref:"):
        return analysis.reference_decomposition(method[4:])
    return decomposition.decompose(p, method)


def _csv_path(base: str, method: str, many: bool) -> Path:
    path = Path(base)
    if not many:
        return path
    tag = method.replace(":", "-")
    return path.with_name(f"{path.stem}_{tag}{path.suffix or '.csv'}")


def cmd_tightness(args) -> int:
    p = _load_poly(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in TIGHTNESS_METHODS]
    if bad or not methods:
        raise UsageError(f"unknown method(s) {bad}; choose from {', '.join(TIGHTNESS_METHODS)}")
    z_lo, z_hi = args.range
    a, b = args.offsets
    domain = Interval(*args.domain) if args.domain else Interval(z_lo - b, z_hi + a)
    profiles = {}
    for m in methods:
        g = _evaluator(p, m, domain)
        profiles[m] = analysis.width_profile(g, z_lo, z_hi, a, b, args.grid)
        if args.csv_out:
            with open(_csv_path(args.csv_out, m, len(methods) > 1), "w", newline="") as fh:
                profiles[m].to_csv(fh)
    out = {
        "poly": p.to_json(),
        "range": [z_lo, z_hi],
        "offsets": [a, b],
        "grid": args.grid,
        "methods": {m: {"mean_width": float(pr.width.mean()), "max_width": float(pr.width.max())}
                    for m, pr in profiles.items()},
        "dominance": [
            {"inner": ma, "outer": mb, **analysis.compare(profiles[ma], profiles[mb]).to_json()}
            for ma in methods for mb in methods if ma != mb
        ],
    }
    _dump_json(out, args.json_out)
    return EXIT_OK


def cmd_reach(args) -> int:
    if args.spec_file:
        if args.poly is not None or args.poly_file is not None:
            raise UsageError("--spec-file already contains the dynamics; drop --poly/--poly-file")
        try:
            with open(args.spec_file) as fh:
                spec = reach.ReachSpec.from_json(json.load(fh))
        except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read reach spec from {args.spec_file}: {exc}") from exc
    else:
        spec = reach.ReachSpec(_load_poly(args), Interval(*args.u), Interval(*args.x0), args.steps)
    df = decomposition.decompose(spec.f, args.objective)
    report = decomposition.validate(df)
    tube = reach.propagate_embedding(df, spec)
    if args.csv_out:
        with open(args.csv_out, "w", newline="") as fh:
            tube.to_csv(fh)
    else:
        sys.stdout.write(tube.to_csv())
    out = {"spec": spec.to_json(), "decomposition": df.to_json(), "validation": report.to_json(),
           "truncated": tube.truncated}
    if args.samples > 0:
        traj = reach.sample_trajectories(spec, args.samples, args.seed)
        if args.traj_csv:
            with open(args.traj_csv, "w", newline="") as fh:
                fh.write("sample,k,x\n")
                for i, row in enumerate(traj):
                    for k, x in enumerate(row):
                        fh.write(f"{i},{k},{x:.12g}\n")
        if not tube.truncated:
            out["containment"] = reach.containment_report(tube, traj).to_json()
    if args.json_out:
        _dump_json(out, args.json_out)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--poly", help='polynomial text, e.g. "x^2 + 1"')
    common.add_argument("--poly-file", help='JSON file {"coeffs": [c0, c1, ...]}')
    common.add_argument("--json-out", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="polymono", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gram", parents=[common], help="Gram parameterization of p'")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("decompose", parents=[common], help="global polynomial decomposition")
    p.add_argument("--objective", default="frobenius", choices=decomposition.METHODS)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-monotone", parents=[common], help="search for a monotonicity certificate")
    p.add_argument("--direction", default="both", choices=("increasing", "decreasing", "both"))
    p.set_defaults(func=cmd_check_monotone)

    p = sub.add_parser("tightness", parents=[common], help="width profiles and dominance")
    p.add_argument("--range", nargs=2, type=_finite, default=(-5.0, 5.0), metavar=("Z_LO", "Z_HI"))
    p.add_argument("--offsets", nargs=2, type=_finite, default=analysis.FIG_OFFSETS_EXAMPLE1, metavar=("A", "B"))
    p.add_argument("--grid", type=int, default=analysis.FIG_GRID)
    p.add_argument("--methods", default="frobenius,jacobian,tight",
                   help="comma separated: " + ", ".join(TIGHTNESS_METHODS))
    p.add_argument("--domain", nargs=2, type=_finite, metavar=("LO", "HI"),
                   help="domain of the jacobian bound (default: range widened by the offsets)")
    p.add_argument("--csv-out", help="CSV path; with several methods, _<method> is appended to the stem")
    p.set_defaults(func=cmd_tightness)

    p = sub.add_parser("reach", parents=[common], help="reachable-set tube and Monte Carlo check")
    p.add_argument("--spec-file", help='JSON {"f": {"coeffs": ...}, "u": [lo, hi], "x0": [lo, hi], "steps": N}')
    p.add_argument("--u", nargs=2, type=_finite, default=(-0.1, 0.1), metavar=("LO", "HI"))
    p.add_argument("--x0", nargs=2, type=_finite, default=(0.0, 0.0), metavar=("LO", "HI"))
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--objective", default="frobenius", choices=decomposition.METHODS)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv-out", help="tube CSV path (default stdout)")
    p.add_argument("--traj-csv", help="write sampled trajectories as sample,k,x")
    p.set_defaults(func=cmd_reach)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("POLYMONO_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PolynomialSyntaxError, ValueError) as exc:
        print(f"polymono {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
