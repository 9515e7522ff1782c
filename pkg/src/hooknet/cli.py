"""Command-line front end: ``hooknet {analyze,simulate,verify,examples}``.

Exit codes: 0 success or pass, 1 statistical-tolerance failure, 2 input
error, 3 structural refusal (non-invertible network).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import report as rpt
from .examples import EXAMPLES, UnknownExample, get_example, manifest
from .laws import analyze
from .seed import SeedError, admissible_degrees, degree_profile, load_seed
from .simulate import MODES, run
from .stats import ReplicateAborted, TolerancePolicy, compare_theory, replicate
from .urn import NonInvertibleNetwork

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_REFUSED = 3

RNG_ENV = "HOOKNET_RNG_SEED"


class InputError(Exception):
    pass


def parse_checkpoints(text: str | None, n: int) -> list[int]:
    """``"0,10,100"`` or ``"geom:K"`` (K+1 roughly geometric steps from 1 to n)."""
    if not text:
        return []
    if text.startswith("geom:"):
        try:
            K = int(text[5:])
        except ValueError:
            raise InputError(f"bad checkpoint spec {text!r}: expected geom:K") from None
        if K < 1:
            raise InputError("geom:K needs K >= 1")
        if n < 1:
            return [0]
        return sorted({round(n ** (i / K)) for i in range(K + 1)})
    try:
        points = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise InputError(f"bad checkpoint list {text!r}: expected comma-separated integers") from None
    bad = [p for p in points if p < 0 or p > n]
    if bad:
        raise InputError(f"checkpoint {bad[0]} outside [0, {n}]")
    return points


def resolve_rng_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(RNG_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{RNG_ENV}={env!r} is not an integer") from None


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _pos_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hooknet",
        description="Exact degree laws and Monte-Carlo verification for random m-ary hooking networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--verbose", action="store_true")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("seed", help="seed graph document (JSON)")
    seeded.add_argument("-m", "--arity", type=_pos_int, required=True, help="hookings each node accepts")

    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--rng-seed", type=int, default=None, help=f"RNG seed (default ${RNG_ENV} or 0)")

    p = sub.add_parser("analyze", parents=[seeded, common], help="exact urn model and degree laws")
    p.add_argument("--method", choices=("auto", "halfvec", "polynomial"), default="auto",
                   help="solver for the covariance equation")

    p = sub.add_parser("simulate", parents=[seeded, rng, common], help="grow one network")
    p.add_argument("-n", "--steps", type=_nonneg_int, required=True)
    p.add_argument("--mode", choices=MODES, default="urn")
    p.add_argument("--checkpoints", help="comma-separated steps, or geom:K")

    p = sub.add_parser("verify", parents=[seeded, rng, common], help="replicate runs against the exact laws")
    p.add_argument("-n", "--steps", type=_pos_int, required=True)
    p.add_argument("-R", "--replicates", type=int, required=True)
    p.add_argument("--mean-tol", type=_nonneg_float, default=TolerancePolicy.mean_tol)
    p.add_argument("--cov-tol", type=_nonneg_float, default=TolerancePolicy.cov_tol)
    p.add_argument("--jobs", type=_pos_int, default=1, help="worker processes for replicates")

    p = sub.add_parser("examples", help="bundled seeds with their published values")
    p.add_argument("name", help="one of: " + ", ".join(EXAMPLES))
    p.add_argument("-o", "--output", help="directory to write <name>.seed.json and <name>.manifest.json")
    p.add_argument("--format", choices=("json", "table"), default="json")
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _profile(args):
    return degree_profile(load_seed(args.seed), args.arity)


def cmd_analyze(args) -> int:
    report = analyze(_profile(args), args.method)
    if args.format == "json":
        doc = rpt.analysis_document(report, verbose=args.verbose)
        rpt.validate_analysis(doc)
        text = rpt.dumps(doc)
    elif args.format == "csv":
        text = rpt.analysis_csv(report)
    else:
        text = rpt.analysis_table(report, verbose=args.verbose)
    _emit(text, args.output)
    if report.degenerate or not report.invertible:
        flags = [f for f, on in (("degenerate", report.degenerate), ("non-invertible", not report.invertible)) if on]
        print(f"hooknet: note: network is {' and '.join(flags)}", file=sys.stderr)
    return EXIT_OK


def cmd_simulate(args) -> int:
    profile = _profile(args)
    seed = resolve_rng_seed(args.rng_seed)
    checkpoints = parse_checkpoints(args.checkpoints, args.steps)
    traj = run(profile, args.steps, seed, args.mode, checkpoints=checkpoints)
    if args.format == "json":
        text = rpt.dumps(rpt.trajectory_document(traj))
    elif args.format == "csv":
        text = rpt.trajectory_csv(traj)
    else:
        text = rpt.trajectory_table(traj, admissible_degrees(profile))
    _emit(text, args.output)
    return EXIT_OK if traj.coupling_held is not False else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.replicates < 2:
        raise InputError("-R/--replicates must be >= 2")
    profile = _profile(args)
    seed = resolve_rng_seed(args.rng_seed)
    report = analyze(profile)
    stats = replicate(profile, args.steps, args.replicates, seed, jobs=args.jobs)
    verdict = compare_theory(stats, report, TolerancePolicy(args.mean_tol, args.cov_tol))
    if args.format == "json":
        text = rpt.dumps(rpt.verdict_document(verdict, stats))
    elif args.format == "csv":
        text = rpt.verdict_csv(verdict)
    else:
        text = rpt.verdict_table(verdict, stats)
    _emit(text, args.output)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def _manifest_table(doc: dict) -> str:
    lines = [f"{doc['example']} (m={doc['m']}): {doc['description']}"]
    for e in doc["entries"]:
        mark = "agrees" if e["agrees"] else "DISAGREES"
        lines.append(f"  [{e['provenance']:<9}] {e['quantity']:<20} {mark:<10} {e['description']}")
        if "note" in e:
            lines.append(f"      note: {e['note']}")
    return "\n".join(lines) + "\n"


def cmd_examples(args) -> int:
    ex = get_example(args.name)
    doc = manifest(ex.name)
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        seed_path = out / f"{ex.name}.seed.json"
        seed_path.write_text(json.dumps(ex.seed_document, indent=2) + "\n", encoding="utf-8")
        man_path = out / f"{ex.name}.manifest.json"
        man_path.write_text(rpt.dumps(doc), encoding="utf-8")
        print(seed_path)
        print(man_path)
    elif args.format == "table":
        sys.stdout.write(_manifest_table(doc))
    else:
        sys.stdout.write(rpt.dumps(doc))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "examples": cmd_examples,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NonInvertibleNetwork as exc:
        print(f"hooknet: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (SeedError, InputError, UnknownExample, OverflowError) as exc:
        print(f"hooknet: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ReplicateAborted as exc:
        print(f"hooknet: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"hooknet: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
