"""rqmcheck: batch runner for the verification suites.

Usage::

    rqmcheck run [--suite NAME]... [--mass X]... [--spin 2S]...
                 [--variant V]... [--seed N]... [--jobs N]
                 [--config PATH] [--out PATH] [--json] [--csv PATH]
    rqmcheck list [--json]

Exit status: 0 all checks behaved as required, 1 at least one check
failed, 2 usage or configuration error.  A default config file can be
pointed at with the ``RQMCHECK_DEFAULT_CONFIG`` environment variable;
command-line flags override config values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .spacetime import KernelVariant
from .spin import MAX_TWO_S
from .suites import SUITES, RunConfig, run_suites

USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rqmcheck",
        description="run numerical verification suites for the Euclidean "
                    "realization of positive-mass representations")
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="execute verification suites")
    runp.add_argument("--suite", "--suites", action="append", default=None,
                      help="suite name (repeatable or comma-separated); "
                           "'all' runs everything")
    runp.add_argument("--mass", "--masses", action="append", default=None)
    runp.add_argument("--spin", "--spins", action="append", default=None,
                      metavar="TWO_S",
                      help="doubled spin (repeatable or comma-separated)")
    runp.add_argument("--variant", "--variants", action="append",
                      default=None)
    runp.add_argument("--seed", "--seeds", action="append", default=None)
    runp.add_argument("--jobs", type=int, default=None)
    runp.add_argument("--config", default=None,
                      help="JSON config file (see README for the schema)")
    runp.add_argument("--out", default=None, help="write the JSON report")
    runp.add_argument("--json", action="store_true",
                      help="print the JSON report to stdout")
    runp.add_argument("--csv", default=None,
                      help="write a CSV summary (check,param-set,measured,"
                           "tolerance,pass)")

    listp = sub.add_parser("list", help="list available suites")
    listp.add_argument("--json", action="store_true")
    return parser


def load_config(path: str | None) -> dict:
    if path is None:
        path = os.environ.get("RQMCHECK_DEFAULT_CONFIG")
    if not path:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config root must be a JSON object")
    return data


def _split_flags(values):
    if values is None:
        return None
    out = []
    for v in values:
        out.extend(part for part in str(v).split(",") if part)
    return out


def make_config(args) -> RunConfig:
    data = load_config(args.config)
    flag_suites = _split_flags(args.suite)
    if flag_suites:
        suites = flag_suites
    elif "suites" in data:
        suites = data["suites"]
    else:
        suites = ["all"]
    masses = [float(v) for v in _split_flags(args.mass) or []] \
        or data.get("masses") or [1.0]
    flag_spins = _split_flags(args.spin)
    spins = ([int(v) for v in flag_spins] if flag_spins is not None
             else data.get("spins", [0, 1, 2]))
    variant_names = _split_flags(args.variant) or data.get("variants") or [
        v.value for v in KernelVariant]
    flag_seeds = _split_flags(args.seed)
    seeds = ([int(v) for v in flag_seeds] if flag_seeds is not None
             else data.get("seeds", [0]))
    if not suites:
        raise ValueError("at least one suite is required")
    for name in suites:
        if name != "all" and name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
    for m in masses:
        if m <= 0:
            raise ValueError("masses must be positive")
    for ts in spins:
        if ts < 0 or ts > MAX_TWO_S:
            raise ValueError(f"spins must be doubled integers in "
                             f"[0, {MAX_TWO_S}]")
    variants = tuple(KernelVariant.from_string(v) for v in variant_names)
    kwargs = {}
    for key in ("gram_size", "gram_nodes", "hermiticity_pairs",
                "mc_points_log2", "mc_scrambles", "irrep_elements"):
        if key in data:
            kwargs[key] = int(data[key])
    return RunConfig(
        suites=tuple(suites),
        masses=tuple(float(m) for m in masses),
        two_spins=tuple(int(t) for t in spins),
        variants=variants,
        seeds=tuple(int(s) for s in seeds),
        tolerances=dict(data.get("tolerances", {})),
        jobs=int(args.jobs if args.jobs is not None
                 else data.get("jobs", 1)),
        **kwargs,
    )


def config_echo(cfg: RunConfig) -> dict:
    return {
        "suites": list(cfg.suites),
        "masses": list(cfg.masses),
        "spins": list(cfg.two_spins),
        "variants": [v.value for v in cfg.variants],
        "seeds": list(cfg.seeds),
        "tolerances": cfg.tolerances,
        "jobs": cfg.jobs,
        "gram_size": cfg.gram_size,
        "gram_nodes": cfg.gram_nodes,
        "hermiticity_pairs": cfg.hermiticity_pairs,
        "mc_points_log2": cfg.mc_points_log2,
        "mc_scrambles": cfg.mc_scrambles,
        "irrep_elements": cfg.irrep_elements,
    }


def command_run(args) -> int:
    try:
        cfg = make_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rqmcheck: {exc}", file=sys.stderr)
        return USAGE_ERROR
    started = time.time()
    try:
        reports = run_suites(cfg)
    except ValueError as exc:
        print(f"rqmcheck: {exc}", file=sys.stderr)
        return USAGE_ERROR
    wall = time.time() - started
    overall = all(r.passed for r in reports)
    doc = {
        "tool": "rqmcheck",
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "config": config_echo(cfg),
        "checks": [r.as_dict() for r in reports],
        "wall_time_s": wall,
        "overall_pass": overall,
    }
    for r in reports:
        flag = "PASS" if r.passed else "FAIL"
        control = " [negative control]" if r.negative_control else ""
        params = ", ".join(f"{k}={v}" for k, v in sorted(r.inputs.items(),
                                                         key=str))
        print(f"{flag}  {r.name}{control} ({params}): "
              f"measured {r.measured:.3e} vs tolerance {r.tolerance:.3e}")
    print(f"{'OVERALL PASS' if overall else 'OVERALL FAIL'}: "
          f"{sum(r.passed for r in reports)}/{len(reports)} checks, "
          f"{wall:.1f}s")
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("check,param-set,measured,tolerance,pass\n")
            for r in reports:
                params = ";".join(f"{k}={v}"
                                  for k, v in sorted(r.inputs.items(),
                                                     key=str))
                fh.write(f"{r.name},\"{params}\",{r.measured!r},"
                         f"{r.tolerance!r},{int(r.passed)}\n")
    return 0 if overall else 1


def command_list(args) -> int:
    if args.json:
        doc = {name: desc for name, (_, desc) in SUITES.items()}
        print(json.dumps(doc, indent=2, sort_keys=True))
        return 0
    width = max(len(n) for n in SUITES)
    for name, (_, desc) in SUITES.items():
        print(f"{name.ljust(width)}  {desc}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    if args.command == "run":
        return command_run(args)
    return command_list(args)


if __name__ == "__main__":
    sys.exit(main())
