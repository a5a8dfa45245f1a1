"""Command-line interface.

Subcommands: simulate, hitting-times, isolated-dist, validate-count,
validate-containment, uniformity-probe, switching-census, enumerate.

Exit codes: 0 all declared verdicts pass, 1 any verdict fails,
2 configuration or feasibility error.
"""

from __future__ import annotations

import argparse
import sys

from .combinatorics import Params
from .exact import InfeasibleError, count_systems, list_systems
from .experiments import (KINDS, ConfigError, ExperimentConfig,
                          run_experiment)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinerproc",
        description="Constrained edge-process simulation and formula verification")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--ell", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--out", help="write per-trial records here")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--save-config", help="echo the effective config to this file")

    sub = parser.add_subparsers(dest="command", required=True)
    sim = sub.add_parser("simulate", parents=[common],
                         help="run raw process trials")
    sim.add_argument("--stop", choices=("connectivity", "edges", "saturation"))
    sim.add_argument("--m", type=int, help="edge count for --stop edges")
    sim.add_argument("--include-edges", action="store_true", default=None)

    sub.add_parser("hitting-times", parents=[common],
                   help="tau_o vs tau_c and the threshold window")

    iso = sub.add_parser("isolated-dist", parents=[common],
                         help="isolated-vertex law at stage (n/r)(log n + c)")
    iso.add_argument("--c", type=float)

    vc = sub.add_parser("validate-count", parents=[common],
                        help="Monte Carlo system-count probability vs formula")
    vc.add_argument("--m", type=int)
    vc.add_argument("--m-grid", dest="m_grid",
                    help="comma-separated stage list")
    vc.add_argument("--samples", type=int)

    cont = sub.add_parser("validate-containment", parents=[common],
                          help="subsystem containment frequency vs formula")
    cont.add_argument("--m", type=int)
    cont.add_argument("--k", type=int)
    cont.add_argument("--k-edges", dest="k_edges",
                      help="explicit edges 'v v v; v v v'")
    cont.add_argument("--samples", type=int)

    up = sub.add_parser("uniformity-probe", parents=[common],
                        help="chi-square of the stage distribution (report only)")
    up.add_argument("--m", type=int)

    sc = sub.add_parser("switching-census", parents=[common],
                        help="class coverage and switching counts")
    sc.add_argument("--m", type=int)
    sc.add_argument("--samples", type=int)
    sc.add_argument("--instances", type=int)

    enum = sub.add_parser("enumerate", parents=[common],
                          help="exact count of m-edge systems")
    enum.add_argument("--m", type=int, required=True)
    enum.add_argument("--list-out", help="also write every system, one per line")
    return parser


CONFIG_KEYS = ("n", "r", "ell", "trials", "seed", "threads", "c", "m",
               "m_grid", "k", "k_edges", "samples", "instances", "stop",
               "include_edges")


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.config:
        with open(args.config) as fh:
            cfg = ExperimentConfig.from_file(fh)
        cfg.kind = args.command
    else:
        cfg = ExperimentConfig(kind=args.command)
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is None:
            continue
        if key == "m_grid" and isinstance(value, str):
            value = tuple(int(v) for v in value.split(","))
        setattr(cfg, key, value)
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.command == "enumerate":
            return _enumerate(cfg, args)
        report = run_experiment(cfg)
    except (ConfigError, InfeasibleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.save_config:
        with open(args.save_config, "w") as fh:
            cfg.to_file(fh)
    if args.out:
        with open(args.out, "w") as fh:
            if args.format == "csv":
                report.write_csv(fh)
            else:
                report.write_jsonl(fh)
    for line in report.summary_lines():
        print(line)
    return 0 if report.passed else 1


def _enumerate(cfg: ExperimentConfig, args: argparse.Namespace) -> int:
    params = Params(cfg.n, cfg.r, cfg.ell)
    count = count_systems(params, cfg.m)
    print(f"systems(n={cfg.n}, r={cfg.r}, ell={cfg.ell}, m={cfg.m}) = {count}")
    if args.list_out:
        systems = list_systems(params, cfg.m)
        with open(args.list_out, "w") as fh:
            for system in systems:
                fh.write("; ".join(" ".join(str(v) for v in e) for e in system) + "\n")
        print(f"wrote {len(systems)} systems to {args.list_out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
