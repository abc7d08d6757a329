"""Command-line interface.

Subcommands:

* ``run <config>``: run one configured simulation, write timeseries.csv
  and report.txt under the config's output_path.
* ``scenario-a --variant sufficient|insufficient --seed S --out DIR``
* ``scenario-b --rings LO..HI --seed S --out DIR``
* ``predict <config>``: print the convergence verdict, no simulation.

The STEEMSIM_OUT_DIR environment variable overrides any output
directory. Exit codes: 0 success, 1 configuration error, 2 runtime or
I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import predict
from .config import parse_config
from .core import ConfigError
from .scenarios import RunReport, run_from_config, run_scenario_a, run_scenario_b

OUT_DIR_ENV = "STEEMSIM_OUT_DIR"


def _load_config(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _parse_ring_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        k = int(text)
        return range(k, k + 1)
    except ValueError as exc:
        raise ConfigError(f"bad ring range {text!r}, expected LO..HI") from exc


def _print_summary(report: RunReport, out_dir: str) -> None:
    print(f"prediction: {report.prediction.verdict.value} ({report.prediction.reason.value})")
    print(f"final t_ideal_rank: {report.final_t_ideal_rank}")
    print(f"final kendall_tau: {report.final_kendall_tau:.6f}")
    print(f"final spearman_rho: {report.final_spearman_rho:.6f}")
    if report.selfish_gain is not None:
        print(f"selfish_gain: {report.selfish_gain}")
    print(f"outputs written to {out_dir}")


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    overrides = {}
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        overrides["output_path"] = out_dir
    if args.sample_every is not None:
        overrides["sample_every"] = args.sample_every
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    report = run_from_config(config)
    _print_summary(report, config.output_path)
    return 0


def _cmd_scenario_a(args: argparse.Namespace) -> int:
    out_dir = os.environ.get(OUT_DIR_ENV) or args.out
    report = run_scenario_a(args.variant, args.seed, out_dir, args.sample_every)
    _print_summary(report, out_dir)
    return 0


def _cmd_scenario_b(args: argparse.Namespace) -> int:
    out_dir = os.environ.get(OUT_DIR_ENV) or args.out
    rows = run_scenario_b(_parse_ring_range(args.rings), args.seed, out_dir)
    for row in rows:
        print(f"ring {row.ring_size}: gain {row.selfish_gain}, t_ideal_rank {row.t_ideal_rank}")
    print(f"sweep written to {os.path.join(out_dir, 'sweep.csv')}")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    prediction = predict(config.params, config.steem_powers())
    print(f"verdict: {prediction.verdict.value}")
    print(f"reason: {prediction.reason.value}")
    print(f"threshold: {prediction.threshold}")
    print(f"required_rounds: {prediction.required_rounds}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steemsim",
        description="Deterministic simulator of Steemit-style post voting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a simulation from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--sample-every", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_a = sub.add_parser("scenario-a", help="honest-players scenario")
    p_a.add_argument("--variant", choices=("sufficient", "insufficient"), required=True)
    p_a.add_argument("--seed", type=int, required=True)
    p_a.add_argument("--out", default="out")
    p_a.add_argument("--sample-every", type=int, default=None)
    p_a.set_defaults(func=_cmd_scenario_a)

    p_b = sub.add_parser("scenario-b", help="voting-ring sweep")
    p_b.add_argument("--rings", default="1..100", help="ring size range LO..HI")
    p_b.add_argument("--seed", type=int, required=True)
    p_b.add_argument("--out", default="out")
    p_b.set_defaults(func=_cmd_scenario_b)

    p_p = sub.add_parser("predict", help="print the convergence verdict for a config")
    p_p.add_argument("config")
    p_p.set_defaults(func=_cmd_predict)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime / I/O
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
