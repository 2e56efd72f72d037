"""Command-line entry point.

Subcommands: run (one trial, records to stdout), sweep-power / sweep-sigma /
sweep-mu (Monte Carlo sweeps with CSV output), oracle-check (solvers vs the
brute-force grid oracle). Exit codes: 0 success, 2 configuration/usage error,
3 output I/O error. Every invocation is byte-deterministic given --seed.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .harness import (DATA_HEADER, DEFAULT_METHODS, PHASE_STRATEGIES,
                      SweepSpec, run_sweep, run_trial)
from .paopt import (Method, OracleObjective, SolverOptions, max_min_sr, max_sr,
                    max_sr_rc, oracle_grid)
from .phases import greedy_phase, identity_phase, random_phase
from .rates import link_gains
from .scenario import ConfigError, RngStream, SystemConfig, generate_channels, load_scenario

DEFAULT_SWEEPS = {
    "power_dbm": (0.0, 10.0, 20.0, 30.0, 40.0),
    "sigma_db": (1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
    "mu": (0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0),
}

METHOD_CHOICES = {
    "epa": (Method.EPA,),
    "max-sr": (Method.MAX_SR,),
    "max-min-sr": (Method.MAX_MIN_SR,),
    "max-sr-rc": (Method.MAX_SR_RC,),
    "all": DEFAULT_METHODS,
}


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="scenario JSON file (defaults built in)")
    p.add_argument("--seed", type=int, default=12345, help="master seed")
    p.add_argument("--method", choices=sorted(METHOD_CHOICES), default="all")
    p.add_argument("--phase-strategy", choices=PHASE_STRATEGIES, default="greedy")
    p.add_argument("--phase-passes", type=int, default=3)
    p.add_argument("--phase-grid", type=int, default=64)
    p.add_argument("--strict-paper-taylor", action="store_true",
                   help="use the printed expansion form of the ratio scheme "
                        "(omits the chain-rule factor gamma*P)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsrelay",
        description="Two-way relay network simulator and power-allocation lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one trial, records printed as CSV")
    _common_flags(p_run)
    p_run.add_argument("--out", help="also write the records to this file")

    for axis in ("power", "sigma", "mu"):
        p = sub.add_parser(f"sweep-{axis}", help=f"Monte Carlo sweep over {axis}")
        _common_flags(p)
        p.add_argument("--trials", type=int, default=500)
        p.add_argument("--values", help="comma-separated axis values")
        p.add_argument("--out", help="data CSV path; aggregates go to *_agg")

    p_or = sub.add_parser("oracle-check",
                          help="compare solvers against the grid oracle")
    _common_flags(p_or)
    p_or.add_argument("--trials", type=int, default=100)
    p_or.add_argument("--grid", type=int, default=2000,
                      help="oracle grid resolution")
    return parser


def _load(args) -> tuple[SystemConfig, SolverOptions]:
    if args.config is not None:
        cfg, solver_kwargs = load_scenario(args.config)
    else:
        cfg, solver_kwargs = SystemConfig(), {}
    try:
        opts = SolverOptions(strict_taylor=args.strict_paper_taylor,
                             **solver_kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad solver options: {exc}") from exc
    return cfg, opts


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _agg_path(out: str) -> Path:
    p = Path(out)
    return p.with_name(p.stem + "_agg" + (p.suffix or ".csv"))


def _cmd_run(args) -> int:
    cfg, opts = _load(args)
    records = run_trial(cfg, METHOD_CHOICES[args.method], args.phase_strategy,
                        RngStream(args.seed, 0), solver=opts,
                        phase_passes=args.phase_passes,
                        phase_grid=args.phase_grid)
    text = "\n".join([DATA_HEADER] + [r.csv_row() for r in records]) + "\n"
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return 0


def _cmd_sweep(args, axis: str) -> int:
    cfg, opts = _load(args)
    if args.values is not None:
        try:
            values = tuple(float(v) for v in args.values.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --values list: {args.values!r}") from exc
    else:
        values = DEFAULT_SWEEPS[axis]
    spec = SweepSpec(axis=axis, values=values, trials=args.trials, base=cfg,
                     methods=METHOD_CHOICES[args.method],
                     phase_strategy=args.phase_strategy,
                     phase_passes=args.phase_passes,
                     phase_grid=args.phase_grid, solver=opts)
    result = run_sweep(spec, args.seed)
    if args.out:
        _emit(result.data_csv(), args.out)
        _emit(result.agg_csv(), str(_agg_path(args.out)))
    else:
        sys.stdout.write(result.data_csv())
        sys.stdout.write("\n")
        sys.stdout.write(result.agg_csv())
    return 0


def _cmd_oracle_check(args) -> int:
    cfg, opts = _load(args)
    if args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    dev_mm, dev_sr, dev_rc = 0.0, 0.0, 0.0
    for i in range(args.trials):
        gen = RngStream(args.seed, i).generator()
        ch = generate_channels(cfg, gen)
        if args.phase_strategy == "identity":
            t1 = t2 = identity_phase(cfg.N)
        elif args.phase_strategy == "random":
            t1, t2 = random_phase(cfg.N, gen), random_phase(cfg.N, gen)
        else:
            noise = (cfg.noise_r_watt, cfg.noise_1_watt, cfg.noise_2_watt)
            t1 = greedy_phase(ch, "first", *noise, passes=args.phase_passes,
                              grid_points=args.phase_grid)
            t2 = greedy_phase(ch, "second", *noise, passes=args.phase_passes,
                              grid_points=args.phase_grid)
        g = link_gains(ch, t1, t2, cfg.noise_r_watt, cfg.noise_1_watt,
                       cfg.noise_2_watt)
        p = cfg.p_watt
        o_sum = oracle_grid(g, p, OracleObjective.true_sum_rate(), args.grid)
        o_rc = oracle_grid(g, p, OracleObjective.rate_ratio(cfg.mu), args.grid)
        dev_mm = max(dev_mm, abs(max_min_sr(g, p, opts).r_reported
                                 - o_sum.r_reported))
        dev_sr = max(dev_sr, max_sr(g, p, opts).r_reported - o_sum.r_reported)
        dev_rc = max(dev_rc, abs(max_sr_rc(g, p, cfg.mu, opts).r_reported
                                 - o_rc.r_reported))
    print(f"instances: {args.trials}, oracle grid: {args.grid}")
    print(f"max-min-sr vs sum-rate oracle: max |dev| = {dev_mm:.3e}")
    print(f"max-sr margin over sum-rate oracle: max = {dev_sr:.3e}")
    print(f"max-sr-rc vs ratio oracle: max |dev| = {dev_rc:.3e}")
    return 0


def cli_main(argv=None) -> int:
    level = os.environ.get("IRSRELAY_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep-power":
            return _cmd_sweep(args, "power_dbm")
        if args.command == "sweep-sigma":
            return _cmd_sweep(args, "sigma_db")
        if args.command == "sweep-mu":
            return _cmd_sweep(args, "mu")
        if args.command == "oracle-check":
            return _cmd_oracle_check(args)
        parser.error(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
