"""Monte Carlo experiment harness: single trials, axis sweeps, CSV emission.

Within a trial every method sees the same channel realization and the same
slot phases (paired comparison); per-trial randomness comes from an RngStream
derived as (master_seed, axis_index*10^6 + trial_index), so results are
independent of execution order and reproducible row by row.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .paopt import (Method, PAResult, SolverOptions, epa, max_min_sr, max_sr,
                    max_sr_rc)
from .phases import greedy_phase, identity_phase, random_phase
from .rates import link_gains, sum_rate
from .scenario import RngStream, SystemConfig, as_generator, generate_channels

log = logging.getLogger("irsrelay")

PHASE_STRATEGIES = ("identity", "random", "greedy")

AXES = {"power_dbm": "p_dbm", "sigma_db": "shadow_sigma_db", "mu": "mu"}

DEFAULT_METHODS = (Method.EPA, Method.MAX_SR, Method.MAX_MIN_SR, Method.MAX_SR_RC)

DATA_HEADER = ("trial,seed,method,axis,axis_value,beta1,beta2,beta3,"
               "r_reported,r_true,iterations,converged")
AGG_HEADER = "axis_value,method,mean_r_reported,mean_r_true,trials"

# sweeps derive per-trial streams as axis_index*10^6 + trial, so trial counts
# must stay below the stride
TRIAL_STRIDE = 10 ** 6


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: an axis, its values, and the per-point trial count."""

    axis: str
    values: tuple
    trials: int
    base: SystemConfig
    methods: tuple = DEFAULT_METHODS
    phase_strategy: str = "greedy"
    phase_passes: int = 3
    phase_grid: int = 64
    solver: SolverOptions = SolverOptions()

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {tuple(AXES)}")
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise ValueError("sweep needs at least one axis value")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("axis values must be strictly increasing")
        if not (1 <= self.trials < TRIAL_STRIDE):
            raise ValueError(f"trials must be in [1, {TRIAL_STRIDE})")
        meths = tuple(Method(m) for m in self.methods)
        object.__setattr__(self, "methods", meths)
        if not meths or len(set(meths)) != len(meths):
            raise ValueError("methods must be non-empty and unique")
        if self.phase_strategy not in PHASE_STRATEGIES:
            raise ValueError(f"phase strategy must be one of {PHASE_STRATEGIES}")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    method: Method
    axis: str
    axis_value: float
    beta1: float
    beta2: float
    beta3: float
    r_reported: float
    r_true: float
    iterations: int
    converged: bool

    def csv_row(self) -> str:
        return ",".join([
            str(self.trial), str(self.seed), self.method.value, self.axis,
            repr(float(self.axis_value)), repr(self.beta1), repr(self.beta2),
            repr(self.beta3), repr(self.r_reported), repr(self.r_true),
            str(self.iterations), "true" if self.converged else "false",
        ])


@dataclass(frozen=True)
class AggregateRow:
    axis_value: float
    method: Method
    mean_r_reported: float
    mean_r_true: float
    trials: int

    def csv_row(self) -> str:
        return ",".join([
            repr(float(self.axis_value)), self.method.value,
            repr(self.mean_r_reported), repr(self.mean_r_true),
            str(self.trials),
        ])


def _slot_phases(cfg: SystemConfig, ch, strategy: str, gen, passes: int,
                 grid: int):
    if strategy == "identity":
        return identity_phase(cfg.N), identity_phase(cfg.N)
    if strategy == "random":
        return random_phase(cfg.N, gen), random_phase(cfg.N, gen)
    if strategy == "greedy":
        args = (cfg.noise_r_watt, cfg.noise_1_watt, cfg.noise_2_watt)
        t1 = greedy_phase(ch, "first", *args, passes=passes, grid_points=grid)
        t2 = greedy_phase(ch, "second", *args, passes=passes, grid_points=grid)
        return t1, t2
    raise ValueError(f"phase strategy must be one of {PHASE_STRATEGIES}")


def solve_method(method: Method, g, p_watt: float, mu: float,
                 opts: SolverOptions) -> PAResult:
    if method is Method.EPA:
        b = epa()
        r = sum_rate(g, b, p_watt)
        return PAResult(b, r, r, 0, True, Method.EPA, (r,))
    if method is Method.MAX_SR:
        return max_sr(g, p_watt, opts)
    if method is Method.MAX_MIN_SR:
        return max_min_sr(g, p_watt, opts)
    if method is Method.MAX_SR_RC:
        return max_sr_rc(g, p_watt, mu, opts)
    raise ValueError(f"unsupported method {method}")


def run_trial(cfg: SystemConfig, methods, phase_strategy: str, rng, *,
              solver: SolverOptions | None = None, trial: int = 0,
              axis: str = "single", axis_value: float | None = None,
              master_seed: int | None = None, phase_passes: int = 3,
              phase_grid: int = 64) -> list[TrialRecord]:
    """Run every requested method on one shared channel realization.

    Solver failures surface as converged=false records (the solvers fall back
    to the equal split internally), never as exceptions.
    """
    gen = as_generator(rng)
    ch = generate_channels(cfg, gen)
    t1, t2 = _slot_phases(cfg, ch, phase_strategy, gen, phase_passes, phase_grid)
    g = link_gains(ch, t1, t2, cfg.noise_r_watt, cfg.noise_1_watt,
                   cfg.noise_2_watt)
    opts = solver or SolverOptions()
    if axis_value is None:
        axis_value = cfg.p_dbm
    if master_seed is None:
        master_seed = rng.seed if isinstance(rng, RngStream) else 0
    records = []
    for method in (Method(m) for m in methods):
        res = solve_method(method, g, cfg.p_watt, cfg.mu, opts)
        records.append(TrialRecord(
            trial=trial, seed=master_seed, method=method, axis=axis,
            axis_value=float(axis_value), beta1=res.beta.beta1,
            beta2=res.beta.beta2, beta3=res.beta.beta3,
            r_reported=res.r_reported, r_true=res.r_true,
            iterations=res.iterations, converged=res.converged,
        ))
    return records


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    aggregates: tuple

    def data_csv(self) -> str:
        lines = [DATA_HEADER] + [r.csv_row() for r in self.records]
        return "\n".join(lines) + "\n"

    def agg_csv(self) -> str:
        lines = [AGG_HEADER] + [a.csv_row() for a in self.aggregates]
        return "\n".join(lines) + "\n"


def run_sweep(spec: SweepSpec, master_seed: int) -> SweepResult:
    """Run trials x |values| paired trials and aggregate per (value, method).

    Record order is canonical: axis values in sweep order, trials ascending,
    methods in spec order.
    """
    records = []
    for axis_index, value in enumerate(spec.values):
        cfg = replace(spec.base, **{AXES[spec.axis]: value})
        log.debug("sweep %s=%s: %d trials", spec.axis, value, spec.trials)
        for trial in range(spec.trials):
            stream = RngStream(master_seed, axis_index * TRIAL_STRIDE + trial)
            records.extend(run_trial(
                cfg, spec.methods, spec.phase_strategy, stream,
                solver=spec.solver, trial=trial, axis=spec.axis,
                axis_value=value, master_seed=master_seed,
                phase_passes=spec.phase_passes, phase_grid=spec.phase_grid,
            ))
    aggregates = []
    for value in spec.values:
        for method in spec.methods:
            rows = [r for r in records
                    if r.method is method and r.axis_value == float(value)]
            aggregates.append(AggregateRow(
                axis_value=float(value), method=method,
                mean_r_reported=float(np.mean([r.r_reported for r in rows])),
                mean_r_true=float(np.mean([r.r_true for r in rows])),
                trials=len(rows),
            ))
    return SweepResult(tuple(records), tuple(aggregates))
