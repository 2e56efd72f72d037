"""IRS-aided two-way decode-and-forward relay simulator and PA optimizers."""

from .scenario import (ChannelSet, ConfigError, RngStream, SystemConfig,
                       as_generator, db_to_linear, dbm_to_watt, draw_shadowing,
                       generate_channels, linear_to_db, load_scenario,
                       path_loss_db, wavelength)
from .phases import (PhaseVector, greedy_phase, identity_phase, random_phase,
                     slot_objective)
from .rates import (LinkGains, PAFactors, combined_channel, link_gains,
                    link_rate, mac_rate, sum_rate, sum_rate_expanded)
from .paopt import (InfeasibleError, Method, OracleObjective, PAResult,
                    SolverOptions, epa, inner_maximin, max_min_sr, max_sr,
                    max_sr_rc, oracle_grid, rc_objective, sca_drive)
from .harness import (AggregateRow, SweepResult, SweepSpec, TrialRecord,
                      run_sweep, run_trial, solve_method)
from .cli import cli_main

__version__ = "0.1.0"

__all__ = [
    "AggregateRow", "ChannelSet", "ConfigError", "InfeasibleError",
    "LinkGains", "Method", "OracleObjective", "PAFactors", "PAResult",
    "PhaseVector", "RngStream", "SolverOptions", "SweepResult", "SweepSpec",
    "SystemConfig", "TrialRecord", "as_generator", "cli_main",
    "combined_channel", "db_to_linear", "dbm_to_watt", "draw_shadowing",
    "epa", "generate_channels", "greedy_phase", "identity_phase",
    "inner_maximin", "linear_to_db", "link_gains", "link_rate",
    "load_scenario", "mac_rate", "max_min_sr", "max_sr", "max_sr_rc",
    "oracle_grid", "path_loss_db", "random_phase", "rc_objective",
    "run_sweep", "run_trial", "sca_drive", "slot_objective", "solve_method",
    "sum_rate", "sum_rate_expanded", "wavelength",
]
