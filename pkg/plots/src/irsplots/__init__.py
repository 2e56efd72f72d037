"""Figure regeneration for irsrelay aggregate CSV files."""

from .aggtable import AggregateTable, AggRow, SchemaError
from .figures import plot_bars, plot_mu_curve
from .cli import cli_main

__all__ = ["AggRow", "AggregateTable", "SchemaError", "cli_main",
           "plot_bars", "plot_mu_curve"]
