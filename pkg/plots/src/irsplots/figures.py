"""Figure builders: rate-versus-mu curves and grouped method-comparison bars.

Values are passed through from the aggregate table untouched; the returned
matplotlib Figure exposes them for inspection and is also written to disk.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")  # file output only

import matplotlib.pyplot as plt

from .aggtable import METRIC_COLUMNS, AggregateTable

RATIO_METHOD = "MaxSRRC"

AXIS_LABELS = {
    "power": "total power (dBm)",
    "sigma": "shadowing sigma (dB)",
    "mu": "rate-ratio constant mu",
}

# canonical method ordering for grouped bars
METHOD_ORDER = ("EPA", "MaxSR", "MaxMinSR", "MaxSRRC")


def _check_metric(metric: str) -> None:
    if metric not in METRIC_COLUMNS:
        raise ValueError(f"metric must be one of {tuple(METRIC_COLUMNS)}")


def plot_mu_curve(tables, out_path, metric: str = "true"):
    """Rate of the ratio-constrained scheme versus mu, one curve per table.

    `tables` is one AggregateTable or a sequence of (label, AggregateTable)
    pairs (one per power level). Each table is filtered to the MaxSRRC rows;
    a table without them is an error, as is an empty table.
    """
    _check_metric(metric)
    if isinstance(tables, AggregateTable):
        tables = [("MaxSRRC", tables)]
    tables = list(tables)
    if not tables:
        raise ValueError("no aggregate tables given")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, table in tables:
        sub = table.only_method(RATIO_METHOD)
        if not sub.rows:
            raise ValueError(f"table {label!r} has no {RATIO_METHOD} rows")
        x, y = sub.series(RATIO_METHOD, metric)
        ax.plot(x, y, marker="o", label=str(label))
    ax.set_xlabel(AXIS_LABELS["mu"])
    ax.set_ylabel(f"mean rate, {metric} (bits/s/Hz)")
    ax.set_title(f"ratio-constrained scheme vs mu ({metric} rate)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    return fig


def plot_bars(table: AggregateTable, axis: str, out_path, metric: str = "true"):
    """Grouped bars: one group per axis value, one bar per method."""
    _check_metric(metric)
    if axis not in ("power", "sigma"):
        raise ValueError("axis must be 'power' or 'sigma'")
    if not table.rows:
        raise ValueError("aggregate table is empty")
    values = table.axis_values()
    methods = [m for m in METHOD_ORDER if m in table.methods()]
    methods += [m for m in table.methods() if m not in methods]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    group_width = 0.8
    bar_width = group_width / len(methods)
    for k, method in enumerate(methods):
        xs, ys = table.series(method, metric)
        if set(xs) != set(values):
            raise ValueError(f"method {method!r} misses some axis values")
        offset = -group_width / 2.0 + (k + 0.5) * bar_width
        positions = [values.index(x) + offset for x in xs]
        ax.bar(positions, ys, width=bar_width, label=method)
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels([f"{v:g}" for v in values])
    ax.set_xlabel(AXIS_LABELS[axis])
    ax.set_ylabel(f"mean rate, {metric} (bits/s/Hz)")
    ax.set_title(f"achievable sum rate vs {axis} ({metric} rate)")
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    return fig
