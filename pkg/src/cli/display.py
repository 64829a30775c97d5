"""Rich tables for CLI summaries"""

from typing import Dict, Mapping, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from ..moments.statistics import MOMENT_NAMES
from ..optimize.results import OptimizationResult


console = Console(stderr=True)


def moments_table(title: str, values: Sequence[float]) -> Table:
    table = Table(title=title)
    table.add_column("Moment", style="cyan")
    table.add_column("Value", justify="right")
    for name, value in zip(MOMENT_NAMES, values):
        table.add_row(name, f"{value:.6g}")
    return table


def calibration_table(result: OptimizationResult) -> Table:
    table = Table(title=f"{result.method} best point (f = {result.best_f:.6g})")
    table.add_column("Parameter", style="cyan")
    table.add_column("Value", justify="right")
    for name in result.free_params:
        table.add_row(name, f"{result.best_theta[name]:.6g}")
    table.caption = f"{result.iterations} iterations, {result.evaluations} evaluations, {result.wall_time_s:.1f}s"
    return table


def intervals_table(intervals: Dict[str, Dict[str, float]], level: float = 0.95) -> Table:
    """Per-parameter mean +/- t* s / sqrt(n)"""
    table = Table(title=f"{level:.0%} confidence intervals over runs")
    table.add_column("Parameter", style="cyan")
    table.add_column("Mean", justify="right")
    table.add_column("Half-width", justify="right")
    table.add_column("Interval", justify="right")
    for name, ci in intervals.items():
        half = (ci['high'] - ci['low']) / 2.0
        table.add_row(name, f"{ci['mean']:.6g}", f"± {half:.3g}", f"[{ci['low']:.6g}, {ci['high']:.6g}]")
    return table


def comparison_table(
    intervals: Mapping[str, Tuple[float, float]],
    data_moments: Sequence[float],
) -> Table:
    table = Table(title="Simulated moment intervals vs. data")
    table.add_column("Moment", style="cyan")
    table.add_column("Low", justify="right")
    table.add_column("High", justify="right")
    table.add_column("Data", justify="right")
    table.add_column("Inside", justify="center")
    for name, value in zip(MOMENT_NAMES, data_moments):
        low, high = intervals[name]
        inside = "[green]yes[/green]" if low <= value <= high else "[red]no[/red]"
        table.add_row(name, f"{low:.6g}", f"{high:.6g}", f"{value:.6g}", inside)
    return table
