"""Figure generation for cavity-entanglement sweep CSVs.

This package consumes only the public CSV contract of the sweep tool
('# key=value' metadata lines, a fixed header row, one row per grid point)
and never imports the simulation code.
"""

__version__ = "0.1.0"

from .csvio import CsvError, SweepData, read_sweep_csv
from .render import PlotError, PlotJob, RenderResult, render

__all__ = [
    "CsvError",
    "SweepData",
    "read_sweep_csv",
    "PlotError",
    "PlotJob",
    "RenderResult",
    "render",
]
