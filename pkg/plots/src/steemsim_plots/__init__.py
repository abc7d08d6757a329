"""Figure rendering for steemsim CSV experiment output."""

from .figures import load_sweep, load_timeseries, plot_sweep, plot_timeseries

__version__ = "0.1.0"
