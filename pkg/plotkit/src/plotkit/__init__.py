"""Figure rendering for the radialgas CSV artifact formats.

This package never computes physics: it consumes the snapshot, heat-map, and
state-curve CSV files emitted by the solver harness and renders images.
"""

__version__ = "0.1.0"

from .readers import read_curve, read_heatmap, read_snapshot, read_snapshot_index  # noqa: F401
from .render import PlotJob, plot_curve, plot_heatmap, plot_snapshot  # noqa: F401
