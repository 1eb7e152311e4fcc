"""Figure rendering: field snapshots, gradient heat maps, state-plane curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .readers import read_curve, read_heatmap, read_snapshot  # noqa: E402

SNAPSHOT_FIELDS = ("rho", "u", "p", "h")
FIELD_LABELS = {"rho": "density", "u": "velocity", "p": "pressure", "h": "sound speed"}


@dataclass
class PlotJob:
    kind: str                   # snapshot | heatmap | curve
    input_path: str
    output_path: str
    fields: Sequence[str] = SNAPSHOT_FIELDS
    title: Optional[str] = None
    colormap: str = "RdBu_r"
    dpi: int = 130

    def __post_init__(self):
        if self.kind not in ("snapshot", "heatmap", "curve"):
            raise ValueError(f"unknown figure kind {self.kind!r}")
        unknown = set(self.fields) - set(SNAPSHOT_FIELDS)
        if unknown:
            raise ValueError(f"unknown snapshot fields {sorted(unknown)}")


def plot_snapshot(job: PlotJob) -> str:
    """One panel per requested field against radius."""
    data = read_snapshot(job.input_path)
    fields = list(job.fields)
    fig, axes = plt.subplots(len(fields), 1, figsize=(6.0, 2.2 * len(fields)),
                             sharex=True, squeeze=False)
    for ax, name in zip(axes[:, 0], fields):
        ax.plot(data["r"], data[name], lw=1.0)
        ax.set_ylabel(FIELD_LABELS[name])
        ax.grid(alpha=0.3)
    axes[-1, 0].set_xlabel("r")
    if job.title:
        fig.suptitle(job.title)
    fig.tight_layout()
    fig.savefig(job.output_path, dpi=job.dpi)
    plt.close(fig)
    return job.output_path


def plot_heatmap(job: PlotJob) -> str:
    """(r, t) pseudocolor with a diverging map centered at zero.

    The sign of the gradient variables carries the rarefaction/compression
    meaning, so the color limits are symmetric about zero.
    """
    times, radii, matrix = read_heatmap(job.input_path)
    finite = matrix[np.isfinite(matrix)]
    vmax = float(np.max(np.abs(finite))) if finite.size else 1.0
    vmax = vmax if vmax > 0 else 1.0
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if len(times) == 1:
        t_edges = np.array([times[0], times[0] + 1.0])
    else:
        mid = 0.5 * (times[1:] + times[:-1])
        t_edges = np.concatenate([[times[0]], mid, [times[-1]]])
    dr = radii[1] - radii[0] if len(radii) > 1 else 1.0
    r_edges = np.concatenate([radii - dr / 2, [radii[-1] + dr / 2]])
    mesh = ax.pcolormesh(r_edges, t_edges, matrix, cmap=job.colormap,
                         vmin=-vmax, vmax=vmax)
    fig.colorbar(mesh, ax=ax)
    ax.set_xlabel("r")
    ax.set_ylabel("t")
    if job.title:
        ax.set_title(job.title)
    fig.tight_layout()
    fig.savefig(job.output_path, dpi=job.dpi)
    plt.close(fig)
    return job.output_path


def plot_curve(job: PlotJob) -> str:
    """(u, h) polyline in radial order."""
    u, h = read_curve(job.input_path)
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    if len(u) == 1:
        ax.plot(u, h, "o")
    else:
        ax.plot(u, h, lw=1.2)
    ax.set_xlabel("u")
    ax.set_ylabel("h")
    if job.title:
        ax.set_title(job.title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.output_path, dpi=job.dpi)
    plt.close(fig)
    return job.output_path


RENDERERS = {"snapshot": plot_snapshot, "heatmap": plot_heatmap, "curve": plot_curve}


def render(job: PlotJob) -> str:
    return RENDERERS[job.kind](job)
