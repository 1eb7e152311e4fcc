"""Bit-defined CSV artifacts and the run manifest.

All floating-point values are written as fixed 17-significant-digit
scientific notation ('%.16e'), which round-trips doubles exactly; files use
LF line endings.  Iteration orders are fixed so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import numpy as np

from . import __version__
from .errors import DomainError
from .gas import GasModel
from .grid import PrimitiveField

SNAPSHOT_HEADER = "r,rho,u,p,h,alpha,beta,c1,c2"
NUMERIC_FORMAT = "%.16e"


def fmt(x: float) -> str:
    return format(float(x), ".16e")


def write_snapshot(field: PrimitiveField, time: float, path, model: GasModel) -> None:
    """One row per cell under the fixed header; alpha/beta NaN where masked.

    The snapshot time is not part of the CSV; the run index file carries it.
    """
    from .diagnostics import gradient_variables

    g = gradient_variables(field, field.grid, model)
    r = field.grid.centers
    c1 = field.u - field.h
    c2 = field.u + field.h
    cols = (r, field.rho, field.u, field.p, field.h, g.alpha, g.beta, c1, c2)
    lines = [SNAPSHOT_HEADER]
    for row in zip(*cols):
        lines.append(",".join(fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def read_snapshot(path):
    """Parse a snapshot CSV back into a dict of column arrays."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = fh.readline().strip()
        if header != SNAPSHOT_HEADER:
            raise DomainError(f"unexpected snapshot header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    names = header.split(",")
    data = np.array([[float(v) for v in row] for row in rows])
    return {name: data[:, k] for k, name in enumerate(names)}


def write_heatmap(matrix, times, radii, path) -> None:
    """(time, radius) matrix: first row 't\\r' + radii, then time + values."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape != (len(times), len(radii)):
        raise DomainError("heatmap matrix shape does not match times x radii")
    lines = ["t\\r," + ",".join(fmt(r) for r in radii)]
    for t, row in zip(times, matrix):
        lines.append(fmt(t) + "," + ",".join(fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_curve(pairs, path) -> None:
    """(u, h) pairs in radial order."""
    pairs = np.asarray(pairs, dtype=float)
    lines = ["u,h"] + [f"{fmt(u)},{fmt(h)}" for u, h in pairs]
    _write_text(path, "\n".join(lines) + "\n")


def write_events(events, path) -> None:
    lines = ["time,kind,cell,detail"]
    for ev in events:
        cell = "" if ev.cell is None else str(ev.cell)
        detail = ev.detail.replace(",", ";")
        lines.append(f"{fmt(ev.time)},{ev.kind},{cell},{detail}")
    _write_text(path, "\n".join(lines) + "\n")


def write_snapshot_index(entries, path) -> None:
    """entries: (index, time, dt, filename)."""
    lines = ["index,time,dt,file"]
    for idx, t, dt, name in entries:
        lines.append(f"{idx},{fmt(t)},{fmt(dt)},{name}")
    _write_text(path, "\n".join(lines) + "\n")


def write_convergence_table(rows, path) -> None:
    """rows: (field, n_coarse, n_fine, l1_error, order_str)."""
    lines = ["field,n_coarse,n_fine,l1_error,order"]
    for field_name, nc, nf, err, order in rows:
        lines.append(f"{field_name},{nc},{nf},{fmt(err)},{order}")
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def sha256_of(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(out_dir, config_echo: str, status: str, events,
                   timings: dict, extra: dict | None = None) -> str:
    """Checksum every artifact in out_dir and write manifest.json last."""
    files = {}
    for name in sorted(os.listdir(out_dir)):
        full = os.path.join(out_dir, name)
        if name == "manifest.json" or not os.path.isfile(full):
            continue
        files[name] = sha256_of(full)
    manifest = {
        "config": config_echo,
        "status": status,
        "events": [
            {"time": ev.time, "kind": ev.kind, "cell": ev.cell, "detail": ev.detail}
            for ev in events
        ],
        "numeric_format": f"{NUMERIC_FORMAT} (17 significant digits, LF endings)",
        "versions": {
            "radialgas": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
        },
        "timings": timings,
        "files": files,
    }
    if extra:
        manifest.update(extra)
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
