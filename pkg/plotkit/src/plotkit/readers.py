"""Parsers for the solver's CSV artifact formats.

Errors name the offending line so malformed files are easy to locate.
"""

from __future__ import annotations

import numpy as np

SNAPSHOT_COLUMNS = ("r", "rho", "u", "p", "h", "alpha", "beta", "c1", "c2")


class ParseError(ValueError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


def _float(path, lineno, token):
    try:
        return float(token)
    except ValueError:
        raise ParseError(path, lineno, f"not a number: {token!r}") from None


def read_snapshot(path):
    """Snapshot CSV -> dict of column arrays (header is fixed)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty file")
    header = tuple(lines[0].split(","))
    if header != SNAPSHOT_COLUMNS:
        raise ParseError(path, 1, f"expected header {','.join(SNAPSHOT_COLUMNS)!r}, "
                                  f"got {lines[0]!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(SNAPSHOT_COLUMNS):
            raise ParseError(path, lineno,
                             f"expected {len(SNAPSHOT_COLUMNS)} columns, got {len(parts)}")
        rows.append([_float(path, lineno, tok) for tok in parts])
    if not rows:
        raise ParseError(path, 2, "no data rows")
    data = np.array(rows)
    return {name: data[:, k] for k, name in enumerate(SNAPSHOT_COLUMNS)}


def read_heatmap(path):
    """Heat-map CSV -> (times, radii, matrix); rows must be rectangular."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in fh.read().splitlines() if line.strip()]
    if not lines:
        raise ParseError(path, 1, "empty file")
    head = lines[0].split(",")
    if head[0] != "t\\r":
        raise ParseError(path, 1, f"expected corner label 't\\r', got {head[0]!r}")
    radii = np.array([_float(path, 1, tok) for tok in head[1:]])
    times, rows = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(radii) + 1:
            raise ParseError(path, lineno,
                             f"ragged row: expected {len(radii) + 1} values, got {len(parts)}")
        times.append(_float(path, lineno, parts[0]))
        rows.append([_float(path, lineno, tok) for tok in parts[1:]])
    return np.array(times), radii, np.array(rows)


def read_curve(path):
    """State-curve CSV -> (u, h) arrays in radial order."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(path, 1, "empty file")
    if lines[0] != "u,h":
        raise ParseError(path, 1, f"expected header 'u,h', got {lines[0]!r}")
    u, h = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 2 columns, got {len(parts)}")
        u.append(_float(path, lineno, parts[0]))
        h.append(_float(path, lineno, parts[1]))
    if not u:
        raise ParseError(path, 2, "no data rows")
    return np.array(u), np.array(h)


def read_snapshot_index(path):
    """snapshots.csv -> list of (index, time, dt, filename)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != "index,time,dt,file":
        raise ParseError(path, 1, "expected header 'index,time,dt,file'")
    entries = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ParseError(path, lineno, f"expected 4 columns, got {len(parts)}")
        entries.append((int(parts[0]), _float(path, lineno, parts[1]),
                        _float(path, lineno, parts[2]), parts[3]))
    return entries
