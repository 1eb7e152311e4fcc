"""Field diagnostics: gradient variables, wave characters, blow-up detection,
and the strong-compression singularity bound."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, NotStrongCompressionError, SonicDiagnosticError
from .gas import GasModel
from .grid import PrimitiveField, RadialGrid
from .scheme import Snapshot

# Cells whose characteristic speed is below this fraction of the field's
# speed scale are masked: the geometric terms in alpha/beta divide by c1, c2
# and are meaningless near the sonic line.
SONIC_MASK_TOL = 1e-6


class WaveCharacter(enum.Enum):
    RAREFACTION = "R"
    COMPRESSION = "C"
    BOUNDARY = "0"
    INVALID = "invalid"


@dataclass
class GradientField:
    """Per-cell gradient variables and the per-family wave characters."""

    alpha: np.ndarray
    beta: np.ndarray
    char1: list
    char2: list
    valid: np.ndarray


@dataclass
class BlowupReport:
    detected: bool
    t_detect: Optional[float] = None
    cell: Optional[int] = None
    trigger: Optional[str] = None   # gradient-threshold | dt-collapse | non-finite


@dataclass(frozen=True)
class CompressionBound:
    S1: float
    S2: float
    M: float
    eps: float
    t_star: float


def radial_derivative(values: np.ndarray, dr: float) -> np.ndarray:
    """Second-order derivative: centered interior, one-sided at the ends."""
    v = np.asarray(values, dtype=float)
    d = np.empty_like(v)
    d[1:-1] = (v[2:] - v[:-2]) / (2.0 * dr)
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dr)
    d[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * dr)
    return d


def _characters(values: np.ndarray, valid: np.ndarray) -> list:
    out = []
    for v, ok in zip(values, valid):
        if not ok:
            out.append(WaveCharacter.INVALID)
        elif v > 0:
            out.append(WaveCharacter.RAREFACTION)
        elif v < 0:
            out.append(WaveCharacter.COMPRESSION)
        else:
            out.append(WaveCharacter.BOUNDARY)
    return out


def gradient_variables(field: PrimitiveField, grid: RadialGrid, model: GasModel,
                       strict: bool = False) -> GradientField:
    """alpha = u_r + 2/(g-1) h_r + (m/r) h u / c2, beta the c1 mirror.

    Near-sonic cells are marked invalid (NaN values) by default; with
    strict=True they raise SonicDiagnosticError instead.  Derivatives are
    unlimited second-order differences: diagnostics must see steepening that
    the scheme's limiter clips.
    """
    r = grid.centers
    u, h = field.u, field.h
    c1 = u - h
    c2 = u + h
    scale = float(np.max(np.abs(u) + h))
    tol = SONIC_MASK_TOL * max(scale, 1e-300)
    valid = (np.abs(c1) > tol) & (np.abs(c2) > tol)
    if strict and not valid.all():
        raise SonicDiagnosticError(np.flatnonzero(~valid).tolist())

    ur = radial_derivative(u, grid.dr)
    hr = radial_derivative(h, grid.dr)
    f = 2.0 / (model.gamma - 1.0)
    geom = model.m / r * h * u
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = ur + f * hr + geom / c2
        beta = ur - f * hr - geom / c1
    alpha[~valid] = np.nan
    beta[~valid] = np.nan
    return GradientField(alpha, beta, _characters(beta, valid), _characters(alpha, valid),
                         valid)


def strong_compression_threshold(S1: float, S2: float, r_star: float, m: int) -> float:
    """M = m S2^2 / (2 r* S1)."""
    if not (0 < S1 <= S2) or not r_star > 0 or m <= 0:
        raise DomainError("need 0 < S1 <= S2, r_star > 0, m > 0")
    return m * S2 * S2 / (2.0 * r_star * S1)


def singularity_time_bound(alpha0_at_rstar: float, M: float):
    """(eps, t_star) for strong compression alpha0 < -M.

    eps = 1 - M/|alpha0| is the largest split leaving (1-eps)|alpha0| >= M;
    the finite-time bound is t_star = -1/(eps * alpha0).
    """
    if not M > 0:
        raise DomainError("M must be positive")
    if not alpha0_at_rstar < -M:
        raise NotStrongCompressionError(
            f"alpha0 = {alpha0_at_rstar} does not satisfy alpha0 < -M = {-M}")
    eps = 1.0 - M / abs(alpha0_at_rstar)
    t_star = -1.0 / (eps * alpha0_at_rstar)
    return eps, t_star


def compression_bound(S1: float, S2: float, r_star: float, m: int,
                      alpha0_at_rstar: float) -> CompressionBound:
    """Bundle the strong-compression threshold and blow-up bound at r_star."""
    if not S1 < S2:
        raise DomainError("need S1 < S2")
    M = strong_compression_threshold(S1, S2, r_star, m)
    eps, t_star = singularity_time_bound(alpha0_at_rstar, M)
    return CompressionBound(S1, S2, M, eps, t_star)


def speed_bounds_check(snapshots: Sequence[Snapshot], masks) -> float:
    """Largest violation of c1 >= min c1(.,0), c2 <= max c2(.,0) on masked cells.

    masks: per-snapshot boolean cell masks (the domain of influence); may be
    None meaning all cells.
    """
    first = snapshots[0].field
    S1 = float(np.min(first.u - first.h))
    S2 = float(np.max(first.u + first.h))
    worst = 0.0
    for k, snap in enumerate(snapshots):
        mask = None if masks is None else masks[k]
        c1 = snap.field.u - snap.field.h
        c2 = snap.field.u + snap.field.h
        if mask is not None:
            if not np.any(mask):
                continue
            c1 = c1[mask]
            c2 = c2[mask]
        worst = max(worst, float(np.max(S1 - c1)), float(np.max(c2 - S2)))
    return max(worst, 0.0)


def detect_blowup(snapshots: Sequence[Snapshot], grid: RadialGrid,
                  threshold_factor: float = 50.0) -> BlowupReport:
    """First snapshot at which the run has left the smooth regime.

    Triggers, earliest first: max|u_r| above threshold_factor * max(1,
    initial max), time-step collapse below 1e-12 of the initial step, or a
    non-finite field value.
    """
    if not threshold_factor > 1:
        raise DomainError("threshold_factor must exceed 1")
    u0r = np.abs(radial_derivative(snapshots[0].field.u, grid.dr))
    threshold = threshold_factor * max(1.0, float(u0r.max()))
    dt0 = snapshots[0].dt
    for snap in snapshots:
        f = snap.field
        finite = all(np.all(np.isfinite(a)) for a in (f.rho, f.u, f.p, f.h))
        if not finite:
            bad = np.flatnonzero(~np.isfinite(f.u))
            cell = int(bad[0]) if bad.size else 0
            return BlowupReport(True, snap.time, cell, "non-finite")
        if dt0 > 0 and snap.dt < 1e-12 * dt0:
            return BlowupReport(True, snap.time, None, "dt-collapse")
        du = np.abs(radial_derivative(f.u, grid.dr))
        j = int(np.argmax(du))
        if du[j] > threshold:
            return BlowupReport(True, snap.time, j, "gradient-threshold")
    return BlowupReport(False)


def invariant_curve(field: PrimitiveField) -> np.ndarray:
    """(u, h) pairs in radial order; the state-plane trace of the field."""
    return np.column_stack([field.u, field.h])


def heatmap_accumulate(gradient_snapshots):
    """Stack per-time gradient arrays into a (time, radius) matrix.

    gradient_snapshots: sequence of (t, values).  Ragged rows are an error.
    """
    times = np.array([t for t, _ in gradient_snapshots], dtype=float)
    rows = [np.asarray(v, dtype=float) for _, v in gradient_snapshots]
    n = {row.shape for row in rows}
    if len(n) != 1 or rows[0].ndim != 1:
        raise DomainError("ragged or non-1d gradient snapshots")
    return times, np.vstack(rows)
