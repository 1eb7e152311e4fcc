"""Thermodynamic closure and characteristic structure of the isentropic gas.

The gas is closed by the polytropic law p = K rho^gamma.  All wave-level
quantities (sound speed, characteristic speeds u -+ h, Riemann invariants)
derive from it.  Everything here is a pure function; arrays broadcast.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PositivityError

# Densities at or below this are treated as vacuum breakdown, not clamped.
# Sea-level-like parameter sets (K ~ 7.75e4, gamma = 1.4) put legitimate
# densities near 1e-13 when h ~ 1, so the floor sits far below that.
RHO_FLOOR = 1e-30


@dataclass(frozen=True)
class GasModel:
    """Polytropic constants and the geometry index.

    K: pressure coefficient, gamma: adiabatic exponent, m: 1 for cylindrical
    and 2 for spherical symmetry.
    """

    K: float
    gamma: float
    m: int

    def __post_init__(self):
        if not self.K > 0:
            raise DomainError(f"K must be positive, got {self.K}")
        if not self.gamma > 1:
            raise DomainError(f"gamma must exceed 1, got {self.gamma}")
        if self.m not in (1, 2):
            raise DomainError(f"m must be 1 or 2, got {self.m}")


@dataclass(frozen=True)
class PrimitivePoint:
    rho: float
    u: float
    p: float
    h: float


@dataclass(frozen=True)
class SpeedPair:
    c1: float
    c2: float


@dataclass(frozen=True)
class RiemannPair:
    z: float
    w_inv: float


class Regime(enum.Enum):
    OUTWARD_SUPERSONIC = "outward-supersonic"
    SUBSONIC = "subsonic"
    INWARD_SUPERSONIC = "inward-supersonic"
    DEGENERATE = "degenerate"


def sound_speed(rho, model: GasModel):
    """h = sqrt(K*gamma) * rho^((gamma-1)/2)."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("negative density")
    h = math.sqrt(model.K * model.gamma) * rho ** ((model.gamma - 1.0) / 2.0)
    return h if h.ndim else float(h)


def density_from_sound_speed(h, model: GasModel):
    """Exact inverse of sound_speed."""
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise DomainError("negative sound speed")
    rho = (h * h / (model.K * model.gamma)) ** (1.0 / (model.gamma - 1.0))
    return rho if rho.ndim else float(rho)


def pressure(rho, model: GasModel):
    """p = K * rho^gamma."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise DomainError("negative density")
    p = model.K * rho ** model.gamma
    return p if p.ndim else float(p)


def characteristic_speeds(u, h):
    """Slow/fast characteristic speeds (u - h, u + h)."""
    return SpeedPair(u - h, u + h)


def riemann_invariants(u, h, model: GasModel) -> RiemannPair:
    """z = u - 2h/(gamma-1), w = u + 2h/(gamma-1).

    For gamma = 3 the factor is exactly 1, so the pair coincides with the
    characteristic speeds.
    """
    f = 2.0 / (model.gamma - 1.0)
    return RiemannPair(u - f * h, u + f * h)


def regime_tolerance(c1, c2):
    """Default width of the degenerate band around sonic speeds."""
    return 1e-9 * max(1.0, abs(c1), abs(c2))


def classify_regime(speeds: SpeedPair, tol=None) -> Regime:
    """Sign pattern of (c1, c2); speeds within tol of zero are degenerate."""
    c1, c2 = speeds.c1, speeds.c2
    if tol is None:
        tol = regime_tolerance(c1, c2)
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    if c1 > tol:
        return Regime.OUTWARD_SUPERSONIC
    if c2 < -tol:
        return Regime.INWARD_SUPERSONIC
    if c1 < -tol and c2 > tol:
        return Regime.SUBSONIC
    return Regime.DEGENERATE


def primitive_from_conserved(s, q, r, model: GasModel) -> PrimitivePoint:
    """Recover (rho, u, p, h) from the r^m-weighted pair (s, q) at radius r."""
    if r <= 0:
        raise DomainError("radius must be positive")
    rho = s / r ** model.m
    if not rho > RHO_FLOOR:
        raise PositivityError([0], f"density {rho:.3e} at r={r:.6g} below floor {RHO_FLOOR:.1e}")
    u = q / s
    return PrimitivePoint(rho, u, pressure(rho, model), sound_speed(rho, model))
