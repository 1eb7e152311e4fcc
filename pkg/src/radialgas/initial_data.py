"""Initial-field construction.

Two families: profiles synthesized from prescribed per-family gradient
values (alpha0, beta0) by integrating the inverted gradient relations
radially from an anchor, and the closed-form sinusoidal velocity data used
in the periodic subsonic experiments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NegativeSoundSpeedError, SonicSingularityError
from .gas import GasModel, density_from_sound_speed
from .grid import PrimitiveField, RadialGrid

# Relative closeness to the sonic line u^2 = h^2 that aborts integration.
SONIC_TOL = 1e-8
SUBSTEPS_PER_CELL = 4


@dataclass(frozen=True)
class PrescribedCharacterIC:
    """Constant gradient values per family plus the anchor state.

    alpha0/beta0 carry the wave character (positive rarefactive, negative
    compressive); (v_a, h_c) anchor velocity and sound speed at radius r0.
    """

    alpha0: float
    beta0: float
    v_a: float
    h_c: float
    r0: float


@dataclass(frozen=True)
class SinusoidalIC:
    """u(r) = sin(r - r_left)/eps on a uniform-density background."""

    eps: float
    rho_const: float

    def __post_init__(self):
        if self.eps == 0:
            raise DomainError("eps must be nonzero")
        if not self.rho_const > 0:
            raise DomainError("rho_const must be positive")


def _profile_rhs(r, u, h, spec: PrescribedCharacterIC, model: GasModel):
    """Radial derivatives (du/dr, dh/dr) implied by constant alpha, beta."""
    m, g = model.m, model.gamma
    denom = u * u - h * h
    du = 0.5 * (spec.alpha0 + spec.beta0) + m * h * h * u / (r * denom)
    dh = 0.25 * (g - 1.0) * ((spec.alpha0 - spec.beta0)
                             - 2.0 * m * h * u * u / (r * denom))
    return du, dh


def _guard(r, u, h):
    if h <= 0:
        raise NegativeSoundSpeedError(r)
    if abs(u * u - h * h) < SONIC_TOL * (u * u + h * h):
        raise SonicSingularityError(r)


def _integrate_leg(targets, spec, model):
    """March (u, h) from the anchor through each target radius in order."""
    r, u, h = spec.r0, spec.v_a, spec.h_c
    out = np.empty((len(targets), 2))
    for i, rt in enumerate(targets):
        dr = (rt - r) / SUBSTEPS_PER_CELL
        for _ in range(SUBSTEPS_PER_CELL):
            _guard(r, u, h)
            k1u, k1h = _profile_rhs(r, u, h, spec, model)
            _guard(r + 0.5 * dr, u + 0.5 * dr * k1u, h + 0.5 * dr * k1h)
            k2u, k2h = _profile_rhs(r + 0.5 * dr, u + 0.5 * dr * k1u, h + 0.5 * dr * k1h,
                                    spec, model)
            _guard(r + 0.5 * dr, u + 0.5 * dr * k2u, h + 0.5 * dr * k2h)
            k3u, k3h = _profile_rhs(r + 0.5 * dr, u + 0.5 * dr * k2u, h + 0.5 * dr * k2h,
                                    spec, model)
            _guard(r + dr, u + dr * k3u, h + dr * k3h)
            k4u, k4h = _profile_rhs(r + dr, u + dr * k3u, h + dr * k3h, spec, model)
            u += dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            h += dr / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h)
            r += dr
            if h <= 0:
                raise NegativeSoundSpeedError(r)
        out[i] = (u, h)
    return out


def synthesize_profiles(spec: PrescribedCharacterIC, grid: RadialGrid,
                        model: GasModel) -> PrimitiveField:
    """Integrate the constant-(alpha, beta) profile ODEs from r0 to both ends.

    The anchor (u, h)(r0) = (v_a, h_c) holds exactly.  Integration aborts
    with SonicSingularityError if any substep lands within SONIC_TOL of the
    sonic line (in particular a sonic anchor), and NegativeSoundSpeedError
    if h is driven below zero.  A fixed-step march that crosses the sonic
    line between substeps continues on the other branch; the strongly
    compressive cases do exactly that and yield mixed-regime fields.
    """
    if not (grid.b <= spec.r0 <= grid.L):
        raise DomainError(f"anchor r0={spec.r0} outside grid [{grid.b}, {grid.L}]")
    centers = grid.centers
    right = centers[centers >= spec.r0]
    left = centers[centers < spec.r0][::-1]
    vals = np.empty((grid.N, 2))
    if left.size:
        vals[left.size - 1::-1] = _integrate_leg(left, spec, model)
    if right.size:
        vals[left.size:] = _integrate_leg(right, spec, model)
    u, h = vals[:, 0], vals[:, 1]
    rho = density_from_sound_speed(h, model)
    return PrimitiveField.from_rho_u(grid, rho, u, model)


def sinusoidal_profiles(spec: SinusoidalIC, grid: RadialGrid,
                        model: GasModel) -> PrimitiveField:
    """Uniform density, u = sin(r - b)/eps; grid must span one 2*pi period."""
    if not grid.spans_period():
        raise DomainError("sinusoidal data needs a grid spanning exactly 2*pi")
    u = np.sin(grid.centers - grid.b) / spec.eps
    rho = np.full(grid.N, float(spec.rho_const))
    return PrimitiveField.from_rho_u(grid, rho, u, model)


def residual_check(field: PrimitiveField, spec: PrescribedCharacterIC,
                   grid: RadialGrid, model: GasModel) -> float:
    """Max deviation of recomputed (alpha, beta) from the prescribed values.

    Evaluated on interior non-masked cells; the boundary cells use one-sided
    differences of lower quality and are excluded.
    """
    from .diagnostics import gradient_variables

    gf = gradient_variables(field, grid, model)
    interior = slice(1, grid.N - 1)
    valid = gf.valid[interior]
    da = np.abs(gf.alpha[interior][valid] - spec.alpha0)
    db = np.abs(gf.beta[interior][valid] - spec.beta0)
    if da.size == 0:
        raise DomainError("no valid interior cells for residual check")
    return float(max(da.max(), db.max()))
