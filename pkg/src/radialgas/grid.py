"""Cell-centered radial grid and the field containers living on it."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PositivityError
from .gas import RHO_FLOOR, GasModel, pressure, sound_speed


@dataclass(frozen=True)
class RadialGrid:
    """Uniform cell-centered grid on [b, L] with N cells."""

    b: float
    L: float
    N: int

    def __post_init__(self):
        if not self.b > 0:
            raise DomainError(f"inner radius must be positive, got {self.b}")
        if not self.L > self.b:
            raise DomainError(f"outer radius {self.L} must exceed inner radius {self.b}")
        if self.N < 4:
            raise DomainError(f"need at least 4 cells, got {self.N}")

    @property
    def dr(self) -> float:
        return (self.L - self.b) / self.N

    @property
    def centers(self) -> np.ndarray:
        return self.b + (np.arange(self.N) + 0.5) * self.dr

    def spans_period(self, length=2.0 * np.pi, rtol=1e-9) -> bool:
        return abs((self.L - self.b) - length) <= rtol * length


@dataclass
class PrimitiveField:
    """Cell-centered (rho, u, p, h)."""

    grid: RadialGrid
    rho: np.ndarray
    u: np.ndarray
    p: np.ndarray
    h: np.ndarray

    @classmethod
    def from_rho_u(cls, grid: RadialGrid, rho, u, model: GasModel) -> "PrimitiveField":
        rho = np.asarray(rho, dtype=float)
        u = np.asarray(u, dtype=float)
        return cls(grid, rho, u, pressure(rho, model), sound_speed(rho, model))

    def copy(self) -> "PrimitiveField":
        return PrimitiveField(self.grid, self.rho.copy(), self.u.copy(),
                              self.p.copy(), self.h.copy())


@dataclass
class ConservedField:
    """r^m-weighted conserved pair: s = r^m rho, q = r^m rho u."""

    s: np.ndarray
    q: np.ndarray

    def copy(self) -> "ConservedField":
        return ConservedField(self.s.copy(), self.q.copy())

    def stacked(self) -> np.ndarray:
        return np.stack([self.s, self.q])

    @classmethod
    def from_stacked(cls, y: np.ndarray) -> "ConservedField":
        return cls(y[0], y[1])


def conserved_from_primitive(field: PrimitiveField, model: GasModel) -> ConservedField:
    rm = field.grid.centers ** model.m
    s = rm * field.rho
    return ConservedField(s, s * field.u)


def primitive_from_conserved_field(state: ConservedField, grid: RadialGrid,
                                   model: GasModel) -> PrimitiveField:
    """Vectorized recovery; raises PositivityError listing offending cells."""
    rm = grid.centers ** model.m
    rho = state.s / rm
    bad = np.flatnonzero(~(rho > RHO_FLOOR))
    if bad.size:
        raise PositivityError(bad.tolist())
    u = state.q / state.s
    return PrimitiveField(grid, rho, u, pressure(rho, model), sound_speed(rho, model))
