"""Semi-discrete Lagrangian-Eulerian finite-volume scheme.

Conserved pair (s, q) = r^m (rho, rho u).  Convective fluxes use limited
linear reconstruction with quarter-cell interface offsets, cell transport
speeds f_j = g_j = u_j, and a single global dissipation scalar per field;
the pressure gradient enters as a separately discretized source.  Time
stepping is strong-stability-preserving Runge-Kutta under a CFL bound on
the transport speeds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, PositivityError
from .gas import RHO_FLOOR, GasModel
from .grid import ConservedField, PrimitiveField, RadialGrid, primitive_from_conserved_field

FLOOR_SPEED_FACTOR = 1e-12  # times dr; keeps dt finite for static states
DT_COLLAPSE_FACTOR = 1e-12  # dt below this fraction of the first dt is terminal


class BoundaryCondition(enum.Enum):
    NEUMANN_ZERO_GRADIENT = "neumann"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class SchemeParams:
    """Limiter scaling (varrho, theta), dissipation weights, Courant number."""

    varrho: float = 1.0
    theta: float = 1.0
    zeta1: float = 2.0
    zeta2: float = 2.0
    courant: float = 0.1
    rk_order: int = 2
    local_dissipation: bool = False

    def __post_init__(self):
        if not 1.0 <= self.theta <= 2.0:
            raise DomainError(f"theta must lie in [1, 2], got {self.theta}")
        if not 0.0 < self.courant < 0.5:
            raise DomainError(f"courant must lie strictly in (0, 1/2), got {self.courant}")
        if not self.varrho > 0:
            raise DomainError(f"varrho must be positive, got {self.varrho}")
        if self.rk_order not in (2, 3):
            raise DomainError(f"rk_order must be 2 or 3, got {self.rk_order}")


def pad_ghosts(values: np.ndarray, bc: BoundaryCondition, width: int = 2) -> np.ndarray:
    if bc is BoundaryCondition.PERIODIC:
        return np.concatenate([values[-width:], values, values[:width]])
    edge_l = np.full(width, values[0])
    edge_r = np.full(width, values[-1])
    return np.concatenate([edge_l, values, edge_r])


def minmod3(a, b, c):
    """MM(MM(a, b), c) with MM(x, y) = (sign x + sign y)/2 * min(|x|, |y|)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    mm = 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))
    out = 0.5 * (np.sign(mm) + np.sign(c)) * np.minimum(np.abs(mm), np.abs(c))
    return out if out.ndim else float(out)


def _slopes_of_padded(vp: np.ndarray, dr: float, params: SchemeParams) -> np.ndarray:
    """Limited slopes for all cells of a 1-ghost-padded array."""
    vt = params.varrho * params.theta
    one_sided_l = (vp[1:-1] - vp[:-2]) / dr
    central = (vp[2:] - vp[:-2]) / (2.0 * dr)
    one_sided_r = (vp[2:] - vp[1:-1]) / dr
    return minmod3(vt * one_sided_l, params.varrho * central, vt * one_sided_r)


def limited_slopes(values: np.ndarray, grid: RadialGrid, params: SchemeParams,
                   bc: BoundaryCondition) -> np.ndarray:
    """Per-cell limited slopes with neighbors supplied by ghost cells."""
    vp = pad_ghosts(np.asarray(values, dtype=float), bc, width=1)
    return _slopes_of_padded(vp, grid.dr, params)


def reconstruct_interfaces(values: np.ndarray, slopes: np.ndarray, grid: RadialGrid):
    """Quarter-cell offset interface states at the N-1 interior interfaces.

    minus_i = v_i + dr/4 * sigma_i, plus_i = v_{i+1} - dr/4 * sigma_{i+1}.
    """
    off = 0.25 * grid.dr
    minus = values[:-1] + off * slopes[:-1]
    plus = values[1:] - off * slopes[1:]
    return minus, plus


def dissipation_coefficient(speed_values: np.ndarray, zeta1: float, zeta2: float) -> float:
    """Global transport-velocity scale: max_j |zeta1 v_j + zeta2 v_{j+1}|."""
    v = np.asarray(speed_values, dtype=float)
    if v.size == 0:
        raise DomainError("empty speed sequence")
    if v.size == 1:
        return abs((zeta1 + zeta2) * float(v[0]))
    return float(np.max(np.abs(zeta1 * v[:-1] + zeta2 * v[1:])))


def numerical_flux(minus, plus, f_j, f_j1, b):
    """1/4 [ b (minus - plus) + (f_j + f_j1)(minus + plus) ]."""
    return 0.25 * (b * (minus - plus) + (f_j + f_j1) * (minus + plus))


def pressure_gradient_source(p_values: np.ndarray, grid: RadialGrid, model: GasModel,
                             params: SchemeParams, bc: BoundaryCondition) -> np.ndarray:
    """-r^m times the limited slope of p, one value per cell."""
    slope = limited_slopes(p_values, grid, params, bc)
    return -(grid.centers ** model.m) * slope


class _Rhs:
    """RHS evaluator on stacked state arrays y = [s, q], with reused geometry."""

    def __init__(self, grid: RadialGrid, model: GasModel, params: SchemeParams,
                 bc: BoundaryCondition):
        self.grid = grid
        self.model = model
        self.params = params
        self.bc = bc
        self.rm = grid.centers ** model.m
        self.dr = grid.dr

    def primitives(self, y: np.ndarray):
        s, q = y[0], y[1]
        rho = s / self.rm
        bad = np.flatnonzero(~(rho > RHO_FLOOR))
        if bad.size:
            raise PositivityError(bad.tolist())
        u = q / s
        p = self.model.K * rho ** self.model.gamma
        return rho, u, p

    def __call__(self, y: np.ndarray) -> np.ndarray:
        grid, params, bc, dr = self.grid, self.params, self.bc, self.dr
        s, q = y[0], y[1]
        _, u, p = self.primitives(y)

        sp = pad_ghosts(s, bc)
        qp = pad_ghosts(q, bc)
        up = pad_ghosts(u, bc)

        slope_s = _slopes_of_padded(sp, dr, params)     # cells -1..N
        slope_q = _slopes_of_padded(qp, dr, params)

        # one scalar per field per evaluation, from the padded speed sequence
        if params.local_dissipation:
            b_s = b_q = np.abs(params.zeta1 * up[1:-2] + params.zeta2 * up[2:-1])
        else:
            b_s = dissipation_coefficient(up, params.zeta1, params.zeta2)
            b_q = dissipation_coefficient(up, params.zeta1, params.zeta2)

        off = 0.25 * dr
        # interfaces i = -1/2 .. N-1/2; minus side cells -1..N-1, plus side 0..N
        s_minus = sp[1:-2] + off * slope_s[:-1]
        s_plus = sp[2:-1] - off * slope_s[1:]
        q_minus = qp[1:-2] + off * slope_q[:-1]
        q_plus = qp[2:-1] - off * slope_q[1:]
        f_j = up[1:-2]
        f_j1 = up[2:-1]

        flux_s = numerical_flux(s_minus, s_plus, f_j, f_j1, b_s)
        flux_q = numerical_flux(q_minus, q_plus, f_j, f_j1, b_q)

        source = pressure_gradient_source(p, grid, self.model, params, bc)

        ds = -(flux_s[1:] - flux_s[:-1]) / dr
        dq = -(flux_q[1:] - flux_q[:-1]) / dr + source
        return np.stack([ds, dq])


def semidiscrete_rhs(state: ConservedField, grid: RadialGrid, model: GasModel,
                     params: SchemeParams, bc: BoundaryCondition) -> ConservedField:
    """ds/dt and dq/dt of the semi-discrete scheme as a field-shaped pair."""
    dy = _Rhs(grid, model, params, bc)(state.stacked())
    return ConservedField(dy[0], dy[1])


def cfl_timestep(state: ConservedField, grid: RadialGrid, params: SchemeParams) -> float:
    """courant * dr / max(|u|, floor); transport speeds f = g = u."""
    u = state.q / state.s
    vmax = float(np.max(np.abs(u)))
    return params.courant * grid.dr / max(vmax, FLOOR_SPEED_FACTOR * grid.dr)


def ssp_rk2_step(y, dt: float, rhs: Callable):
    """Two-stage strong-stability-preserving step (Heun form)."""
    y1 = y + dt * rhs(y)
    return 0.5 * y + 0.5 * (y1 + dt * rhs(y1))


def ssp_rk3_step(y, dt: float, rhs: Callable):
    y1 = y + dt * rhs(y)
    y2 = 0.75 * y + 0.25 * (y1 + dt * rhs(y1))
    return y / 3.0 + 2.0 / 3.0 * (y2 + dt * rhs(y2))


@dataclass
class Event:
    kind: str
    time: float
    cell: Optional[int] = None
    detail: str = ""


@dataclass
class Snapshot:
    index: int
    time: float
    dt: float
    field: PrimitiveField


@dataclass
class AdvanceResult:
    state: ConservedField
    t: float
    steps: int
    events: list
    terminal: Optional[Event] = None

    @property
    def blown_up(self) -> bool:
        return self.terminal is not None


class SnapshotRecorder:
    """Observer capturing primitive-field snapshots at scheduled times.

    Snapshots are taken at the first accepted step at or past each scheduled
    time and carry their true time (no interpolation).
    """

    def __init__(self, grid: RadialGrid, model: GasModel, times):
        self.grid = grid
        self.model = model
        self.schedule = list(times)
        self._next = 0
        self.snapshots: list[Snapshot] = []

    def __call__(self, t: float, dt: float, state: ConservedField):
        if self._next < len(self.schedule) and t >= self.schedule[self._next] - 1e-14:
            self.record(t, dt, state)
            while self._next < len(self.schedule) and self.schedule[self._next] <= t + 1e-14:
                self._next += 1

    def record(self, t, dt, state):
        field = primitive_from_conserved_field(state, self.grid, self.model)
        self.snapshots.append(Snapshot(len(self.snapshots), t, dt, field))


class GradientWatch:
    """Per-step blow-up watch on the centered velocity derivative."""

    def __init__(self, threshold_factor: float, initial_max: float):
        if not threshold_factor > 1:
            raise DomainError("threshold_factor must exceed 1")
        self.threshold = threshold_factor * max(1.0, initial_max)

    def trips(self, u: np.ndarray, dr: float):
        du = np.abs(u[2:] - u[:-2]) / (2.0 * dr)
        j = int(np.argmax(du)) if du.size else 0
        return (du.size and du[j] > self.threshold), j + 1


def max_velocity_derivative(u: np.ndarray, dr: float) -> float:
    """max_j |u_r| with second-order centered/one-sided differences."""
    from .diagnostics import radial_derivative

    return float(np.max(np.abs(radial_derivative(u, dr))))


def advance(state: ConservedField, grid: RadialGrid, model: GasModel,
            params: SchemeParams, bc: BoundaryCondition, t_end: float,
            observers=(), blowup_factor: Optional[float] = None) -> AdvanceResult:
    """Step the state to t_end, clipping the final step to land exactly.

    Terminal events (positivity failure, gradient blow-up, dt collapse,
    non-finite values) stop the loop and are recorded, not raised.
    """
    rhs = _Rhs(grid, model, params, bc)
    step = ssp_rk2_step if params.rk_order == 2 else ssp_rk3_step
    y = state.stacked().astype(float)
    t = 0.0
    n = 0
    events: list[Event] = []
    terminal: Optional[Event] = None
    dt0 = None

    watch = None
    if blowup_factor is not None:
        u0 = state.q / state.s
        watch = GradientWatch(blowup_factor, max_velocity_derivative(u0, grid.dr))

    while t < t_end and terminal is None:
        cur = ConservedField(y[0], y[1])
        dt_raw = cfl_timestep(cur, grid, params)
        if dt0 is None:
            dt0 = dt_raw
        if dt_raw < DT_COLLAPSE_FACTOR * dt0:
            terminal = Event("dt-collapse", t, None, f"dt={dt_raw:.3e} vs initial {dt0:.3e}")
            break
        dt = min(dt_raw, t_end - t)
        try:
            y_new = step(y, dt, rhs)
        except PositivityError as exc:
            terminal = Event("positivity-failure", t, exc.cells[0], str(exc))
            break
        t += dt
        n += 1
        if not np.all(np.isfinite(y_new)):
            bad = np.flatnonzero(~np.isfinite(y_new))[0] % y_new.shape[1]
            terminal = Event("non-finite", t, int(bad), "non-finite state value")
            break
        y = y_new
        if watch is not None:
            tripped, cell = watch.trips(y[1] / y[0], grid.dr)
            if tripped:
                terminal = Event("gradient-blowup", t, cell,
                                 f"max|u_r| exceeded {watch.threshold:.6g}")
        new_state = ConservedField(y[0], y[1])
        for obs in observers:
            obs(t, dt, new_state)

    if terminal is not None:
        events.append(terminal)
    return AdvanceResult(ConservedField(y[0], y[1]), t, n, events, terminal)
