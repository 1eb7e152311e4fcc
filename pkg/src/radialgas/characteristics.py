"""Method-of-characteristics machinery: flow maps on stored field
trajectories, the gradient-variable transport oracle (gamma = 3 only), the
domain of influence, and the wave-character transition rules."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, SonicOnPathError, UnsupportedGammaError
from .gas import GasModel, Regime
from .grid import RadialGrid
from .scheme import Snapshot

EVENT_SIGN_TOL = 1e-6   # of the field scale; suppresses round-off sign chatter
RICCATI_CAP = 1e9       # |gvar| beyond this counts as diverged


class Family(enum.Enum):
    ONE = 1   # speed c1 = u - h, gradient variable beta
    TWO = 2   # speed c2 = u + h, gradient variable alpha


class Direction(enum.Enum):
    R_TO_C = "RtoC"
    C_TO_R = "CtoR"


@dataclass
class FieldTrajectory:
    """Time-stacked fields on a fixed radial grid, linearly interpolable."""

    times: np.ndarray          # (K,)
    radii: np.ndarray          # (N,)
    u: np.ndarray              # (K, N)
    h: np.ndarray              # (K, N)
    alpha: np.ndarray          # (K, N)
    beta: np.ndarray           # (K, N)

    @classmethod
    def from_snapshots(cls, snapshots: Sequence[Snapshot], grid: RadialGrid,
                       model: GasModel) -> "FieldTrajectory":
        from .diagnostics import gradient_variables

        times = np.array([s.time for s in snapshots])
        u = np.stack([s.field.u for s in snapshots])
        h = np.stack([s.field.h for s in snapshots])
        ab = [gradient_variables(s.field, grid, model) for s in snapshots]
        alpha = np.stack([g.alpha for g in ab])
        beta = np.stack([g.beta for g in ab])
        return cls(times, grid.centers.copy(), u, h, alpha, beta)

    def _bracket(self, t: float):
        ts = self.times
        if t <= ts[0]:
            return 0, 0, 0.0
        if t >= ts[-1]:
            return len(ts) - 1, len(ts) - 1, 0.0
        k = int(np.searchsorted(ts, t, side="right")) - 1
        w = (t - ts[k]) / (ts[k + 1] - ts[k])
        return k, k + 1, w

    def interp(self, name: str, t: float, r) -> float:
        """Bilinear interpolation in (r, t) of one stored field."""
        arr = getattr(self, name)
        k0, k1, w = self._bracket(t)
        v0 = np.interp(r, self.radii, arr[k0])
        if k1 == k0:
            return v0
        v1 = np.interp(r, self.radii, arr[k1])
        return (1.0 - w) * v0 + w * v1

    def speed(self, family: Family, t: float, r) -> float:
        u = self.interp("u", t, r)
        h = self.interp("h", t, r)
        return u - h if family is Family.ONE else u + h

    def gvar(self, family: Family, t: float, r) -> float:
        return self.interp("beta" if family is Family.ONE else "alpha", t, r)

    def inside(self, r: float) -> bool:
        # allow half a cell beyond the outermost centers: the stored fields
        # are cell-centered samples of a domain extending that far
        half = 0.5 * (self.radii[1] - self.radii[0])
        return self.radii[0] - half <= r <= self.radii[-1] + half


class TrajectoryRecorder:
    """advance() observer that accumulates a FieldTrajectory every k-th step."""

    def __init__(self, grid: RadialGrid, model: GasModel, every: int = 1):
        self.grid = grid
        self.model = model
        self.every = every
        self._n = 0
        self._times: list[float] = []
        self._rows: list[tuple] = []

    def record(self, t: float, state):
        from .diagnostics import gradient_variables
        from .grid import primitive_from_conserved_field

        f = primitive_from_conserved_field(state, self.grid, self.model)
        g = gradient_variables(f, self.grid, self.model)
        self._times.append(t)
        self._rows.append((f.u, f.h, g.alpha, g.beta))

    def __call__(self, t, dt, state):
        self._n += 1
        if self._n % self.every == 0:
            self.record(t, state)

    def trajectory(self) -> FieldTrajectory:
        u, h, a, b = (np.stack([row[i] for row in self._rows]) for i in range(4))
        return FieldTrajectory(np.array(self._times), self.grid.centers.copy(), u, h, a, b)


@dataclass
class CharacteristicPath:
    """A sampled flow-map trajectory of one family."""

    family: Family
    r_origin: float
    t: np.ndarray
    r: np.ndarray
    c_own: np.ndarray
    gvar: np.ndarray
    partner: np.ndarray
    exited: Optional[str] = None    # 'left' | 'right' | None


def advance_flow_map(family: Family, r_origin: float,
                     traj: FieldTrajectory) -> CharacteristicPath:
    """Integrate dr/dt = c_family(r, t) through the trajectory's time grid.

    One classical 4-stage step per stored time interval, bilinear field
    interpolation; the path is clipped where it leaves the radial extent.
    """
    if not traj.inside(r_origin):
        raise DomainError(f"origin {r_origin} outside stored field extent")
    partner = Family.TWO if family is Family.ONE else Family.ONE
    ts, rs = [traj.times[0]], [float(r_origin)]
    exited = None
    r = float(r_origin)
    for k in range(len(traj.times) - 1):
        t0, t1 = traj.times[k], traj.times[k + 1]
        dt = t1 - t0
        k1 = traj.speed(family, t0, r)
        k2 = traj.speed(family, t0 + 0.5 * dt, r + 0.5 * dt * k1)
        k3 = traj.speed(family, t0 + 0.5 * dt, r + 0.5 * dt * k2)
        k4 = traj.speed(family, t1, r + dt * k3)
        r_new = r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not traj.inside(r_new):
            exited = "left" if r_new < traj.radii[0] else "right"
            break
        r = r_new
        ts.append(float(t1))
        rs.append(r)
    t_arr = np.array(ts)
    r_arr = np.array(rs)
    c_own = np.array([traj.speed(family, t, x) for t, x in zip(t_arr, r_arr)])
    gvar = np.array([traj.gvar(family, t, x) for t, x in zip(t_arr, r_arr)])
    part = np.array([traj.gvar(partner, t, x) for t, x in zip(t_arr, r_arr)])
    return CharacteristicPath(family, float(r_origin), t_arr, r_arr, c_own, gvar,
                              part, exited)


@dataclass
class RiccatiPrediction:
    t: np.ndarray
    gvar: np.ndarray
    diverged: bool = False
    t_divergence: Optional[float] = None


def riccati_along_path(path: CharacteristicPath, traj: FieldTrajectory,
                       model: GasModel, include_coupling: bool = True,
                       cap: float = RICCATI_CAP) -> RiccatiPrediction:
    """Integrate the family's transport equation from the path's initial value.

    For the 1-family: d(beta)/dt = -beta^2 + (m c2^2 / (2 r c1)) (alpha - beta)
    along dr/dt = c1; the 2-family mirrors with alpha and c2 swapped.  Only
    gamma = 3 is supported.  The partner gradient variable and both speeds
    are sampled from the stored field along the path; with include_coupling
    False the quadratic decay law is integrated alone (self-oracle mode).

    Divergence is reported when |gvar| exceeds cap; the divergence time is
    extrapolated from the pure-Riccati tail 1/|gvar|.
    """
    if model.gamma != 3.0:
        raise UnsupportedGammaError(f"transport oracle requires gamma = 3, got {model.gamma}")
    partner = Family.TWO if path.family is Family.ONE else Family.ONE
    m = model.m

    def interp_r(tq):
        return float(np.interp(tq, path.t, path.r))

    def rhs(tq, g):
        rate = -g * g
        if include_coupling:
            rq = interp_r(tq)
            c_own = traj.speed(path.family, tq, rq)
            c_par = traj.speed(partner, tq, rq)
            scale = abs(c_own) + abs(c_par)
            if abs(c_own) < 1e-12 * max(scale, 1.0):
                raise SonicOnPathError(tq, rq)
            g_par = traj.gvar(partner, tq, rq)
            rate += m * c_par * c_par / (2.0 * rq * c_own) * (g_par - g)
        return rate

    g = float(path.gvar[0])
    ts = [float(path.t[0])]
    gs = [g]
    for k in range(len(path.t) - 1):
        t0, t1 = float(path.t[k]), float(path.t[k + 1])
        dt = t1 - t0
        k1 = rhs(t0, g)
        k2 = rhs(t0 + 0.5 * dt, g + 0.5 * dt * k1)
        k3 = rhs(t0 + 0.5 * dt, g + 0.5 * dt * k2)
        k4 = rhs(t1, g + dt * k3)
        g = g + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(g) or abs(g) > cap:
            t_div = t1 + (1.0 / abs(g) if np.isfinite(g) and g != 0 else 0.0)
            return RiccatiPrediction(np.array(ts), np.array(gs), True, t_div)
        ts.append(t1)
        gs.append(g)
    return RiccatiPrediction(np.array(ts), np.array(gs))


@dataclass
class InfluenceDomain:
    """D(Omega, T) boundaries sampled on the trajectory's time grid.

    left follows the 2-family from a, right the 1-family from b; +-inf marks
    a boundary that has left the stored radial extent on that side.
    """

    times: np.ndarray
    left: np.ndarray
    right: np.ndarray
    t_max: Optional[float] = None

    def mask_at(self, k: int, radii: np.ndarray) -> np.ndarray:
        if self.t_max is not None and self.times[k] > self.t_max:
            return np.zeros(len(radii), dtype=bool)
        return (radii >= self.left[k]) & (radii <= self.right[k])


def _boundary_curve(path: CharacteristicPath, times: np.ndarray) -> np.ndarray:
    out = np.full(len(times), np.nan)
    n = len(path.t)
    out[:n] = path.r
    if n < len(times):
        out[n:] = np.inf if path.exited == "right" else -np.inf
    return out


def influence_domain(a: float, b: float, traj: FieldTrajectory) -> InfluenceDomain:
    """Domain of influence of [a, b]: left edge psi(a, .), right edge xi(b, .)."""
    if not a < b:
        raise DomainError("need a < b")
    left_path = advance_flow_map(Family.TWO, a, traj)
    right_path = advance_flow_map(Family.ONE, b, traj)
    left = _boundary_curve(left_path, traj.times)
    right = _boundary_curve(right_path, traj.times)
    t_max = None
    with np.errstate(invalid="ignore"):
        gap = right - left
    for k in range(1, len(traj.times)):
        if np.isfinite(gap[k]) and gap[k] <= 0 < gap[k - 1] and np.isfinite(gap[k - 1]):
            w = gap[k - 1] / (gap[k - 1] - gap[k])
            t_max = float(traj.times[k - 1] + w * (traj.times[k] - traj.times[k - 1]))
            break
        if gap[k] <= 0 and not np.isfinite(gap[k]):
            t_max = float(traj.times[k])
            break
    return InfluenceDomain(traj.times.copy(), left, right, t_max)


@dataclass
class TransitionEvent:
    family: Family
    t_event: float
    r_event: float
    direction: Direction
    partner_sign: int


def transition_events(path: CharacteristicPath,
                      field_scale: Optional[float] = None) -> list:
    """Strict sign changes of the path's own gradient variable.

    A change registers only when |gvar| exceeds EVENT_SIGN_TOL * field_scale
    on both sides (round-off chatter at the R/C boundary is ignored).
    """
    g = path.gvar
    if field_scale is None:
        finite = g[np.isfinite(g)]
        field_scale = float(np.max(np.abs(finite))) if finite.size else 1.0
    tol = EVENT_SIGN_TOL * max(field_scale, 1e-300)
    events = []
    last = None     # index of the last sample confirmed clear of the boundary
    for k in range(len(g)):
        if not np.isfinite(g[k]) or abs(g[k]) <= tol:
            continue
        if last is not None and np.sign(g[last]) != np.sign(g[k]):
            a, b = g[last], g[k]
            w = abs(a) / (abs(a) + abs(b))
            t_ev = float(path.t[last] + w * (path.t[k] - path.t[last]))
            r_ev = float(path.r[last] + w * (path.r[k] - path.r[last]))
            p = (1.0 - w) * path.partner[last] + w * path.partner[k]
            p_sign = 0 if (not np.isfinite(p) or abs(p) <= tol) else int(np.sign(p))
            direction = Direction.R_TO_C if a > 0 else Direction.C_TO_R
            events.append(TransitionEvent(path.family, t_ev, r_ev, direction, p_sign))
        last = k
    return events


def allowed_direction(regime: Regime, family: Family, partner_sign: int) -> Optional[Direction]:
    """The only transition direction the rule tables permit, if any."""
    if partner_sign == 0 or regime is Regime.DEGENERATE:
        return None
    partner_rarefactive = partner_sign > 0
    if regime is Regime.OUTWARD_SUPERSONIC:
        return Direction.C_TO_R if partner_rarefactive else Direction.R_TO_C
    if regime is Regime.INWARD_SUPERSONIC:
        return Direction.R_TO_C if partner_rarefactive else Direction.C_TO_R
    # subsonic: the rule depends on which family changes character
    if family is Family.TWO:
        return Direction.C_TO_R if partner_rarefactive else Direction.R_TO_C
    return Direction.R_TO_C if partner_rarefactive else Direction.C_TO_R


def check_transition_rules(events: Sequence[TransitionEvent], regime: Regime) -> list:
    """Events violating the per-regime transition tables.

    Events whose partner variable sits on the R/C boundary (sign 0) are not
    judged; degenerate-regime events are likewise skipped.
    """
    violations = []
    for ev in events:
        allowed = allowed_direction(regime, ev.family, ev.partner_sign)
        if allowed is not None and ev.direction is not allowed:
            violations.append(ev)
    return violations
