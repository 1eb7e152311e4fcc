"""Experiment configuration: the CaseConfig record and the flat key=value
config-file format (one key per line, # comments, unknown keys rejected)."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Union

from .errors import ConfigError, DomainError
from .gas import GasModel
from .grid import RadialGrid
from .initial_data import PrescribedCharacterIC, SinusoidalIC
from .scheme import BoundaryCondition, SchemeParams

MIN_CELLS = 16
MIN_SNAPSHOTS = 2


@dataclass(frozen=True)
class CaseConfig:
    case_id: str
    model: GasModel
    grid: RadialGrid
    bc: BoundaryCondition
    ic: Union[PrescribedCharacterIC, SinusoidalIC]
    params: SchemeParams = field(default_factory=SchemeParams)
    t_end: float = 1.0
    snapshots: int = 100
    blowup_factor: float = 50.0
    heatmaps: bool = True
    curves: bool = True
    output_dir: Optional[str] = None

    def __post_init__(self):
        if self.grid.N < MIN_CELLS:
            raise DomainError(f"cells must be >= {MIN_CELLS}, got {self.grid.N}")
        if self.snapshots < MIN_SNAPSHOTS:
            raise DomainError(f"snapshots must be >= {MIN_SNAPSHOTS}, got {self.snapshots}")
        if not self.t_end >= 0:
            raise DomainError(f"t_end must be nonnegative, got {self.t_end}")
        if not self.blowup_factor > 1:
            raise DomainError(f"blowup_factor must exceed 1, got {self.blowup_factor}")
        if isinstance(self.ic, PrescribedCharacterIC):
            if not (self.grid.b <= self.ic.r0 <= self.grid.L):
                raise DomainError(f"r0={self.ic.r0} outside grid [{self.grid.b}, {self.grid.L}]")
        if isinstance(self.ic, SinusoidalIC) and self.bc is BoundaryCondition.PERIODIC:
            if not self.grid.spans_period():
                raise DomainError("periodic sinusoidal data needs a grid spanning 2*pi")

    def with_cells(self, n: int) -> "CaseConfig":
        return replace(self, grid=RadialGrid(self.grid.b, self.grid.L, n))


_KEYS = {
    "case_id": str,
    "K": float, "gamma": float, "m": int,
    "r_min": float, "r_max": float, "cells": int,
    "bc": str, "ic": str,
    "alpha0": float, "beta0": float, "v_a": float, "h_c": float, "r0": float,
    "eps": float, "rho_const": float,
    "varrho": float, "theta": float, "zeta1": float, "zeta2": float,
    "courant": float, "rk_order": int, "local_dissipation": bool,
    "t_end": float, "snapshots": int, "blowup_factor": float,
    "heatmaps": bool, "curves": bool, "output_dir": str,
}

_REQUIRED = ("K", "gamma", "m", "r_min", "r_max", "cells", "bc", "ic", "t_end")
_PRESCRIBED_KEYS = ("alpha0", "beta0", "v_a", "h_c", "r0")
_SINUSOIDAL_KEYS = ("eps", "rho_const")


def _parse_bool(raw: str, line: int) -> bool:
    low = raw.lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"expected a boolean, got {raw!r}", line)


def parse_config(text: str) -> CaseConfig:
    """Parse and fully validate a flat key=value configuration."""
    values: dict = {}
    lines: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected key=value, got {stripped!r}", lineno)
        key, _, rhs = stripped.partition("=")
        key = key.strip()
        rhs = rhs.strip()
        if key not in _KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        typ = _KEYS[key]
        try:
            if typ is bool:
                values[key] = _parse_bool(rhs, lineno)
            elif typ is str:
                values[key] = rhs
            else:
                values[key] = typ(rhs)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", lineno) from None
        lines[key] = lineno

    for key in _REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")

    def fail(key, message):
        raise ConfigError(message, lines.get(key))

    if values["bc"] not in ("neumann", "periodic"):
        fail("bc", f"bc must be neumann or periodic, got {values['bc']!r}")
    bc = (BoundaryCondition.PERIODIC if values["bc"] == "periodic"
          else BoundaryCondition.NEUMANN_ZERO_GRADIENT)

    kind = values["ic"]
    if kind not in ("prescribed", "sinusoidal"):
        fail("ic", f"ic must be prescribed or sinusoidal, got {kind!r}")
    needed = _PRESCRIBED_KEYS if kind == "prescribed" else _SINUSOIDAL_KEYS
    for key in needed:
        if key not in values:
            raise ConfigError(f"ic={kind} requires key {key!r}")
    other = _SINUSOIDAL_KEYS if kind == "prescribed" else _PRESCRIBED_KEYS
    for key in other:
        if key in values:
            fail(key, f"key {key!r} does not apply to ic={kind}")

    courant = values.get("courant", 0.1)
    if not 0 < courant < 0.5:
        fail("courant", f"courant must satisfy the strict bound 0 < courant < 1/2, got {courant}")
    theta = values.get("theta", 1.0)
    if not 1.0 <= theta <= 2.0:
        fail("theta", f"theta must satisfy 1 <= theta <= 2, got {theta}")

    try:
        model = GasModel(values["K"], values["gamma"], values["m"])
        grid = RadialGrid(values["r_min"], values["r_max"], values["cells"])
        params = SchemeParams(
            varrho=values.get("varrho", 1.0), theta=theta,
            zeta1=values.get("zeta1", 2.0), zeta2=values.get("zeta2", 2.0),
            courant=courant, rk_order=values.get("rk_order", 2),
            local_dissipation=values.get("local_dissipation", False))
        if kind == "prescribed":
            ic = PrescribedCharacterIC(values["alpha0"], values["beta0"],
                                       values["v_a"], values["h_c"], values["r0"])
        else:
            ic = SinusoidalIC(values["eps"], values["rho_const"])
        return CaseConfig(
            case_id=values.get("case_id", "custom"),
            model=model, grid=grid, bc=bc, ic=ic, params=params,
            t_end=values["t_end"],
            snapshots=values.get("snapshots", 100),
            blowup_factor=values.get("blowup_factor", 50.0),
            heatmaps=values.get("heatmaps", True),
            curves=values.get("curves", True),
            output_dir=values.get("output_dir"))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def config_text(cfg: CaseConfig) -> str:
    """Flat key=value rendering; parse_config round-trips it exactly."""
    out = [f"case_id = {cfg.case_id}"]
    out += [f"K = {cfg.model.K!r}", f"gamma = {cfg.model.gamma!r}", f"m = {cfg.model.m}"]
    out += [f"r_min = {cfg.grid.b!r}", f"r_max = {cfg.grid.L!r}", f"cells = {cfg.grid.N}"]
    out.append("bc = periodic" if cfg.bc is BoundaryCondition.PERIODIC else "bc = neumann")
    if isinstance(cfg.ic, PrescribedCharacterIC):
        out.append("ic = prescribed")
        out += [f"alpha0 = {cfg.ic.alpha0!r}", f"beta0 = {cfg.ic.beta0!r}",
                f"v_a = {cfg.ic.v_a!r}", f"h_c = {cfg.ic.h_c!r}", f"r0 = {cfg.ic.r0!r}"]
    else:
        out.append("ic = sinusoidal")
        out += [f"eps = {cfg.ic.eps!r}", f"rho_const = {cfg.ic.rho_const!r}"]
    p = cfg.params
    out += [f"varrho = {p.varrho!r}", f"theta = {p.theta!r}",
            f"zeta1 = {p.zeta1!r}", f"zeta2 = {p.zeta2!r}",
            f"courant = {p.courant!r}", f"rk_order = {p.rk_order}",
            f"local_dissipation = {str(p.local_dissipation).lower()}"]
    out += [f"t_end = {cfg.t_end!r}", f"snapshots = {cfg.snapshots}",
            f"blowup_factor = {cfg.blowup_factor!r}",
            f"heatmaps = {str(cfg.heatmaps).lower()}",
            f"curves = {str(cfg.curves).lower()}"]
    if cfg.output_dir is not None:
        out.append(f"output_dir = {cfg.output_dir}")
    return "\n".join(out) + "\n"
