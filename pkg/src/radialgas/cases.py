"""Built-in experiment registry.

Cases 1-7 carry the published parameter sets: outward supersonic compression
and rarefaction on [10, 20], the periodic subsonic oscillations at three
amplitudes, the sea-level-scaled compression/rarefaction pair on [1, 5], and
the two inward-directed configurations.  Desk-scale default is 512 cells;
the full-resolution runs use 8192.
"""

from __future__ import annotations

import math

from .config import CaseConfig
from .errors import ConfigError
from .gas import GasModel
from .grid import RadialGrid
from .initial_data import PrescribedCharacterIC, SinusoidalIC
from .scheme import BoundaryCondition, SchemeParams

DEFAULT_CELLS = 512
PAPER_SCALE_CELLS = 8192

_AIR = dict(K=7.75e4, gamma=1.4, m=1)


def _prescribed(case_id, *, alpha0, beta0, v_a, h_c, b, L, t_end,
                K, gamma, m, r0=None):
    grid = RadialGrid(b, L, DEFAULT_CELLS)
    return CaseConfig(
        case_id=case_id,
        model=GasModel(K, gamma, m),
        grid=grid,
        bc=BoundaryCondition.NEUMANN_ZERO_GRADIENT,
        ic=PrescribedCharacterIC(alpha0, beta0, v_a, h_c, b if r0 is None else r0),
        params=SchemeParams(),
        t_end=t_end,
    )


def _sinusoidal(case_id, eps):
    return CaseConfig(
        case_id=case_id,
        model=GasModel(K=1.0, gamma=3.0, m=1),
        grid=RadialGrid(10.0, 10.0 + 2.0 * math.pi, DEFAULT_CELLS),
        bc=BoundaryCondition.PERIODIC,
        ic=SinusoidalIC(eps=eps, rho_const=5.0),
        params=SchemeParams(),
        t_end=10.0,
    )


_BUILDERS = {
    "case1": lambda: _prescribed("case1", alpha0=-3.0, beta0=-3.0, v_a=10.0, h_c=1.0,
                                 b=10.0, L=20.0, t_end=10.0, **_AIR),
    "case2": lambda: _prescribed("case2", alpha0=3.0, beta0=3.0, v_a=10.0, h_c=1.0,
                                 b=10.0, L=20.0, t_end=10.0, **_AIR),
    "case3_eps10": lambda: _sinusoidal("case3_eps10", 10.0),
    "case3_eps1": lambda: _sinusoidal("case3_eps1", 1.0),
    "case3_eps0.1": lambda: _sinusoidal("case3_eps0.1", 0.1),
    "case4": lambda: _prescribed("case4", alpha0=-1300.0, beta0=-1300.0, v_a=3400.0,
                                 h_c=343.0, b=1.0, L=5.0, t_end=0.01, **_AIR),
    "case5": lambda: _prescribed("case5", alpha0=1300.0, beta0=1300.0, v_a=3400.0,
                                 h_c=343.0, b=1.0, L=5.0, t_end=0.01, **_AIR),
    "case6": lambda: _prescribed("case6", alpha0=1300.0, beta0=-1300.0, v_a=-3400.0,
                                 h_c=343.0, b=1.0, L=5.0, t_end=0.01, **_AIR),
    "case7": lambda: _prescribed("case7", alpha0=1300.0, beta0=1300.0, v_a=-3400.0,
                                 h_c=343.0, b=1.0, L=5.0, t_end=0.01, **_AIR),
}


def case_ids():
    return sorted(_BUILDERS)


def builtin_case(case_id: str) -> CaseConfig:
    try:
        builder = _BUILDERS[case_id]
    except KeyError:
        raise ConfigError(
            f"unknown case {case_id!r}; valid ids: {', '.join(case_ids())}") from None
    return builder()
