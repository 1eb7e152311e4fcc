"""Radially symmetric isentropic gas dynamics: a finite-volume solver with a
characteristic-level verification harness.

The package simulates the r^m-weighted conservation form of the isentropic
Euler equations with a semi-discrete Lagrangian-Eulerian scheme, synthesizes
initial data from prescribed per-family gradient values, and checks
wave-character structure (invariant sign domains, transition restrictions,
finite-time gradient blow-up bounds) against the computed fields.
"""

__version__ = "0.1.0"

from .gas import (GasModel, PrimitivePoint, Regime, RiemannPair, SpeedPair,  # noqa: F401
                  characteristic_speeds, classify_regime, density_from_sound_speed,
                  pressure, primitive_from_conserved, riemann_invariants, sound_speed)
from .grid import (ConservedField, PrimitiveField, RadialGrid,  # noqa: F401
                   conserved_from_primitive, primitive_from_conserved_field)
from .initial_data import (PrescribedCharacterIC, SinusoidalIC,  # noqa: F401
                           residual_check, sinusoidal_profiles, synthesize_profiles)
from .scheme import (AdvanceResult, BoundaryCondition, SchemeParams, Snapshot,  # noqa: F401
                     SnapshotRecorder, advance, cfl_timestep, dissipation_coefficient,
                     limited_slopes, minmod3, numerical_flux, pressure_gradient_source,
                     reconstruct_interfaces, semidiscrete_rhs, ssp_rk2_step, ssp_rk3_step)
from .diagnostics import (BlowupReport, CompressionBound, GradientField,  # noqa: F401
                          WaveCharacter, compression_bound, detect_blowup, gradient_variables,
                          heatmap_accumulate, invariant_curve, singularity_time_bound,
                          speed_bounds_check, strong_compression_threshold)
from .characteristics import (CharacteristicPath, Direction, Family,  # noqa: F401
                              FieldTrajectory, InfluenceDomain, RiccatiPrediction,
                              TrajectoryRecorder, TransitionEvent, advance_flow_map,
                              check_transition_rules, influence_domain,
                              riccati_along_path, transition_events)
from .config import CaseConfig, config_text, parse_config  # noqa: F401
from .cases import builtin_case, case_ids  # noqa: F401
from .runner import RunReport, convergence_study, run_case  # noqa: F401
