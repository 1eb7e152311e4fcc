"""Run orchestration: single-case execution and mesh-refinement studies."""

from __future__ import annotations

import os
import time as _time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import CaseConfig, config_text
from .diagnostics import BlowupReport, detect_blowup, gradient_variables, \
    heatmap_accumulate, invariant_curve
from .errors import RadialGasError
from .gas import sound_speed
from .grid import conserved_from_primitive
from .initial_data import PrescribedCharacterIC, sinusoidal_profiles, synthesize_profiles
from .output import write_convergence_table, write_curve, write_events, write_heatmap, \
    write_manifest, write_snapshot, write_snapshot_index
from .scheme import AdvanceResult, SnapshotRecorder, advance, cfl_timestep

OUTPUT_ROOT_ENV = "RADIALGAS_OUTPUT_ROOT"

STATUS_COMPLETED = "completed"
STATUS_BLOWUP = "blowup-detected"
STATUS_ERROR = "error"


@dataclass
class RunReport:
    status: str
    output_dir: str
    config: CaseConfig
    snapshots: list
    events: list
    blowup: Optional[BlowupReport] = None
    error: Optional[str] = None
    result: Optional[AdvanceResult] = None


class StudyAborted(RadialGasError):
    def __init__(self, cells, detail):
        self.cells = cells
        super().__init__(f"convergence study aborted at mesh {cells}: {detail}")


def default_output_root() -> str:
    return os.environ.get(OUTPUT_ROOT_ENV, os.path.join(os.getcwd(), "runs"))


def resolve_output_dir(config: CaseConfig, output_dir: Optional[str]) -> str:
    if output_dir is not None:
        return output_dir
    if config.output_dir is not None:
        return config.output_dir
    return os.path.join(default_output_root(), config.case_id)


def _prepare_dir(out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    probe = os.path.join(out_dir, ".write-probe")
    with open(probe, "w") as fh:
        fh.write("ok")
    os.remove(probe)


def build_initial_field(config: CaseConfig):
    if isinstance(config.ic, PrescribedCharacterIC):
        return synthesize_profiles(config.ic, config.grid, config.model)
    return sinusoidal_profiles(config.ic, config.grid, config.model)


def run_case(config: CaseConfig, output_dir: Optional[str] = None) -> RunReport:
    """Synthesize, advance, diagnose, and write the artifact set.

    Blow-up is a successful and reported outcome; module errors are caught
    and recorded in the manifest with status 'error'.
    """
    out_dir = resolve_output_dir(config, output_dir)
    _prepare_dir(out_dir)   # fail before any compute if not writable
    t0 = _time.perf_counter()
    try:
        field0 = build_initial_field(config)
        state0 = conserved_from_primitive(field0, config.model)
        schedule = np.linspace(0.0, config.t_end, config.snapshots)
        recorder = SnapshotRecorder(config.grid, config.model, schedule[1:])
        recorder.record(0.0, cfl_timestep(state0, config.grid, config.params), state0)
        result = advance(state0, config.grid, config.model, config.params, config.bc,
                         config.t_end, observers=[recorder],
                         blowup_factor=config.blowup_factor)
        snapshots = recorder.snapshots
        if result.terminal is not None and snapshots[-1].time < result.t:
            try:
                recorder.record(result.t, cfl_timestep(result.state, config.grid,
                                                       config.params), result.state)
            except (RadialGasError, FloatingPointError, ZeroDivisionError):
                pass    # final state may be unusable after a positivity failure
    except RadialGasError as exc:
        timings = {"wall_s": _time.perf_counter() - t0}
        events: list = []
        write_manifest(out_dir, config_text(config), STATUS_ERROR, events, timings,
                       extra={"error": str(exc)})
        return RunReport(STATUS_ERROR, out_dir, config, [], events, error=str(exc))

    blowup = detect_blowup(snapshots, config.grid, config.blowup_factor)
    status = STATUS_BLOWUP if (result.terminal is not None or blowup.detected) \
        else STATUS_COMPLETED

    _write_artifacts(config, out_dir, snapshots, result)
    timings = {"wall_s": _time.perf_counter() - t0, "steps": result.steps,
               "t_final": result.t}
    extra = {"blowup": {"detected": blowup.detected, "t_detect": blowup.t_detect,
                        "cell": blowup.cell, "trigger": blowup.trigger}}
    write_manifest(out_dir, config_text(config), status, result.events, timings, extra)
    return RunReport(status, out_dir, config, snapshots, result.events, blowup,
                     result=result)


def _write_artifacts(config: CaseConfig, out_dir: str, snapshots, result) -> None:
    index = []
    alpha_rows, beta_rows = [], []
    for snap in snapshots:
        name = f"snapshot_{snap.index:04d}.csv"
        write_snapshot(snap.field, snap.time, os.path.join(out_dir, name), config.model)
        index.append((snap.index, snap.time, snap.dt, name))
        if config.curves:
            write_curve(invariant_curve(snap.field),
                        os.path.join(out_dir, f"curve_{snap.index:04d}.csv"))
        if config.heatmaps:
            g = gradient_variables(snap.field, config.grid, config.model)
            alpha_rows.append((snap.time, g.alpha))
            beta_rows.append((snap.time, g.beta))
    write_snapshot_index(index, os.path.join(out_dir, "snapshots.csv"))
    if config.heatmaps and alpha_rows:
        radii = config.grid.centers
        times, alpha_matrix = heatmap_accumulate(alpha_rows)
        _, beta_matrix = heatmap_accumulate(beta_rows)
        write_heatmap(alpha_matrix, times, radii,
                      os.path.join(out_dir, "heatmap_alpha.csv"))
        write_heatmap(beta_matrix, times, radii,
                      os.path.join(out_dir, "heatmap_beta.csv"))
    write_events(result.events, os.path.join(out_dir, "events.csv"))


def restrict_pairwise(values: np.ndarray) -> np.ndarray:
    """Conservative 2:1 restriction (pairwise cell averaging)."""
    return 0.5 * (values[0::2] + values[1::2])


def convergence_study(config: CaseConfig, meshes, output_dir: Optional[str] = None,
                      ic_builder=None):
    """L1 self-convergence orders for (rho, u, p, h) between consecutive meshes.

    Meshes must be ascending with each dividing the next.  The conserved
    state is restricted pairwise to the coarse grid and primitives are
    derived there, so quotient fields inherit the conservative comparison.
    ic_builder(cfg) -> PrimitiveField overrides the configured initial data
    (smooth-study profiles that the flat config schema cannot express).
    Returns {field: [(n_coarse, n_fine, error, order_or_None), ...]}.
    """
    meshes = list(meshes)
    if sorted(meshes) != meshes or len(meshes) < 2:
        raise StudyAborted(meshes, "need an ascending list of at least two meshes")
    for a, b in zip(meshes, meshes[1:]):
        if b % a != 0:
            raise StudyAborted(b, f"mesh {b} is not a multiple of {a}")

    states = {}
    for n in meshes:
        cfg = config.with_cells(n)
        field0 = build_initial_field(cfg) if ic_builder is None else ic_builder(cfg)
        state0 = conserved_from_primitive(field0, cfg.model)
        result = advance(state0, cfg.grid, cfg.model, cfg.params, cfg.bc, cfg.t_end,
                         blowup_factor=cfg.blowup_factor)
        if result.terminal is not None:
            raise StudyAborted(n, result.terminal.kind)
        states[n] = (cfg.grid, result.state)

    def primitives_on(grid, s, q, model):
        rho = s / grid.centers ** model.m
        u = q / s
        return {"rho": rho, "u": u, "p": model.K * rho ** model.gamma,
                "h": sound_speed(rho, model)}

    errors = {name: [] for name in ("rho", "u", "p", "h")}
    for nc, nf in zip(meshes[:-1], meshes[1:]):
        grid_c, state_c = states[nc]
        grid_f, state_f = states[nf]
        s_f, q_f = state_f.s, state_f.q
        step = nf // nc
        for _ in range(int(np.log2(step))):
            s_f, q_f = restrict_pairwise(s_f), restrict_pairwise(q_f)
        coarse = primitives_on(grid_c, state_c.s, state_c.q, config.model)
        fine = primitives_on(grid_c, s_f, q_f, config.model)
        norms = {name: float(np.sum(np.abs(coarse[name])) * grid_c.dr) for name in errors}
        # a resting gas has zero velocity norm; the sound speed is the
        # natural velocity scale for the round-off test
        norms["u"] = max(norms["u"], norms["h"])
        for name in errors:
            err = float(np.sum(np.abs(coarse[name] - fine[name])) * grid_c.dr)
            errors[name].append((nc, nf, err, norms[name]))

    table = {}
    rows = []
    for name, errs in errors.items():
        entries = []
        for k, (nc, nf, err, norm) in enumerate(errs):
            order = None
            if k > 0:
                prev = errs[k - 1][2]
                if max(err, prev) < 1e-13 * max(norm, 1e-300):
                    order = "exact"     # both pairs at round-off of the field
                elif err > 0:
                    order = float(np.log2(prev / err))
            entries.append((nc, nf, err, order))
            rows.append((name, nc, nf, err,
                         "" if order is None else
                         (order if isinstance(order, str) else format(order, ".6f"))))
        table[name] = entries

    if output_dir is not None:
        _prepare_dir(output_dir)
        write_convergence_table(rows, os.path.join(output_dir, "convergence.csv"))
    return table
