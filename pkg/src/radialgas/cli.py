"""Command-line interface.

Verbs: run <case-id|config-path>, list-cases, check <config>, converge
<config> --meshes a,b,c.  Exit codes: 0 completed, 3 blow-up detected,
1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .cases import PAPER_SCALE_CELLS, builtin_case, case_ids
from .config import CaseConfig, parse_config
from .errors import RadialGasError
from .runner import STATUS_BLOWUP, STATUS_COMPLETED, StudyAborted, convergence_study, \
    resolve_output_dir, run_case

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2
EXIT_BLOWUP = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(ref: str) -> CaseConfig:
    if os.path.exists(ref):
        with open(ref, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    return builtin_case(ref)


def _apply_overrides(cfg: CaseConfig, args) -> CaseConfig:
    if getattr(args, "paper_scale", False):
        cfg = cfg.with_cells(PAPER_SCALE_CELLS)
    if getattr(args, "cells", None):
        cfg = cfg.with_cells(args.cells)
    if getattr(args, "t_end", None) is not None:
        cfg = replace(cfg, t_end=args.t_end)
    if getattr(args, "snapshots", None):
        cfg = replace(cfg, snapshots=args.snapshots)
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radialgas",
                     description="Radially symmetric isentropic gas dynamics harness")
    sub = parser.add_subparsers(dest="verb", required=True)

    run = sub.add_parser("run", help="run a built-in case or a config file")
    run.add_argument("case", help="built-in case id or path to a config file")
    run.add_argument("-o", "--output", help="output directory")
    run.add_argument("--cells", type=int, help="override cell count")
    run.add_argument("--paper-scale", action="store_true",
                     help=f"use the full {PAPER_SCALE_CELLS}-cell resolution")
    run.add_argument("--t-end", type=float, dest="t_end", help="override end time")
    run.add_argument("--snapshots", type=int, help="override snapshot count")

    sub.add_parser("list-cases", help="list built-in case ids")

    check = sub.add_parser("check", help="validate a config without running")
    check.add_argument("config", help="built-in case id or config path")

    conv = sub.add_parser("converge", help="mesh-refinement study")
    conv.add_argument("config", help="built-in case id or config path")
    conv.add_argument("--meshes", required=True,
                      help="comma-separated ascending cell counts, e.g. 256,512,1024")
    conv.add_argument("-o", "--output", help="output directory")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.verb == "list-cases":
            for cid in case_ids():
                print(cid)
            return EXIT_OK

        if args.verb == "check":
            cfg = _load_config(args.config)
            print(f"ok: {cfg.case_id} ({cfg.grid.N} cells, t_end={cfg.t_end})")
            return EXIT_OK

        if args.verb == "run":
            cfg = _apply_overrides(_load_config(args.case), args)
            report = run_case(cfg, args.output)
            print(f"{report.status}: artifacts in {report.output_dir}")
            if report.blowup is not None and report.blowup.detected:
                print(f"blow-up at t = {report.blowup.t_detect:.6g} "
                      f"(cell {report.blowup.cell}, {report.blowup.trigger})")
            if report.status == STATUS_COMPLETED:
                return EXIT_OK
            if report.status == STATUS_BLOWUP:
                return EXIT_BLOWUP
            print(f"error: {report.error}", file=sys.stderr)
            return EXIT_RUNTIME

        if args.verb == "converge":
            cfg = _load_config(args.config)
            try:
                meshes = [int(v) for v in args.meshes.split(",")]
            except ValueError:
                print("error: --meshes expects integers", file=sys.stderr)
                return EXIT_USAGE
            out = args.output or os.path.join(resolve_output_dir(cfg, None), "convergence")
            table = convergence_study(cfg, meshes, out)
            for name, entries in sorted(table.items()):
                for nc, nf, err, order in entries:
                    msg = f"{name}: N {nc}->{nf}  L1 {err:.6e}"
                    if order is not None:
                        msg += f"  order {order}" if isinstance(order, str) \
                            else f"  order {order:.3f}"
                    print(msg)
            print(f"study table in {out}")
            return EXIT_OK
    except StudyAborted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except RadialGasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
