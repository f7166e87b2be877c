"""Command-line surface: solve, integrate, and emit reproducible tables.

Subcommands
-----------
poles         pole table (CSV columns n,alpha,beta,E_n,Gamma_n,residual)
states        amplitudes and overlap coefficients per pole
snapshot      density profiles at one time plus a JSON sidecar
unitarity     I_in, I_ex and the unitarity deficit over the time list
forerunners   detected density peaks paired with predicted front positions
survival      survival and nonescape probabilities over the time list
special eval  spot-check w(z) and M(y) (debugging aid, hidden)

All numbers are printed in shortest round-trip form (pole table:
17 significant digits) so identical configurations produce
byte-identical files.  Exit status is 0 only if validation, solving and
every deficit bound pass.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from ._utils import fmt_17, fmt_shortest, write_csv
from .config import RunConfig, default_config, load_config
from .errors import ConfigError, ResdecayError
from .observables import (
    QuadratureConfig,
    integrate_internal,
    unitarity_check,
    survival_amplitude,
    wavefront_positions,
)
from .pole_solver import PotentialSpec, solve_poles
from .resonant_states import InitialState, norm_residual
from .special_functions import faddeyeva, transient_argument, transient_m
from .wavefunction import build_solution, psi_external_grid, psi_gamow, psi_internal_grid

__all__ = ["main"]


def _quadrature_config(cfg: RunConfig) -> QuadratureConfig:
    return QuadratureConfig(
        r_max=cfg.r_max,
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        min_points_per_oscillation=cfg.min_points_per_oscillation,
    )


def _build(cfg: RunConfig):
    spec = PotentialSpec(lam=cfg.lam, a=cfg.a)
    init = InitialState(q=cfg.q, a=cfg.a)
    return build_solution(spec, init, n_poles=cfg.n_poles, tol=cfg.solver_tol)


def _natural_times(cfg: RunConfig, sol):
    tau = sol.lifetime
    scale = tau if cfg.time_units == "lifetime" else 1.0
    return [t * scale for t in cfg.times], tau


def _emit_table(cfg: RunConfig, name: str, header: list[str], rows) -> None:
    """Write the table as CSV or JSON per config and echo CSV to stdout."""
    out_dir = cfg.output_path
    os.makedirs(out_dir, exist_ok=True)
    if cfg.output_format == "json":
        path = os.path.join(out_dir, f"{name}.json")
        payload = [dict(zip(header, row)) for row in rows]
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        path = os.path.join(out_dir, f"{name}.csv")
        write_csv(path, header, rows)
    print(",".join(header))
    for row in rows:
        print(",".join(row))
    print(f"[written {path}]", file=sys.stderr)


def cmd_poles(cfg: RunConfig) -> int:
    spec = PotentialSpec(lam=cfg.lam, a=cfg.a)
    poles = solve_poles(spec, cfg.n_poles, cfg.solver_tol)
    rows = [
        [str(p.n), fmt_17(p.alpha), fmt_17(p.beta), fmt_17(p.e_position),
         fmt_17(p.gamma), fmt_17(p.residual)]
        for p in poles
    ]
    _emit_table(cfg, "poles", ["n", "alpha", "beta", "E_n", "Gamma_n", "residual"], rows)
    return 0


def cmd_states(cfg: RunConfig) -> int:
    sol = _build(cfg)
    rows = []
    for s, c in zip(sol.states, sol.coeffs.C):
        rows.append([
            str(s.pole.n),
            fmt_shortest(s.A.real), fmt_shortest(s.A.imag),
            fmt_shortest(s.B.real), fmt_shortest(s.B.imag),
            fmt_shortest(c.real), fmt_shortest(c.imag),
            fmt_shortest(norm_residual(s)),
        ])
    _emit_table(cfg, "states",
                ["n", "Re_A", "Im_A", "Re_B", "Im_B", "Re_C", "Im_C",
                 "norm_residual"], rows)
    return 0


def _snapshot_grids(cfg: RunConfig):
    full = np.linspace(cfg.grid_r_min, cfg.grid_r_max, cfg.grid_n_points)
    a = cfg.a
    internal = np.unique(np.append(full[full <= a], a))
    internal = internal[internal >= 0.0]
    external = np.unique(np.append(a, full[full >= a]))
    return internal, external


def cmd_snapshot(cfg: RunConfig, t_value: float, with_gamow: bool) -> int:
    sol = _build(cfg)
    times, tau = _natural_times(cfg, sol)
    t = t_value * (tau if cfg.time_units == "lifetime" else 1.0)
    qcfg = _quadrature_config(cfg)
    snap = unitarity_check(sol, t, qcfg)
    internal, external = _snapshot_grids(cfg)
    psi_in = psi_internal_grid(sol, internal, t)
    psi_ex = psi_external_grid(sol, external, t)

    tag = cfg.label_for(t_value)
    out_dir = cfg.output_path
    os.makedirs(out_dir, exist_ok=True)

    header = ["r", "density", "re_psi", "im_psi"]
    rows_in = [
        [fmt_shortest(r), fmt_shortest(abs(p) ** 2),
         fmt_shortest(p.real), fmt_shortest(p.imag)]
        for r, p in zip(internal, psi_in)
    ]
    rows_ex = [
        [fmt_shortest(r), fmt_shortest(abs(p) ** 2),
         fmt_shortest(p.real), fmt_shortest(p.imag)]
        for r, p in zip(external, psi_ex)
    ]
    if with_gamow:
        # single-resonance comparison for the dominant pole n = q
        dominant = sol.states[min(cfg.q, cfg.n_poles) - 1]
        gam = np.array([psi_gamow(dominant.pole, dominant, float(r), t)
                        for r in external])
        header_ex = header + ["gamow_density"]
        rows_ex = [row + [fmt_shortest(abs(g) ** 2)]
                   for row, g in zip(rows_ex, gam)]
    else:
        header_ex = header

    path_in = os.path.join(out_dir, f"snapshot_t{tag}_internal.csv")
    path_ex = os.path.join(out_dir, f"snapshot_t{tag}_external.csv")
    write_csv(path_in, header, rows_in)
    write_csv(path_ex, header_ex, rows_ex)

    sidecar = {
        "t": t,
        "t_over_tau": t / tau,
        "q": cfg.q,
        "lambda": cfg.lam,
        "a": cfg.a,
        "I_in": snap.I_in,
        "I_ex": snap.I_ex,
        "deficit": snap.deficit,
        "tail_estimate": snap.tail_estimate,
        "wavefront_positions": [[n, r] for n, r in wavefront_positions(sol, t)]
        if t > 0.0 else [],
        "warnings": list(snap.warnings),
    }
    path_json = os.path.join(out_dir, f"snapshot_t{tag}.json")
    with open(path_json, "w") as fh:
        json.dump(sidecar, fh, indent=1)
        fh.write("\n")
    print(f"t = {fmt_shortest(t)} (t/tau = {fmt_shortest(t / tau)}): "
          f"I_in = {fmt_shortest(snap.I_in)}, I_ex = {fmt_shortest(snap.I_ex)}, "
          f"deficit = {fmt_shortest(snap.deficit)}")
    for w in snap.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"[written {path_in}, {path_ex}, {path_json}]", file=sys.stderr)
    return 0


def cmd_unitarity(cfg: RunConfig) -> int:
    sol = _build(cfg)
    times, tau = _natural_times(cfg, sol)
    qcfg = _quadrature_config(cfg)
    rows = []
    worst = 0.0
    for t in times:
        snap = unitarity_check(sol, t, qcfg)
        worst = max(worst, abs(snap.deficit))
        rows.append([
            fmt_shortest(t), fmt_shortest(t / tau),
            fmt_shortest(snap.I_in), fmt_shortest(snap.I_ex),
            fmt_shortest(snap.total), fmt_shortest(snap.deficit),
            fmt_shortest(snap.tail_estimate),
        ])
        for w in snap.warnings:
            print(f"warning (t = {fmt_shortest(t)}): {w}", file=sys.stderr)
    _emit_table(cfg, "unitarity",
                ["t", "t_over_tau", "I_in", "I_ex", "total", "deficit",
                 "tail_estimate"], rows)
    if worst > cfg.deficit_bound:
        print(f"unitarity deficit {fmt_shortest(worst)} exceeds bound "
              f"{fmt_shortest(cfg.deficit_bound)}", file=sys.stderr)
        return 1
    return 0


def cmd_forerunners(cfg: RunConfig, t_value: float) -> int:
    sol = _build(cfg)
    _, tau = _natural_times(cfg, sol)
    t = t_value * (tau if cfg.time_units == "lifetime" else 1.0)
    if t <= 0.0:
        raise ConfigError("forerunners requires t > 0")
    a = cfg.a
    r = np.linspace(a, cfg.grid_r_max, cfg.grid_n_points)
    density = np.abs(psi_external_grid(sol, r, t)) ** 2

    fronts = [(n, pos) for n, pos in wavefront_positions(sol, t)
              if pos <= cfg.grid_r_max]
    gaps = [b[1] - a_[1] for a_, b in zip(fronts, fronts[1:])]
    h = r[1] - r[0]
    if gaps and h > 0.05 * min(gaps):
        print(f"warning: grid spacing {fmt_shortest(h)} too coarse for the "
              f"front spacing {fmt_shortest(min(gaps))}; peak matching may "
              "degrade", file=sys.stderr)

    interior = (density[1:-1] > density[:-2]) & (density[1:-1] > density[2:])
    peak_idx = np.nonzero(interior)[0] + 1
    peak_pos = r[peak_idx]
    peak_val = density[peak_idx]

    # each detected maximum is assigned to the nearest predicted front;
    # the strongest assignee represents that front
    best: dict[int, tuple[float, float]] = {}
    front_pos = np.array([pos for _, pos in fronts])
    for pos, val in zip(peak_pos, peak_val):
        if front_pos.size == 0:
            break
        j = int(np.argmin(np.abs(front_pos - pos)))
        n = fronts[j][0]
        if n not in best or val > best[n][1]:
            best[n] = (pos, val)

    rows = []
    for n, pos in fronts:
        if n in best:
            found = best[n][0]
            rows.append([str(n), fmt_shortest(pos), fmt_shortest(found),
                         fmt_shortest((found - pos) / pos)])
        else:
            rows.append([str(n), fmt_shortest(pos), "", ""])
    _emit_table(cfg, f"forerunners_t{cfg.label_for(t_value)}",
                ["n", "r_predicted", "r_peak", "relative_offset"], rows)
    return 0


def cmd_survival(cfg: RunConfig) -> int:
    sol = _build(cfg)
    times, tau = _natural_times(cfg, sol)
    qcfg = _quadrature_config(cfg)
    rows = []
    for t in times:
        sv = survival_amplitude(sol, t, qcfg)
        p_in = integrate_internal(sol, t, qcfg)
        rows.append([fmt_shortest(t), fmt_shortest(t / tau),
                     fmt_shortest(sv.probability), fmt_shortest(p_in)])
    _emit_table(cfg, "survival", ["t", "t_over_tau", "S", "P_nonescape"], rows)
    return 0


def cmd_special_eval(args) -> int:
    if args.w is not None:
        re, im = args.w
        val = faddeyeva(complex(re, im))
        print(f"w(z): re = {fmt_shortest(val.real)}, im = {fmt_shortest(val.imag)}")
    if args.m is not None:
        r, a, t, kre, kim = args.m
        arg = transient_argument(r, a, t, complex(kre, kim))
        val = transient_m(arg)
        print(f"y: re = {fmt_shortest(arg.y.real)}, im = {fmt_shortest(arg.y.imag)}")
        print(f"M(y): re = {fmt_shortest(val.real)}, im = {fmt_shortest(val.imag)}")
    if args.w is None and args.m is None:
        print("nothing to evaluate; pass --w or --m", file=sys.stderr)
        return 2
    return 0


def _parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", default=argparse.SUPPRESS,
                        help="path to a key-value config file")
    shared.add_argument("--out-dir", default=argparse.SUPPRESS,
                        help="directory for output files")
    shared.add_argument("--format", choices=("csv", "json"),
                        default=argparse.SUPPRESS, help="table format")

    ap = argparse.ArgumentParser(
        prog="resdecay",
        description="Resonant-state expansion of delta-shell tunneling decay",
        parents=[shared],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("poles", parents=[shared],
                   help="solve and tabulate the complex poles")
    sub.add_parser("states", parents=[shared],
                   help="tabulate amplitudes and coefficients")

    snap = sub.add_parser("snapshot", parents=[shared],
                          help="density profiles at one time")
    snap.add_argument("--t", type=float, required=True,
                      help="time in the configured units")
    snap.add_argument("--gamow", action="store_true",
                      help="add a gamow_density comparison column")

    sub.add_parser("unitarity", parents=[shared],
                   help="I_in + I_ex over the time list")

    forer = sub.add_parser("forerunners", parents=[shared],
                           help="match density peaks to fronts")
    forer.add_argument("--t", type=float, required=True,
                       help="time in the configured units")

    sub.add_parser("survival", parents=[shared],
                   help="survival and nonescape probabilities")

    special = sub.add_parser("special", help=argparse.SUPPRESS)
    special_sub = special.add_subparsers(dest="special_command", required=True)
    ev = special_sub.add_parser("eval")
    ev.add_argument("--w", nargs=2, type=float, metavar=("RE", "IM"),
                    help="evaluate w(re + i im)")
    ev.add_argument("--m", nargs=5, type=float,
                    metavar=("R", "A", "T", "KRE", "KIM"),
                    help="evaluate M(y(r, a, t, kappa))")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config_path = getattr(args, "config", None)
        out_dir = getattr(args, "out_dir", None)
        out_format = getattr(args, "format", None)
        cfg = load_config(config_path) if config_path else default_config()
        from dataclasses import replace
        if out_dir:
            cfg = replace(cfg, output_path=out_dir)
        if out_format:
            cfg = replace(cfg, output_format=out_format)
        cfg = cfg.validate()

        if args.command == "poles":
            return cmd_poles(cfg)
        if args.command == "states":
            return cmd_states(cfg)
        if args.command == "snapshot":
            return cmd_snapshot(cfg, args.t, args.gamow)
        if args.command == "unitarity":
            return cmd_unitarity(cfg)
        if args.command == "forerunners":
            return cmd_forerunners(cfg, args.t)
        if args.command == "survival":
            return cmd_survival(cfg)
        if args.command == "special":
            return cmd_special_eval(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResdecayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
