"""Command-line entry points.

One umbrella command with subcommands (``antkinetics particles ...``), plus
thin console-script aliases so each tool is callable by its own name
(``particles --config cfg.json --out dir``). All configuration comes from
plain-text JSON files with explicit keys.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import io, linstab, meanfield, observables, particles, stationary, sweep
from .params import (ParameterError, load_config, params_from_config,
                     physical_from_dict, scaled_from_dict, scaled_to_dict)


def _out_dir(path):
    os.makedirs(path, exist_ok=True)
    return path


def cmd_particles(args) -> int:
    cfg = load_config(args.config)
    params = params_from_config(cfg) if "scaled" in cfg else \
        physical_from_dict(cfg["physical"])
    sim = particles.SimConfig(
        params=params,
        dt=cfg["dt"], t_max=cfg["t_max"],
        record_every=int(cfg.get("record_every", 100)),
        seed=int(args.seed if args.seed is not None else cfg.get("seed", 0)),
        n=cfg.get("n"), box=cfg.get("box", 1.0))
    rec = particles.run_trajectory(sim)
    out = _out_dir(args.out)

    def rows(coords):
        for m, t in enumerate(rec.times):
            for i in range(coords.shape[1]):
                yield [io.fmt(t), io.fmt(i), io.fmt(coords[m, i, 0]),
                       io.fmt(coords[m, i, 1]), io.fmt(rec.angles[m, i])]

    io.write_csv(os.path.join(out, "trajectory.csv"),
                 ["t", "i", "x", "y", "theta"], rows(rec.wrapped))
    io.write_csv(os.path.join(out, "trajectory_unwrapped.csv"),
                 ["t", "i", "x", "y", "theta"], rows(rec.unwrapped))
    meta = dict(rec.meta)
    meta["near_singular_total"] = rec.near_singular_total
    meta["code_version"] = _version()
    io.write_json(os.path.join(out, "metadata.json"), meta)
    return 0


def cmd_meanfield(args) -> int:
    cfg = load_config(args.config)
    p = params_from_config(cfg)
    seed = int(args.seed if args.seed is not None else cfg.get("seed", 0))
    nx = int(cfg.get("nx", 31))
    ny = int(cfg.get("ny", 31))
    ntheta = int(cfg.get("ntheta", 21))
    grid = meanfield.random_initial_grid(nx, ny, ntheta, seed)
    res = meanfield.evolve(
        grid, cfg["t_max"], p,
        mode=cfg.get("mode", "adaptive"),
        dt=cfg.get("dt", 1e-5), cfl=cfg.get("cfl", 0.5),
        series_dt=cfg.get("series_dt"), snapshot_dt=cfg.get("snapshot_dt"))
    out = _out_dir(args.out)
    io.write_csv(os.path.join(out, "series.csv"),
                 ["t", "mass", "min_f", "max_f", "d_fstar", "P2"],
                 [[io.fmt(res.series[k][i]) for k in
                   ("t", "mass", "min_f", "max_f", "d_fstar", "P2")]
                  for i in range(len(res.series["t"]))])
    g = res.grid
    io.write_grid_dump(os.path.join(out, "final_f"), g.f, field_name="f",
                       time=g.time, dx=g.dx, dy=g.dy, dtheta=g.dtheta)
    st = meanfield.Stepper(nx, ny, ntheta, p)
    io.write_grid_dump(os.path.join(out, "final_rho"),
                       observables.spatial_density(g.f), field_name="rho",
                       time=g.time, dx=g.dx, dy=g.dy)
    io.write_grid_dump(os.path.join(out, "final_c"), st.chemical(g.f).values,
                       field_name="c", time=g.time, dx=g.dx, dy=g.dy)
    for snap in res.snapshots:
        tag = f"{snap['t']:.6f}".replace(".", "p")
        io.write_grid_dump(os.path.join(out, f"rho_t{tag}"), snap["rho"],
                           field_name="rho", time=snap["t"], dx=g.dx, dy=g.dy)
        io.write_grid_dump(os.path.join(out, f"f_t{tag}"), snap["f"],
                           field_name="f", time=snap["t"], dx=g.dx, dy=g.dy,
                           dtheta=g.dtheta)
    io.write_json(os.path.join(out, "metadata.json"), {
        "scaled": scaled_to_dict(p), "seed": seed,
        "nx": nx, "ny": ny, "ntheta": ntheta,
        "t_max": cfg["t_max"], "mode": cfg.get("mode", "adaptive"),
        "dt": cfg.get("dt", 1e-5), "cfl": cfg.get("cfl", 0.5),
        "n_steps": res.n_steps, "rng_algorithm": particles.RNG_ALGORITHM,
        "code_version": _version(),
    })
    return 0


def _dispersion_base(args) -> linstab.DispersionParams:
    return linstab.DispersionParams(
        D_T=args.d_t, alpha=args.alpha, lambda_=args.lam,
        gamma=1.0, Pe=1.0, n=args.n, omega=args.omega)


def cmd_linstab(args) -> int:
    if args.linstab_cmd == "line":
        base = _dispersion_base(args)
        pes = np.linspace(args.pe_min, args.pe_max, args.pe_steps)
        line = linstab.trace_instability_line(
            pes, base, bracket=(args.gamma_min, args.gamma_max), tol=args.tol)
        io.write_csv(args.out, ["Pe", "gamma_star", "n"],
                     [[io.fmt(pe), io.fmt(gs), io.fmt(args.n)]
                      for pe, gs in line])
        return 0
    if args.linstab_cmd == "adiabatic":
        pes = np.linspace(args.pe_min, args.pe_max, args.pe_steps)
        rows = [[io.fmt(pe),
                 io.fmt(linstab.adiabatic_threshold(pe, args.d_t, args.alpha,
                                                    args.omega)),
                 io.fmt(2)]
                for pe in pes]
        io.write_csv(args.out, ["Pe", "gamma_star", "n"], rows)
        return 0
    if args.linstab_cmd == "eigfun":
        base = _dispersion_base(args)
        dp = base.replace(gamma=args.gamma, Pe=args.pe)
        dr = linstab.dispersion(dp)
        grid = linstab.reconstruct_eigenfunction(dr, dp, args.nx, args.ntheta)
        io.write_grid_dump(args.out, grid, field_name="eigenfunction",
                           time=0.0, dx=1.0 / args.nx,
                           dy=2.0 * math.pi / args.ntheta,
                           extra={"axes": ["x", "theta"],
                                  "sigma_re": dr.sigma_max.real,
                                  "sigma_im": dr.sigma_max.imag})
        return 0
    raise ParameterError(f"unknown linstab subcommand {args.linstab_cmd}")


def cmd_stationary(args) -> int:
    cfg = load_config(args.config)
    p = params_from_config(cfg)
    state = stationary.solve_stationary(
        p, tol=cfg.get("tol", 1e-10), max_iter=int(cfg.get("max_iter", 200)),
        nx=int(cfg.get("nx", 64)), ntheta=int(cfg.get("ntheta", 64)),
        damping=cfg.get("damping", 1.0))
    out = _out_dir(args.out)
    io.write_grid_dump(os.path.join(out, "stationary_f"), state.f,
                       field_name="f_stationary", time=0.0,
                       dx=1.0 / state.nx, dy=2.0 * math.pi / state.ntheta,
                       extra={"axes": ["x", "theta"],
                              "residual": state.residual,
                              "converged": state.converged})
    io.write_csv(os.path.join(out, "c.csv"), ["x", "c"],
                 [[io.fmt(i / state.nx), io.fmt(state.c[i])]
                  for i in range(state.nx)])
    io.write_csv(os.path.join(out, "residuals.csv"), ["iteration", "residual"],
                 [[io.fmt(it), io.fmt(r)] for it, r in state.history])
    io.write_json(os.path.join(out, "metadata.json"), {
        "scaled": scaled_to_dict(p), "residual": state.residual,
        "iterations": state.iterations, "converged": state.converged,
        "code_version": _version(),
    })
    return 0 if state.converged else 3


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    base = scaled_from_dict(cfg["scaled"])
    spec = sweep.SweepSpec(
        base=base, gammas=cfg["gammas"], pes=cfg["pes"],
        seeds=tuple(cfg.get("seeds", sweep.DEFAULT_SEEDS)),
        t_max=cfg.get("t_max", 5.0),
        nx=int(cfg.get("nx", 31)), ny=int(cfg.get("ny", 31)),
        ntheta=int(cfg.get("ntheta", 21)),
        mode=cfg.get("mode", "adaptive"), dt=cfg.get("dt", 1e-5),
        cfl=cfg.get("cfl", 0.5),
        tau_h=cfg.get("tau_h", observables.TAU_H),
        tau_l=cfg.get("tau_l", observables.TAU_L))
    result = sweep.run_sweep(spec, _out_dir(args.out), jobs=args.jobs)
    if args.line is not None:
        _, rows = io.read_csv(args.line)
        merged = sweep.overlay_instability_line(
            result.pairs, [(r[0], r[1]) for r in rows])
        io.write_csv(os.path.join(args.out, "phase_with_line.csv"),
                     ["gamma", "Pe", "d_fstar_max", "P2_mean", "label",
                      "n_ok", "gamma_star"],
                     [[io.fmt(m["gamma"]), io.fmt(m["Pe"]),
                       io.fmt(m["d_fstar_max"]), io.fmt(m["P2_mean"]),
                       m["label"], io.fmt(m["n_ok"]), io.fmt(m["gamma_star"])]
                      for m in merged])
    return 0


def _version() -> str:
    try:
        from importlib.metadata import version
        return version("antkinetics")
    except Exception:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="antkinetics")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("particles", help="run the particle SDE simulation")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_particles)

    m = sub.add_parser("meanfield", help="evolve the kinetic PDE")
    m.add_argument("--config", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--seed", type=int, default=None)
    m.set_defaults(func=cmd_meanfield)

    ls = sub.add_parser("linstab", help="linear stability tools")
    lsub = ls.add_subparsers(dest="linstab_cmd", required=True)

    def _common(q):
        q.add_argument("--n", type=int, default=40)
        q.add_argument("--lambda", dest="lam", type=float, default=0.0)
        q.add_argument("--d-t", dest="d_t", type=float, default=0.01)
        q.add_argument("--alpha", type=float, default=1.0)
        q.add_argument("--omega", type=float, default=2.0 * math.pi)
        q.add_argument("--out", required=True)

    line = lsub.add_parser("line", help="trace gamma*(Pe)")
    line.add_argument("--pe-min", type=float, required=True)
    line.add_argument("--pe-max", type=float, required=True)
    line.add_argument("--pe-steps", type=int, default=20)
    line.add_argument("--gamma-min", type=float, default=1.0)
    line.add_argument("--gamma-max", type=float, default=2000.0)
    line.add_argument("--tol", type=float, default=1e-8)
    _common(line)
    line.set_defaults(func=cmd_linstab)

    adia = lsub.add_parser("adiabatic", help="closed-form adiabatic line")
    adia.add_argument("--pe-min", type=float, required=True)
    adia.add_argument("--pe-max", type=float, required=True)
    adia.add_argument("--pe-steps", type=int, default=20)
    _common(adia)
    adia.set_defaults(func=cmd_linstab)

    eig = lsub.add_parser("eigfun", help="reconstruct the leading eigenfunction")
    eig.add_argument("--pe", type=float, required=True)
    eig.add_argument("--gamma", type=float, required=True)
    eig.add_argument("--nx", type=int, default=256)
    eig.add_argument("--ntheta", type=int, default=256)
    _common(eig)
    eig.set_defaults(func=cmd_linstab)

    st = sub.add_parser("stationary", help="1D stationary states")
    st.add_argument("--config", required=True)
    st.add_argument("--out", required=True)
    st.set_defaults(func=cmd_stationary)

    sw = sub.add_parser("sweep", help="seeded (gamma, Pe) sweep")
    sw.add_argument("--config", required=True)
    sw.add_argument("--out", required=True)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--line", default=None,
                    help="instability-line CSV to merge into phase table")
    sw.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _alias(name):
    def runner(argv=None) -> int:
        argv = list(sys.argv[1:] if argv is None else argv)
        return main([name] + argv)
    return runner


main_particles = _alias("particles")
main_meanfield = _alias("meanfield")
main_linstab = _alias("linstab")
main_stationary = _alias("stationary")
main_sweep = _alias("sweep")

if __name__ == "__main__":
    raise SystemExit(main())
