"""Seeded (gamma, Pe) sweeps and phase-diagram aggregation.

Each cell of the sweep evolves the kinetic solver from a seeded random
initial condition to t_max and records the endstate observables. Runs are
stored under per-run directories keyed by a content hash of (parameters,
grid, seed, stepping), so interrupted sweeps resume by skipping completed
cells, and a blown-up run produces a failure row instead of aborting the
sweep.

Aggregation follows the phase-map convention: per (gamma, Pe) pair the
distance to the homogeneous state is the maximum over seeds and P2 is the
mean over seeds; the pair is then classified H/S/L.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import io, meanfield, observables
from .params import ScaledParams, scaled_to_dict

DEFAULT_SEEDS = (706, 1001, 4472, 5555, 6061, 8154, 9437, 9956)


@dataclass
class SweepSpec:
    base: ScaledParams
    gammas: list
    pes: list
    seeds: tuple = DEFAULT_SEEDS
    t_max: float = 5.0
    nx: int = 31
    ny: int = 31
    ntheta: int = 21
    mode: str = "adaptive"
    dt: float = 1e-5
    cfl: float = 0.5
    tau_h: float = observables.TAU_H
    tau_l: float = observables.TAU_L

    def __post_init__(self):
        if not self.gammas or not self.pes or not len(self.seeds):
            raise ValueError("gamma, Pe and seed lists must be non-empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be distinct")


@dataclass
class SweepResult:
    rows: list = dc_field(default_factory=list)    # per-seed dicts
    pairs: list = dc_field(default_factory=list)   # per-(gamma, Pe) dicts


def _cell_key(p: ScaledParams, spec: SweepSpec, seed: int) -> str:
    payload = {
        "params": scaled_to_dict(p),
        "grid": [spec.nx, spec.ny, spec.ntheta],
        "seed": seed,
        "t_max": spec.t_max,
        "mode": spec.mode,
        "dt": spec.dt,
        "cfl": spec.cfl,
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def run_cell(p: ScaledParams, spec: SweepSpec, seed: int, run_dir: str) -> dict:
    """Evolve one (gamma, Pe, seed) cell and persist its result."""
    os.makedirs(run_dir, exist_ok=True)
    row = {
        "gamma": p.gamma, "Pe": p.Pe, "seed": seed,
        "d_fstar": math.nan, "P2": math.nan, "label": "F",
        "ok": False, "error": "", "n_steps": 0,
    }
    try:
        grid = meanfield.random_initial_grid(spec.nx, spec.ny, spec.ntheta, seed)
        res = meanfield.evolve(grid, spec.t_max, p, mode=spec.mode,
                               dt=spec.dt, cfl=spec.cfl,
                               series_dt=spec.t_max / 100.0)
        d = observables.distance_to_homogeneous(res.grid.f)
        _, p2 = observables.second_moment(res.grid.f)
        row.update(d_fstar=d, P2=p2, ok=True, n_steps=res.n_steps,
                   label=observables.classify(d, p2, spec.tau_h, spec.tau_l).label)
        rho = observables.spatial_density(res.grid.f)
        io.write_grid_dump(os.path.join(run_dir, "final_rho"), rho,
                           field_name="rho", time=res.grid.time,
                           dx=1.0 / spec.nx, dy=1.0 / spec.ny)
        io.write_csv(os.path.join(run_dir, "series.csv"),
                     ["t", "mass", "min_f", "max_f", "d_fstar", "P2"],
                     [[io.fmt(res.series[k][i]) for k in
                       ("t", "mass", "min_f", "max_f", "d_fstar", "P2")]
                      for i in range(len(res.series["t"]))])
    except meanfield.BlowupError as exc:
        row["error"] = str(exc)
    io.write_json(os.path.join(run_dir, "result.json"), row)
    return row


def _cell_args(spec: SweepSpec, out_dir: str):
    for gamma in spec.gammas:
        for pe in spec.pes:
            p = ScaledParams(D_T=spec.base.D_T, Pe=pe, gamma=gamma,
                             lambda_=spec.base.lambda_, alpha=spec.base.alpha)
            for seed in spec.seeds:
                key = _cell_key(p, spec, seed)
                yield p, seed, os.path.join(out_dir, "runs", key)


def run_sweep(spec: SweepSpec, out_dir, jobs: int = 1) -> SweepResult:
    """Execute every (gamma, Pe, seed) cell, reusing completed run dirs.

    Writes sweep.csv (per-seed rows) and phase.csv (per-pair aggregates)
    under ``out_dir``. Individual run failures land in the tables as label
    "F" rows; only orchestration errors raise.
    """
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    pending = []
    rows = []
    for p, seed, run_dir in _cell_args(spec, out_dir):
        result_path = os.path.join(run_dir, "result.json")
        if os.path.exists(result_path):
            with open(result_path, "r", encoding="utf-8") as fh:
                rows.append(json.load(fh))
        else:
            pending.append((p, seed, run_dir))
    if pending:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futs = [pool.submit(run_cell, p, spec, seed, run_dir)
                        for p, seed, run_dir in pending]
                rows.extend(f.result() for f in futs)
        else:
            rows.extend(run_cell(p, spec, seed, run_dir)
                        for p, seed, run_dir in pending)

    rows.sort(key=lambda r: (r["gamma"], r["Pe"], r["seed"]))
    pairs = aggregate_pairs(rows, spec.tau_h, spec.tau_l)
    io.write_csv(os.path.join(out_dir, "sweep.csv"),
                 ["gamma", "Pe", "seed", "d_fstar", "P2", "label"],
                 [[io.fmt(r["gamma"]), io.fmt(r["Pe"]), io.fmt(r["seed"]),
                   io.fmt(r["d_fstar"]), io.fmt(r["P2"]), r["label"]]
                  for r in rows])
    io.write_csv(os.path.join(out_dir, "phase.csv"),
                 ["gamma", "Pe", "d_fstar_max", "P2_mean", "label", "n_ok"],
                 [[io.fmt(q["gamma"]), io.fmt(q["Pe"]), io.fmt(q["d_fstar_max"]),
                   io.fmt(q["P2_mean"]), q["label"], io.fmt(q["n_ok"])]
                  for q in pairs])
    return SweepResult(rows=rows, pairs=pairs)


def aggregate_pairs(rows, tau_h=observables.TAU_H, tau_l=observables.TAU_L):
    """Reduce per-seed rows to per-(gamma, Pe) aggregates (max d, mean P2)."""
    groups = {}
    for r in rows:
        groups.setdefault((r["gamma"], r["Pe"]), []).append(r)
    pairs = []
    for (gamma, pe), grp in sorted(groups.items()):
        ok = [r for r in grp if r["ok"]]
        if ok:
            d_max = max(r["d_fstar"] for r in ok)
            p2_mean = sum(r["P2"] for r in ok) / len(ok)
            label = observables.classify(d_max, p2_mean, tau_h, tau_l).label
        else:
            d_max = math.nan
            p2_mean = math.nan
            label = "F"
        pairs.append({"gamma": gamma, "Pe": pe, "d_fstar_max": d_max,
                      "P2_mean": p2_mean, "label": label, "n_ok": len(ok)})
    return pairs


def overlay_instability_line(pairs, line_points) -> list:
    """Join gamma*(Pe) onto the per-pair table for phase-diagram plotting.

    ``line_points`` holds (Pe, gamma_star) rows; Pe values not on the line
    grid are linearly interpolated.
    """
    line = np.asarray(line_points, dtype=np.float64)
    if line.ndim != 2 or line.shape[1] < 2 or line.shape[0] < 1:
        raise ValueError("line_points must be (m, 2) rows of (Pe, gamma_star)")
    order = np.argsort(line[:, 0])
    pe_grid = line[order, 0]
    gam_grid = line[order, 1]
    merged = []
    for q in pairs:
        gs = float(np.interp(q["Pe"], pe_grid, gam_grid))
        m = dict(q)
        m["gamma_star"] = gs
        merged.append(m)
    return merged
