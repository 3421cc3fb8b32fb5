#!/usr/bin/env python3
"""Regenerate the frontend test fixtures from the primary CLI.

Run from this directory with the antkinetics package installed:

    python generate.py

Everything below goes through the primary component's command-line
interfaces and documented file formats only; the frontend tests then consume
the stored outputs without touching the primary again.
"""

import json
import os
import sys

from antkinetics.cli import main

HERE = os.path.dirname(os.path.abspath(__file__))


def cfg(name, payload):
    path = os.path.join(HERE, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
    return path


def run(args):
    print("+ antkinetics", " ".join(args))
    rc = main(args)
    if rc != 0:
        sys.exit(f"command failed with exit code {rc}")


SCALED = {"D_T": 0.01, "gamma": 325.0, "lambda": 0.1, "alpha": 1.0}


def meanfield_run(tag, pe, seed, snapshots=False):
    payload = {
        "scaled": dict(SCALED, Pe=pe),
        "nx": 31, "ny": 31, "ntheta": 21,
        "t_max": 5.0, "mode": "adaptive", "seed": seed,
        "series_dt": 0.05,
    }
    if snapshots:
        payload["snapshot_dt"] = 1.25
    run(["meanfield", "--config", cfg(f"{tag}.json", payload),
         "--out", os.path.join(HERE, tag)])


def main_gen():
    # instability lines (dispersion figure + phase overlay)
    run(["linstab", "line", "--pe-min", "0.5", "--pe-max", "5.0",
         "--pe-steps", "10", "--n", "2", "--lambda", "0.0",
         "--out", os.path.join(HERE, "line_n2_lam0.csv")])
    run(["linstab", "line", "--pe-min", "0.5", "--pe-max", "5.0",
         "--pe-steps", "10", "--n", "40", "--lambda", "0.1",
         "--out", os.path.join(HERE, "line_n40_lam01.csv")])

    # leading eigenfunction at the lane point
    run(["linstab", "eigfun", "--pe", "3.5", "--gamma", "325.0",
         "--lambda", "0.1", "--n", "40", "--nx", "64", "--ntheta", "64",
         "--out", os.path.join(HERE, "eigfun")])

    # particle trajectories (look-ahead cluster)
    run(["particles", "--config", cfg("particles.json", {
        "physical": {"v0": 7.0, "D_T_phys": 1e-4, "D_R": 1.0, "D": 1.0,
                     "alpha_phys": 1.0, "eta": 1.0, "gamma_phys": 300.0,
                     "lambda_phys": 0.1, "L_box": 1.0, "N": 8},
        "dt": 1e-5, "t_max": 0.05, "record_every": 100, "seed": 1}),
        "--out", os.path.join(HERE, "particles")])

    # kinetic endstates: lane (with snapshots for the evolution panels),
    # spot, and the bistable pair
    meanfield_run("run_lane", 3.5, 706, snapshots=True)
    meanfield_run("run_spot", 1.5, 706)
    meanfield_run("run_bi_a", 2.5, 706)
    meanfield_run("run_bi_b", 2.5, 9956)

    # small seeded sweep (phase diagram + mosaics); gamma and Pe in the
    # base block are placeholders overridden per sweep cell
    run(["sweep", "--config", cfg("sweep.json", {
        "scaled": dict(SCALED, Pe=1.0),
        "gammas": [30.0, 325.0], "pes": [1.5, 3.5],
        "seeds": [706, 9956], "t_max": 5.0,
        "nx": 31, "ny": 31, "ntheta": 21, "mode": "adaptive"}),
        "--out", os.path.join(HERE, "sweep"),
        "--line", os.path.join(HERE, "line_n40_lam01.csv")])

    # stationary lane (supercritical so the structure is non-trivial)
    run(["stationary", "--config", cfg("stationary.json", {
        "scaled": {"D_T": 0.1, "Pe": 5.0, "gamma": 300.0, "lambda": 0.1,
                   "alpha": 1.0},
        "nx": 64, "ntheta": 64, "tol": 1e-9, "max_iter": 300}),
        "--out", os.path.join(HERE, "stationary")])


if __name__ == "__main__":
    main_gen()
