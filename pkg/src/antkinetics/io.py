"""File formats: raw float64 grid dumps with JSON sidecars, and CSV tables.

A grid dump is a pair of files sharing a stem: ``<stem>.f64`` holds raw
little-endian 64-bit floats with the first (i) index varying fastest, and
``<stem>.json`` holds the metadata {nx, ny, dx, dy, field_name, time},
extended with {ntheta, dtheta} for kinetic grids.
"""

from __future__ import annotations

import csv
import json
import os

import numpy as np


def write_grid_dump(stem, values: np.ndarray, *, field_name: str, time: float,
                    dx: float, dy: float, dtheta: float | None = None,
                    extra: dict | None = None) -> str:
    stem = os.fspath(stem)
    values = np.asarray(values, dtype=np.float64)
    meta = {
        "nx": int(values.shape[0]),
        "ny": int(values.shape[1]),
        "dx": dx,
        "dy": dy,
        "field_name": field_name,
        "time": time,
    }
    if values.ndim == 3:
        meta["ntheta"] = int(values.shape[2])
        meta["dtheta"] = dtheta if dtheta is not None else 2.0 * np.pi / values.shape[2]
    elif values.ndim != 2:
        raise ValueError("grid dumps are 2D or 3D")
    if extra:
        meta.update(extra)
    with open(stem + ".f64", "wb") as fh:
        fh.write(np.ravel(values, order="F").astype("<f8").tobytes())
    with open(stem + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return stem + ".f64"


def read_grid_dump(stem):
    stem = os.fspath(stem)
    if stem.endswith(".f64") or stem.endswith(".json"):
        stem = stem.rsplit(".", 1)[0]
    with open(stem + ".json", "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    shape = [meta["nx"], meta["ny"]]
    if "ntheta" in meta:
        shape.append(meta["ntheta"])
    raw = np.fromfile(stem + ".f64", dtype="<f8")
    if raw.size != int(np.prod(shape)):
        raise ValueError(f"grid dump {stem}: expected {shape} values, got {raw.size}")
    return raw.reshape(shape, order="F"), meta


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def read_csv(path):
    """Returns (header, rows) with every cell parsed to float when possible."""
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = []
        for raw in reader:
            row = []
            for cell in raw:
                try:
                    row.append(float(cell))
                except ValueError:
                    row.append(cell)
            rows.append(row)
    return header, rows


def fmt(x) -> str:
    """Stable shortest-roundtrip float formatting for CSV output."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
