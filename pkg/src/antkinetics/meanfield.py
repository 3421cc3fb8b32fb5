"""Upwind finite-volume solver for the rescaled kinetic mean-field equation.

The equation is advanced in mobility form, d_t f + div(f U) = 0 with

    U = (-D_T d_x log f + Pe cos(theta),
         -D_T d_y log f + Pe sin(theta),
         -d_theta log f + gamma n(theta).grad c(x + lambda e(theta))),

on the periodic unit square times the circle, discretized by cell averages
f_{i,j,k}. Face velocities use centred differences of log f; fluxes are
upwinded (donor cell), so the update is conservative by construction and
positivity-preserving under the CFL bound. The chemical field is resolved
once per step from the angular marginal rho.

For lambda > 0 the torque uses the identity
n(theta).grad c(x + lambda e(theta)) = (1/lambda) d_theta[c(x + lambda
e(theta))], discretized as a centred theta-difference of bilinearly
interpolated samples of c; for lambda = 0 it falls back to centred spatial
gradients of c weighted by (-sin, cos) at face angles.

Time stepping is forward Euler, either with a fixed step or with the
adaptive bound dt = cfl * min(dx/max|Ux|, dy/max|Uy|, dth/max|Ut|,
dx^2/(4 D_T), dth^2/4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import backend, observables
from ._core_py import face_velocity_arrays
from .field import ChemicalField, gradient_centered, shift_tables, stencil_symbol
from .params import ScaledParams

LOG_FLOOR = 1e-12


class BlowupError(RuntimeError):
    """Time stepping produced NaN/Inf or an unusably small adaptive step."""


@dataclass
class KineticGrid:
    """Cell-averaged density on the periodic x-y-theta lattice (unit box)."""

    f: np.ndarray  # (nx, ny, ntheta)
    time: float = 0.0

    @property
    def nx(self) -> int:
        return self.f.shape[0]

    @property
    def ny(self) -> int:
        return self.f.shape[1]

    @property
    def ntheta(self) -> int:
        return self.f.shape[2]

    @property
    def dx(self) -> float:
        return 1.0 / self.nx

    @property
    def dy(self) -> float:
        return 1.0 / self.ny

    @property
    def dtheta(self) -> float:
        return 2.0 * math.pi / self.ntheta

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dy * self.dtheta

    def mass(self) -> float:
        return float(self.f.sum()) * self.cell_volume

    def copy(self) -> "KineticGrid":
        return KineticGrid(f=self.f.copy(), time=self.time)


def uniform_grid(nx: int, ny: int, ntheta: int) -> KineticGrid:
    """The homogeneous state f* = 1/(2 pi), unit mass on the unit box."""
    f = np.full((nx, ny, ntheta), observables.F_STAR)
    return KineticGrid(f=f)


def random_initial_grid(nx: int, ny: int, ntheta: int, seed: int) -> KineticGrid:
    """i.i.d. uniform [0,1] cell values, normalized to unit mass.

    Uses the counter-based Philox generator so runs are reproducible from
    the recorded seed alone.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    f = rng.random((nx, ny, ntheta))
    f /= f.sum() * (1.0 / nx) * (1.0 / ny) * (2.0 * math.pi / ntheta)
    return KineticGrid(f=f)


def upwind_flux(u_face, f_left, f_right):
    """Donor-cell flux u+ f_left + u- f_right."""
    u_face = np.asarray(u_face, dtype=np.float64)
    return (np.maximum(u_face, 0.0) * f_left + np.minimum(u_face, 0.0) * f_right)


class Stepper:
    """Precomputed tables and buffers for repeated right-hand-side calls."""

    def __init__(self, nx: int, ny: int, ntheta: int, p: ScaledParams):
        self.p = p
        self.nx, self.ny, self.nt = nx, ny, ntheta
        self.dx = 1.0 / nx
        self.dy = 1.0 / ny
        self.dth = 2.0 * math.pi / ntheta
        th = 2.0 * np.pi * np.arange(ntheta) / ntheta
        self.costh = np.cos(th)
        self.sinth = np.sin(th)
        self.coshalf = np.cos(th + 0.5 * self.dth)
        self.sinhalf = np.sin(th + 0.5 * self.dth)
        self.symbol = stencil_symbol(p.alpha, nx, ny, self.dx, self.dy)
        self._dummy = np.zeros((1, 1))
        if p.lambda_ > 0.0:
            self.shift = shift_tables(ntheta, p.lambda_, self.dx, self.dy)
            self.cshift = np.empty((nx, ny, ntheta))
        else:
            self.shift = None
            self.cshift = np.zeros((1, 1, 1))
        self.rhs_buf = np.empty((nx, ny, ntheta))

    def chemical(self, f: np.ndarray) -> ChemicalField:
        rho = self.dth * f.sum(axis=2)
        c = np.fft.irfft2(np.fft.rfft2(rho) / self.symbol, s=rho.shape)
        return ChemicalField(values=c, dx=self.dx, dy=self.dy)

    def rhs(self, f: np.ndarray):
        """Returns (rhs_view, speeds, chemical field); rhs_view is reused."""
        p = self.p
        c = self.chemical(f)
        if p.lambda_ > 0.0:
            bi, bj, wi, wj = self.shift
            backend.shifted_values(c.values, bi, bj, wi, wj, out=self.cshift)
            dcdx = dcdy = self._dummy
        else:
            dcdx, dcdy = gradient_centered(c)
        logf = np.log(np.maximum(f, LOG_FLOOR))
        speeds = backend.fv_rhs_core(
            f, logf, dcdx, dcdy, self.cshift,
            self.costh, self.sinth, self.coshalf, self.sinhalf,
            p.D_T, p.Pe, p.gamma, p.lambda_, self.dx, self.dy, self.dth,
            self.rhs_buf)
        return self.rhs_buf, speeds, c


def face_velocities(grid: KineticGrid, c: ChemicalField, p: ScaledParams):
    """Face velocity grids (Ux, Uy, Utheta).

    Ux[i, j, k] lives on the face between cells i and i+1 (periodic), and
    likewise for the other directions.
    """
    st = Stepper(grid.nx, grid.ny, grid.ntheta, p)
    if p.lambda_ > 0.0:
        bi, bj, wi, wj = st.shift
        cshift = backend.shifted_values(c.values, bi, bj, wi, wj)
        dcdx = dcdy = st._dummy
    else:
        cshift = st.cshift
        dcdx, dcdy = gradient_centered(c)
    logf = np.log(np.maximum(grid.f, LOG_FLOOR))
    return face_velocity_arrays(
        logf, dcdx, dcdy, cshift, st.costh, st.sinth, st.coshalf, st.sinhalf,
        p.D_T, p.Pe, p.gamma, p.lambda_, st.dx, st.dy, st.dth)


def fv_rhs(grid: KineticGrid, p: ScaledParams) -> np.ndarray:
    """Conservative finite-volume time derivative df/dt."""
    st = Stepper(grid.nx, grid.ny, grid.ntheta, p)
    rhs, _, _ = st.rhs(grid.f)
    return rhs.copy()


def adaptive_dt(speeds, spacings, p: ScaledParams, cfl: float = 0.5,
                dt_min: float = 1e-9, dt_max: float = math.inf) -> float:
    """CFL + diffusion time-step bound, clamped to [dt_min, dt_max]."""
    umx, umy, umt = speeds
    dx, dy, dth = spacings
    cands = [dx * dx / (4.0 * p.D_T), dth * dth / 4.0]
    if umx > 0:
        cands.append(dx / umx)
    if umy > 0:
        cands.append(dy / umy)
    if umt > 0:
        cands.append(dth / umt)
    dt = cfl * min(cands)
    if dt < dt_min:
        raise BlowupError(
            f"adaptive step {dt:.3e} fell below dt_min={dt_min:.3e} "
            f"(speeds {umx:.3e}, {umy:.3e}, {umt:.3e})")
    return min(dt, dt_max)


@dataclass
class EvolveResult:
    grid: KineticGrid
    series: dict = dc_field(repr=False, default_factory=dict)
    snapshots: list = dc_field(repr=False, default_factory=list)
    n_steps: int = 0


def evolve(grid: KineticGrid, t_max: float, p: ScaledParams, *,
           mode: str = "adaptive", dt: float = 1e-5, cfl: float = 0.5,
           dt_min: float = 1e-9, dt_max: float = math.inf,
           series_dt: float | None = None, snapshot_dt: float | None = None,
           max_steps: int | None = None) -> EvolveResult:
    """Forward-Euler time marching from ``grid`` up to time t_max.

    mode "fixed" uses the constant step ``dt`` (exact-reproduction runs);
    mode "adaptive" recomputes the step each iteration from the current
    face speeds. Scalar series rows (t, mass, min f, max f, distance
    to homogeneous, P2) are recorded every ``series_dt`` time units
    (default t_max/200, 0 records every step); full snapshots of (f, rho, c)
    every ``snapshot_dt`` if given. Raises :class:`BlowupError` with the
    offending step index if the state stops being finite.
    """
    if mode not in ("fixed", "adaptive"):
        raise ValueError('mode must be "fixed" or "adaptive"')
    if series_dt is None:
        series_dt = t_max / 200.0
    st = Stepper(grid.nx, grid.ny, grid.ntheta, p)
    f = grid.f.astype(np.float64, copy=True)
    t = grid.time
    t_end = grid.time + t_max
    vol = grid.cell_volume
    series = {k: [] for k in ("t", "mass", "min_f", "max_f", "d_fstar", "P2")}
    snapshots = []

    def record_series(tv, fv):
        series["t"].append(tv)
        series["mass"].append(float(fv.sum()) * vol)
        series["min_f"].append(float(fv.min()))
        series["max_f"].append(float(fv.max()))
        series["d_fstar"].append(observables.distance_to_homogeneous(fv))
        _, p2s = observables.second_moment(fv)
        series["P2"].append(p2s)

    def record_snapshot(tv, fv):
        snapshots.append({
            "t": tv,
            "f": fv.copy(),
            "rho": observables.spatial_density(fv),
            "p": observables.polarisation(fv),
            "c": st.chemical(fv).values,
        })

    eps = 1e-12 * max(1.0, abs(t_end))
    record_series(t, f)
    next_series = t + series_dt if series_dt > 0 else t
    next_snap = t + snapshot_dt if snapshot_dt is not None else math.inf

    n = 0
    last_snap_t = None
    while t < t_end - eps:
        rhs, speeds, _ = st.rhs(f)
        if mode == "fixed":
            step = dt
        else:
            step = adaptive_dt(speeds, (st.dx, st.dy, st.dth), p, cfl,
                               dt_min, dt_max)
        step = min(step, t_end - t)
        f += step * rhs
        t += step
        n += 1
        fmax = float(f.max())
        if not math.isfinite(fmax):
            raise BlowupError(f"non-finite density at step {n}, t={t:.6g}")
        if series_dt == 0 or t >= next_series - eps:
            record_series(t, f)
            if series_dt > 0:
                while next_series <= t + eps:
                    next_series += series_dt
        if t >= next_snap - eps:
            record_snapshot(t, f)
            last_snap_t = t
            while next_snap <= t + eps:
                next_snap += snapshot_dt
        if max_steps is not None and n >= max_steps:
            break

    if not series["t"] or series["t"][-1] < t - eps:
        record_series(t, f)
    if snapshot_dt is not None and last_snap_t != t:
        record_snapshot(t, f)
    out_grid = KineticGrid(f=f, time=t)
    return EvolveResult(grid=out_grid,
                        series={k: np.asarray(v) for k, v in series.items()},
                        snapshots=snapshots, n_steps=n)
