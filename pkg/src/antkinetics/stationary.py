"""Stationary y-independent states via an alternating fixed-point loop.

Seeks f(x, theta) >= 0 with unit mass and c(x) solving

    0 = d_x[D_T d_x f - Pe cos(theta) f]
        + d_theta[d_theta f + gamma sin(theta) (d_x c)(x + lambda cos(theta)) f],
    0 = d_x^2 c - alpha c + rho,   rho(x) = int f dtheta,

on the periodic unit interval times the circle. The loop alternates a
mass-constrained linear solve for f at frozen c with the 1D screened-Poisson
solve for c at frozen rho, starting from c0(x) = 1 - cos(2 pi x)/(2 pi),
until the total residual (the max norm of both discrete equation residuals)
drops below tolerance.

Discretization is a conservative upwind finite-volume operator on the x-theta
grid (second order in the diffusive terms). The pure transport operator has
a one-dimensional null space, so the f-solve appends a Lagrange row imposing
unit mass; the resulting operator is an M-matrix generator, so the
constrained kernel vector is non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .params import ScaledParams


@dataclass
class StationaryState:
    f: np.ndarray            # (nx, ntheta)
    c: np.ndarray            # (nx,)
    residual: float
    iterations: int
    converged: bool
    history: list = None     # (iteration, residual) pairs

    @property
    def nx(self) -> int:
        return self.f.shape[0]

    @property
    def ntheta(self) -> int:
        return self.f.shape[1]


def _theta_face_velocity(c, p: ScaledParams, th, dth, dx):
    """u_theta at faces (nx, ntheta); face k sits between angles k and k+1."""
    nx = c.shape[0]
    nt = th.size
    if p.lambda_ > 0.0:
        # samples c(x_i + lambda cos(theta_k)) by periodic linear interpolation
        s = p.lambda_ * np.cos(th) / dx
        base = np.floor(s).astype(np.int64)
        w = s - base
        idx = (np.arange(nx)[:, None] + base[None, :]) % nx
        idx1 = (idx + 1) % nx
        cs = (1.0 - w)[None, :] * c[idx] + w[None, :] * c[idx1]
        return p.gamma * (np.roll(cs, -1, axis=1) - cs) / (p.lambda_ * dth)
    dcdx = (np.roll(c, -1) - np.roll(c, 1)) / (2.0 * dx)
    th_half = th + 0.5 * dth
    return -p.gamma * np.sin(th_half)[None, :] * dcdx[:, None]


def _assemble_operator(c, p: ScaledParams, nx: int, nt: int) -> sp.csr_matrix:
    """Sparse FV operator A with A f = 0 the discrete stationary equation."""
    dx = 1.0 / nx
    dth = 2.0 * math.pi / nt
    th = 2.0 * np.pi * np.arange(nt) / nt
    ax = p.Pe * np.cos(th)                      # x face velocity, per angle
    axp = np.maximum(ax, 0.0)
    axm = np.minimum(ax, 0.0)
    ut = _theta_face_velocity(c, p, th, dth, dx)  # (nx, nt) faces
    utp = np.maximum(ut, 0.0)
    utm = np.minimum(ut, 0.0)

    ii, kk = np.meshgrid(np.arange(nx), np.arange(nt), indexing="ij")
    row = (ii * nt + kk).ravel()

    def col(di, dk):
        return (((ii + di) % nx) * nt + (kk + dk) % nt).ravel()

    dif_x = p.D_T / dx
    dif_t = 1.0 / dth
    # coefficients of -(F_{i+1/2}-F_{i-1/2})/dx - (F_{k+1/2}-F_{k-1/2})/dth
    c_ip = (dif_x - axm[kk]) / dx                    # f_{i+1,k}
    c_im = (dif_x + axp[kk]) / dx                    # f_{i-1,k}
    c_kp = (dif_t - utm[ii, kk]) / dth               # f_{i,k+1}
    c_km = (dif_t + np.roll(utp, 1, axis=1)[ii, kk]) / dth   # f_{i,k-1}
    c_00 = (-(axp[kk] + dif_x) / dx + (axm[kk] - dif_x) / dx
            - (utp[ii, kk] + dif_t) / dth
            + (np.roll(utm, 1, axis=1)[ii, kk] - dif_t) / dth)

    rows = np.concatenate([row] * 5)
    cols = np.concatenate([col(0, 0), col(1, 0), col(-1, 0), col(0, 1), col(0, -1)])
    vals = np.concatenate([c_00.ravel(), c_ip.ravel(), c_im.ravel(),
                           c_kp.ravel(), c_km.ravel()])
    return sp.csr_matrix((vals, (rows, cols)), shape=(nx * nt, nx * nt))


def _solve_f(a: sp.csr_matrix, nx: int, nt: int) -> np.ndarray:
    """Mass-constrained kernel of the stationary operator (Lagrange row)."""
    m = nx * nt
    dv = (1.0 / nx) * (2.0 * math.pi / nt)
    ones_col = np.ones((m, 1))
    mass_row = np.full((1, m), dv)
    k = sp.bmat([[a, sp.csr_matrix(ones_col)],
                 [sp.csr_matrix(mass_row), None]], format="csc")
    rhs = np.zeros(m + 1)
    rhs[m] = 1.0
    sol = spla.spsolve(k, rhs)
    f = sol[:m].reshape(nx, nt)
    f /= f.sum() * dv
    return f


def _solve_c(rho: np.ndarray, alpha: float) -> np.ndarray:
    """1D periodic (alpha - d_x^2) c = rho by stencil diagonalization."""
    nx = rho.shape[0]
    dx = 1.0 / nx
    m = np.arange(nx // 2 + 1)
    sym = alpha + (2.0 - 2.0 * np.cos(2.0 * np.pi * m / nx)) / dx**2
    return np.fft.irfft(np.fft.rfft(rho) / sym, n=nx)


def _residuals(f, c, p: ScaledParams):
    nx, nt = f.shape
    dx = 1.0 / nx
    dth = 2.0 * math.pi / nt
    a = _assemble_operator(c, p, nx, nt)
    r_f = float(np.abs(a @ f.ravel()).max())
    rho = dth * f.sum(axis=1)
    lap = (np.roll(c, -1) - 2.0 * c + np.roll(c, 1)) / dx**2
    r_c = float(np.abs(p.alpha * c - lap - rho).max())
    return max(r_f, r_c)


def default_initial_chemical(nx: int) -> np.ndarray:
    x = np.arange(nx) / nx
    return 1.0 - np.cos(2.0 * np.pi * x) / (2.0 * np.pi)


def solve_stationary(p: ScaledParams, tol: float = 1e-10, max_iter: int = 200,
                     nx: int = 64, ntheta: int = 64, damping: float = 1.0,
                     c0: np.ndarray | None = None) -> StationaryState:
    """Alternating f/c solves until the total residual falls below tol.

    Returns the best iterate with ``converged=False`` when max_iter is
    exhausted. ``damping`` relaxes the c-update (c <- c + damping*(c_new-c))
    for strongly coupled parameter sets where the plain iteration
    oscillates.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    c = default_initial_chemical(nx) if c0 is None else np.asarray(c0, float).copy()
    dth = 2.0 * math.pi / ntheta
    f = None
    best = None
    res = math.inf
    history = []
    for it in range(1, max_iter + 1):
        a = _assemble_operator(c, p, nx, ntheta)
        f = _solve_f(a, nx, ntheta)
        rho = dth * f.sum(axis=1)
        c_new = _solve_c(rho, p.alpha)
        c = c + damping * (c_new - c)
        res = _residuals(f, c, p)
        history.append((it, res))
        if best is None or res < best[0]:
            best = (res, f.copy(), c.copy(), it)
        if res < tol:
            return StationaryState(f=f, c=c, residual=res, iterations=it,
                                   converged=True, history=history)
    res, f, c, it = best
    return StationaryState(f=f, c=c, residual=res, iterations=it,
                           converged=False, history=history)


def stationary_residual(state: StationaryState, p: ScaledParams) -> float:
    """Max norm of the discrete residuals of both stationary equations."""
    return _residuals(state.f, state.c, p)


def angular_marginal(state: StationaryState) -> np.ndarray:
    """g(theta_k) = dx * sum_i f_{i,k}; integrates to 1 against dtheta."""
    return state.f.sum(axis=0) / state.nx
