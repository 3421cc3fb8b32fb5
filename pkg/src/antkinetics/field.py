"""Chemical field solver on the periodic spatial grid.

The quasi-static pheromone equation alpha*c - Lap(c) = rho is discretized
with the standard second-order 5-point stencil and solved exactly (to
roundoff) by diagonalizing the stencil in discrete Fourier space:

    c_hat(m, n) = rho_hat(m, n) / (alpha + s_x(m) + s_y(n)),
    s_x(m) = (2 - 2 cos(2 pi m dx)) / dx^2.

so the result is the finite-difference solution, not the continuum spectral
one, while the solve stays O(N log N). Nodes are cell centers x_i = i*dx,
collocated with the kinetic grid's spatial cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ChemicalField:
    """Nodal pheromone concentration on the periodic spatial lattice."""

    values: np.ndarray  # (nx, ny)
    dx: float
    dy: float

    @property
    def nx(self) -> int:
        return self.values.shape[0]

    @property
    def ny(self) -> int:
        return self.values.shape[1]


def stencil_symbol(alpha: float, nx: int, ny: int, dx: float, dy: float) -> np.ndarray:
    """Eigenvalues of (alpha*I - Lap_h) over the rfft2 frequency layout.

    On nodes x_i = i*dx the mode exp(2 pi i m i/nx) sees the 3-point second
    difference as (2 cos(2 pi m/nx) - 2)/dx^2.
    """
    mx = np.arange(nx)
    my = np.arange(ny // 2 + 1)
    sx = (2.0 - 2.0 * np.cos(2.0 * np.pi * mx / nx)) / dx**2
    sy = (2.0 - 2.0 * np.cos(2.0 * np.pi * my / ny)) / dy**2
    return alpha + sx[:, None] + sy[None, :]


def solve_chemical(rho: np.ndarray, alpha: float,
                   dx: float | None = None, dy: float | None = None) -> ChemicalField:
    """Solve (alpha*I - Lap_h) c = rho on the periodic grid.

    Defaults to the unit box, dx = 1/nx. alpha must be positive: the k = 0
    mode of the operator is alpha itself, so alpha <= 0 is not invertible.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive (k=0 mode of the operator)")
    rho = np.asarray(rho, dtype=np.float64)
    nx, ny = rho.shape
    if dx is None:
        dx = 1.0 / nx
    if dy is None:
        dy = 1.0 / ny
    sym = stencil_symbol(alpha, nx, ny, dx, dy)
    c = np.fft.irfft2(np.fft.rfft2(rho) / sym, s=rho.shape)
    return ChemicalField(values=c, dx=dx, dy=dy)


def gradient_centered(c: ChemicalField):
    """Centred-difference gradient with periodic wrap.

    [d_x c]_{i,j} = (c_{i+1,j} - c_{i-1,j}) / (2 dx), likewise in y.
    """
    v = c.values
    gx = (np.roll(v, -1, axis=0) - np.roll(v, 1, axis=0)) / (2.0 * c.dx)
    gy = (np.roll(v, -1, axis=1) - np.roll(v, 1, axis=1)) / (2.0 * c.dy)
    return gx, gy


def eval_shifted(c: ChemicalField, x, lam: float, theta: float) -> float:
    """Bilinear interpolation of c at the wrapped point x + lam*e(theta)."""
    px = x[0] + lam * np.cos(theta)
    py = x[1] + lam * np.sin(theta)
    return eval_bilinear(c, px, py)


def eval_bilinear(c: ChemicalField, px, py):
    """Bilinear interpolation at (px, py), periodic in both directions.

    Accepts scalars or arrays; nodes sit at x_i = i*dx.
    """
    v = c.values
    nx, ny = v.shape
    fx = np.asarray(px, dtype=np.float64) / c.dx
    fy = np.asarray(py, dtype=np.float64) / c.dy
    i0 = np.floor(fx).astype(np.int64)
    j0 = np.floor(fy).astype(np.int64)
    wi = fx - i0
    wj = fy - j0
    i0 %= nx
    j0 %= ny
    i1 = (i0 + 1) % nx
    j1 = (j0 + 1) % ny
    out = ((1 - wi) * (1 - wj) * v[i0, j0] + wi * (1 - wj) * v[i1, j0]
           + (1 - wi) * wj * v[i0, j1] + wi * wj * v[i1, j1])
    if np.isscalar(px) or (isinstance(px, float)):
        return float(out)
    return out


def shift_tables(nt: int, lam: float, dx: float, dy: float):
    """Per-angle integer offsets and bilinear weights for x + lam*e(theta_k).

    The shift lam*e(theta_k) is the same for every spatial node, so bilinear
    interpolation reduces to four rolled copies of the field per angle.
    """
    th = 2.0 * np.pi * np.arange(nt) / nt
    fx = lam * np.cos(th) / dx
    fy = lam * np.sin(th) / dy
    bi = np.floor(fx).astype(np.int64)
    bj = np.floor(fy).astype(np.int64)
    return bi, bj, fx - bi, fy - bj
