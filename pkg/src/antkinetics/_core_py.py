"""Pure NumPy implementation of the hot numerical kernels.

This module mirrors the compiled extension ``antkinetics._core`` function for
function; :mod:`antkinetics.backend` picks whichever is available at import
time. Keep the two in sync: the parity tests compare their outputs on random
inputs.
"""

from __future__ import annotations

import math

import numpy as np

COMPILED = False

EULER_GAMMA = 0.5772156649015328606

# Split between the ascending series and the large-argument asymptotic
# expansion. At the split the series loses ~exp(x)*eps to cancellation
# (~1e-12 absolute) and the asymptotic tail bottoms out near 1e-8 relative
# on values of order 1e-4, both well inside the 1e-9 absolute target.
_BESSEL_SPLIT = 9.0


def _k0_series(x):
    z = 0.25 * x * x
    i0 = 1.0
    s = 0.0
    term = 1.0
    h = 0.0
    k = 0
    while True:
        k += 1
        term *= z / (k * k)
        h += 1.0 / k
        i0 += term
        s += term * h
        if term * (h + 1.0) < 1e-18 * (abs(i0) + abs(s)):
            break
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0 + s


def _k_asymptotic(x, nu):
    # K_nu(x) ~ sqrt(pi/2x) e^-x sum a_k, a_{k+1}/a_k = (4 nu^2-(2k+1)^2)/(8(k+1)x)
    four_nu2 = 4.0 * nu * nu
    s = 1.0
    term = 1.0
    k = 0
    while True:
        new = term * (four_nu2 - (2 * k + 1) ** 2) / (8.0 * (k + 1) * x)
        if abs(new) >= abs(term):
            break
        term = new
        s += term
        k += 1
        if abs(term) < 1e-18 * abs(s):
            break
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * s


def _k1_series(x):
    z = 0.25 * x * x
    term = 1.0          # z^k / (k! (k+1)!)
    s1 = 1.0            # sum for I1
    s2 = 1.0            # sum weighted by H_k + H_{k+1}; k=0 weight is 1
    h = 0.0
    k = 0
    while True:
        k += 1
        term *= z / (k * (k + 1))
        h += 1.0 / k
        w = 2.0 * h + 1.0 / (k + 1)
        s1 += term
        s2 += w * term
        if term * (w + 1.0) < 1e-18 * (abs(s1) + abs(s2)):
            break
    i1 = 0.5 * x * s1
    return (math.log(0.5 * x) + EULER_GAMMA) * i1 + 1.0 / x - 0.25 * x * s2


def bessel_k0(x):
    """Modified Bessel function K0 for scalar x > 0."""
    if not x > 0.0:
        raise ValueError("K0 requires x > 0 (diverges at the origin)")
    if x <= _BESSEL_SPLIT:
        return _k0_series(x)
    if x > 746.0:
        return 0.0
    return _k_asymptotic(x, 0)


def bessel_k1(x):
    """Modified Bessel function K1 for scalar x > 0."""
    if not x > 0.0:
        raise ValueError("K1 requires x > 0 (diverges at the origin)")
    if x <= _BESSEL_SPLIT:
        return _k1_series(x)
    if x > 746.0:
        return 0.0
    return _k_asymptotic(x, 1)


def bessel_k0_many(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    flat = x.ravel()
    oflat = out.ravel()
    for i in range(flat.size):
        oflat[i] = bessel_k0(flat[i])
    return out


def bessel_k1_many(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    flat = x.ravel()
    oflat = out.ravel()
    for i in range(flat.size):
        oflat[i] = bessel_k1(flat[i])
    return out


def pair_torques(positions, angles, gamma, lam, kappa, box, r_cut):
    """Chemotactic torque on every particle from the pairwise kernel sum.

    F_i = (gamma/N) n(theta_i) . sum_j grad K(X_i + lam e(theta_i) - X_j)
    with grad K(r) = -kappa K1(kappa |r*|) r*/|r*| on the minimal image r*.
    The self term j = i is excluded for every lam (it is orthogonal to
    n(theta_i) when lam > 0 and singular when lam = 0).

    Returns (torques, n_near_singular); pairs with |r*| < r_cut contribute
    zero and are counted instead of evaluated.
    """
    pos = np.asarray(positions, dtype=np.float64)
    th = np.asarray(angles, dtype=np.float64)
    n = pos.shape[0]
    ex = np.cos(th)
    ey = np.sin(th)
    sx = pos[:, 0] + lam * ex
    sy = pos[:, 1] + lam * ey
    dx = sx[:, None] - pos[None, :, 0]
    dy = sy[:, None] - pos[None, :, 1]
    dx -= box * np.round(dx / box)
    dy -= box * np.round(dy / box)
    r = np.sqrt(dx * dx + dy * dy)
    skip = r < r_cut
    np.fill_diagonal(skip, True)
    n_near = int(np.count_nonzero(skip)) - n
    rsafe = np.where(skip, 1.0, r)
    g = -kappa * bessel_k1_many(kappa * rsafe) / rsafe
    g[skip] = 0.0
    gx = (g * dx).sum(axis=1)
    gy = (g * dy).sum(axis=1)
    torques = (gamma / n) * (-ey * gx + ex * gy)
    return torques, n_near


def shifted_values(c, base_i, base_j, w_i, w_j, out=None):
    """Bilinear samples c(x_ij + lam e(theta_k)) for every cell and angle.

    The shift is the same for all spatial cells at a given angle, so it is
    described per angle k by integer base offsets and fractional weights.
    Returns an (nx, ny, ntheta) array.
    """
    c = np.asarray(c, dtype=np.float64)
    nt = len(base_i)
    if out is None:
        out = np.empty(c.shape + (nt,), dtype=np.float64)
    for k in range(nt):
        bi = int(base_i[k])
        bj = int(base_j[k])
        wi = w_i[k]
        wj = w_j[k]
        c00 = np.roll(c, (-bi, -bj), axis=(0, 1))
        c10 = np.roll(c, (-bi - 1, -bj), axis=(0, 1))
        c01 = np.roll(c, (-bi, -bj - 1), axis=(0, 1))
        c11 = np.roll(c, (-bi - 1, -bj - 1), axis=(0, 1))
        out[:, :, k] = ((1 - wi) * (1 - wj) * c00 + wi * (1 - wj) * c10
                        + (1 - wi) * wj * c01 + wi * wj * c11)
    return out


def face_velocity_arrays(logf, dcdx, dcdy, cshift, costh, sinth, coshalf,
                         sinhalf, d_t, pe, gamma, lam, dx, dy, dth):
    """Centred-difference face velocities (Ux, Uy, Utheta).

    Index i of Ux addresses the face between cells i and i+1 (periodic);
    same convention in y and theta. The theta velocity takes the shifted
    chemical samples for lam > 0 and the centred spatial gradients of c at
    face angles for lam = 0.
    """
    ux = -d_t * (np.roll(logf, -1, 0) - logf) / dx + pe * costh[None, None, :]
    uy = -d_t * (np.roll(logf, -1, 1) - logf) / dy + pe * sinth[None, None, :]
    ut = -(np.roll(logf, -1, 2) - logf) / dth
    if lam > 0.0:
        ut += (gamma / lam) * (np.roll(cshift, -1, 2) - cshift) / dth
    else:
        ut += gamma * (-sinhalf[None, None, :] * dcdx[:, :, None]
                       + coshalf[None, None, :] * dcdy[:, :, None])
    return ux, uy, ut


def fv_rhs_core(f, logf, dcdx, dcdy, cshift, costh, sinth, coshalf, sinhalf,
                d_t, pe, gamma, lam, dx, dy, dth, rhs):
    """Fused finite-volume right-hand side.

    Builds centred-difference face velocities from logf and the chemical
    field data (gradients for lam = 0, shifted samples for lam > 0), applies
    the upwind flux, and writes the conservative divergence into ``rhs``.
    Returns (max|Ux|, max|Uy|, max|Utheta|) for time-step control.
    """
    ux, uy, ut = face_velocity_arrays(logf, dcdx, dcdy, cshift, costh, sinth,
                                      coshalf, sinhalf, d_t, pe, gamma, lam,
                                      dx, dy, dth)

    fx = np.maximum(ux, 0.0) * f + np.minimum(ux, 0.0) * np.roll(f, -1, 0)
    fy = np.maximum(uy, 0.0) * f + np.minimum(uy, 0.0) * np.roll(f, -1, 1)
    ft = np.maximum(ut, 0.0) * f + np.minimum(ut, 0.0) * np.roll(f, -1, 2)

    rhs[...] = (-(fx - np.roll(fx, 1, 0)) / dx
                - (fy - np.roll(fy, 1, 1)) / dy
                - (ft - np.roll(ft, 1, 2)) / dth)
    return (float(np.abs(ux).max()), float(np.abs(uy).max()),
            float(np.abs(ut).max()))
