# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical core.

Function-for-function mirror of ``antkinetics._core_py``; the parity tests
compare the two on random inputs. See that module for the contracts.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, log, sin, sqrt

cnp.import_array()

COMPILED = True

cdef double EULER_GAMMA = 0.5772156649015328606
cdef double PI = 3.141592653589793238462643383279502884
cdef double BESSEL_SPLIT = 9.0


cdef double _k0_series(double x) nogil:
    cdef double z = 0.25 * x * x
    cdef double i0 = 1.0, s = 0.0, term = 1.0, h = 0.0
    cdef int k = 0
    while True:
        k += 1
        term *= z / (k * k)
        h += 1.0 / k
        i0 += term
        s += term * h
        if term * (h + 1.0) < 1e-18 * (fabs(i0) + fabs(s)):
            break
    return -(log(0.5 * x) + EULER_GAMMA) * i0 + s


cdef double _k_asymptotic(double x, double nu) nogil:
    cdef double four_nu2 = 4.0 * nu * nu
    cdef double s = 1.0, term = 1.0, new
    cdef int k = 0
    while True:
        new = term * (four_nu2 - (2 * k + 1) * (2 * k + 1)) / (8.0 * (k + 1) * x)
        if fabs(new) >= fabs(term):
            break
        term = new
        s += term
        k += 1
        if fabs(term) < 1e-18 * fabs(s):
            break
    return sqrt(PI / (2.0 * x)) * exp(-x) * s


cdef double _k1_series(double x) nogil:
    cdef double z = 0.25 * x * x
    cdef double term = 1.0, s1 = 1.0, s2 = 1.0, h = 0.0, w
    cdef int k = 0
    while True:
        k += 1
        term *= z / (k * (k + 1))
        h += 1.0 / k
        w = 2.0 * h + 1.0 / (k + 1)
        s1 += term
        s2 += w * term
        if term * (w + 1.0) < 1e-18 * (fabs(s1) + fabs(s2)):
            break
    cdef double i1 = 0.5 * x * s1
    return (log(0.5 * x) + EULER_GAMMA) * i1 + 1.0 / x - 0.25 * x * s2


cdef double _k0(double x) nogil:
    if x <= BESSEL_SPLIT:
        return _k0_series(x)
    if x > 746.0:
        return 0.0
    return _k_asymptotic(x, 0.0)


cdef double _k1(double x) nogil:
    if x <= BESSEL_SPLIT:
        return _k1_series(x)
    if x > 746.0:
        return 0.0
    return _k_asymptotic(x, 1.0)


def bessel_k0(double x):
    """Modified Bessel function K0 for scalar x > 0."""
    if not x > 0.0:
        raise ValueError("K0 requires x > 0 (diverges at the origin)")
    return _k0(x)


def bessel_k1(double x):
    """Modified Bessel function K1 for scalar x > 0."""
    if not x > 0.0:
        raise ValueError("K1 requires x > 0 (diverges at the origin)")
    return _k1(x)


def bessel_k0_many(x):
    cdef cnp.ndarray arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.ravel()
    cdef double[::1] dst = out.ravel()
    cdef Py_ssize_t i, n = src.shape[0]
    for i in range(n):
        if not src[i] > 0.0:
            raise ValueError("K0 requires x > 0 (diverges at the origin)")
        dst[i] = _k0(src[i])
    return out.reshape(np.shape(x))


def bessel_k1_many(x):
    cdef cnp.ndarray arr = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(arr)
    cdef double[::1] src = arr.ravel()
    cdef double[::1] dst = out.ravel()
    cdef Py_ssize_t i, n = src.shape[0]
    for i in range(n):
        if not src[i] > 0.0:
            raise ValueError("K1 requires x > 0 (diverges at the origin)")
        dst[i] = _k1(src[i])
    return out.reshape(np.shape(x))


def pair_torques(positions, angles, double gamma, double lam, double kappa,
                 double box, double r_cut):
    """See ``antkinetics._core_py.pair_torques``."""
    pos_arr = np.ascontiguousarray(positions, dtype=np.float64)
    ang_arr = np.ascontiguousarray(angles, dtype=np.float64)
    cdef double[:, ::1] pos = pos_arr
    cdef double[::1] th = ang_arr
    cdef Py_ssize_t n = pos.shape[0]
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] res = out
    cdef Py_ssize_t i, j
    cdef int near = 0
    cdef double ex, ey, sx, sy, dx, dy, r, g, gx, gy
    with nogil:
        for i in range(n):
            ex = cos(th[i])
            ey = sin(th[i])
            sx = pos[i, 0] + lam * ex
            sy = pos[i, 1] + lam * ey
            gx = 0.0
            gy = 0.0
            for j in range(n):
                if j == i:
                    continue
                dx = sx - pos[j, 0]
                dy = sy - pos[j, 1]
                dx -= box * round_nearest(dx / box)
                dy -= box * round_nearest(dy / box)
                r = sqrt(dx * dx + dy * dy)
                if r < r_cut:
                    near += 1
                    continue
                g = -kappa * _k1(kappa * r) / r
                gx += g * dx
                gy += g * dy
            res[i] = (gamma / n) * (-ey * gx + ex * gy)
    return out, near


cdef inline double round_nearest(double x) nogil:
    # matches np.round (banker's rounding is irrelevant here: arguments sit
    # at half-integers only on a measure-zero set; use round-half-away)
    cdef double f = x + 0.5 if x >= 0 else x - 0.5
    cdef long long t = <long long> f
    return <double> t


def shifted_values(c, base_i, base_j, w_i, w_j, out=None):
    """See ``antkinetics._core_py.shifted_values``."""
    c_arr = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[:, ::1] cv = c_arr
    cdef long[::1] bi = np.ascontiguousarray(base_i, dtype=np.int64)
    cdef long[::1] bj = np.ascontiguousarray(base_j, dtype=np.int64)
    cdef double[::1] wi = np.ascontiguousarray(w_i, dtype=np.float64)
    cdef double[::1] wj = np.ascontiguousarray(w_j, dtype=np.float64)
    cdef Py_ssize_t nx = cv.shape[0], ny = cv.shape[1], nt = bi.shape[0]
    if out is None:
        out = np.empty((nx, ny, nt), dtype=np.float64)
    cdef double[:, :, ::1] ov = out
    cdef Py_ssize_t i, j, k, i0, i1, j0, j1
    cdef double a, b
    with nogil:
        for k in range(nt):
            a = wi[k]
            b = wj[k]
            for i in range(nx):
                i0 = (i + bi[k]) % nx
                if i0 < 0:
                    i0 += nx
                i1 = i0 + 1
                if i1 == nx:
                    i1 = 0
                for j in range(ny):
                    j0 = (j + bj[k]) % ny
                    if j0 < 0:
                        j0 += ny
                    j1 = j0 + 1
                    if j1 == ny:
                        j1 = 0
                    ov[i, j, k] = ((1 - a) * (1 - b) * cv[i0, j0]
                                   + a * (1 - b) * cv[i1, j0]
                                   + (1 - a) * b * cv[i0, j1]
                                   + a * b * cv[i1, j1])
    return out


def fv_rhs_core(f, logf, dcdx, dcdy, cshift, costh, sinth, coshalf, sinhalf,
                double d_t, double pe, double gamma, double lam,
                double dx, double dy, double dth, rhs):
    """See ``antkinetics._core_py.fv_rhs_core``."""
    cdef double[:, :, ::1] fv = f
    cdef double[:, :, ::1] lf = logf
    cdef double[:, :, ::1] rv = rhs
    cdef double[:, ::1] gx = np.ascontiguousarray(dcdx, dtype=np.float64)
    cdef double[:, ::1] gy = np.ascontiguousarray(dcdy, dtype=np.float64)
    cdef double[:, :, ::1] cs = cshift
    cdef double[::1] ct = costh
    cdef double[::1] st = sinth
    cdef double[::1] ch = coshalf
    cdef double[::1] sh = sinhalf
    cdef Py_ssize_t nx = fv.shape[0], ny = fv.shape[1], nt = fv.shape[2]
    fx_arr = np.empty((nx, ny, nt), dtype=np.float64)
    fy_arr = np.empty((nx, ny, nt), dtype=np.float64)
    ft_arr = np.empty((nx, ny, nt), dtype=np.float64)
    cdef double[:, :, ::1] fx = fx_arr
    cdef double[:, :, ::1] fy = fy_arr
    cdef double[:, :, ::1] ft = ft_arr
    cdef Py_ssize_t i, j, k, ip, jp, kp, im, jm, km
    cdef double u, umx = 0.0, umy = 0.0, umt = 0.0, glam = 0.0
    if lam > 0.0:
        glam = gamma / lam
    with nogil:
        for i in range(nx):
            ip = i + 1 if i + 1 < nx else 0
            for j in range(ny):
                jp = j + 1 if j + 1 < ny else 0
                for k in range(nt):
                    kp = k + 1 if k + 1 < nt else 0
                    u = -d_t * (lf[ip, j, k] - lf[i, j, k]) / dx + pe * ct[k]
                    if fabs(u) > umx:
                        umx = fabs(u)
                    fx[i, j, k] = (max_d(u, 0.0) * fv[i, j, k]
                                   + min_d(u, 0.0) * fv[ip, j, k])
                    u = -d_t * (lf[i, jp, k] - lf[i, j, k]) / dy + pe * st[k]
                    if fabs(u) > umy:
                        umy = fabs(u)
                    fy[i, j, k] = (max_d(u, 0.0) * fv[i, j, k]
                                   + min_d(u, 0.0) * fv[i, jp, k])
                    u = -(lf[i, j, kp] - lf[i, j, k]) / dth
                    if lam > 0.0:
                        u += glam * (cs[i, j, kp] - cs[i, j, k]) / dth
                    else:
                        u += gamma * (-sh[k] * gx[i, j] + ch[k] * gy[i, j])
                    if fabs(u) > umt:
                        umt = fabs(u)
                    ft[i, j, k] = (max_d(u, 0.0) * fv[i, j, k]
                                   + min_d(u, 0.0) * fv[i, j, kp])
        for i in range(nx):
            im = i - 1 if i > 0 else nx - 1
            for j in range(ny):
                jm = j - 1 if j > 0 else ny - 1
                for k in range(nt):
                    km = k - 1 if k > 0 else nt - 1
                    rv[i, j, k] = (-(fx[i, j, k] - fx[im, j, k]) / dx
                                   - (fy[i, j, k] - fy[i, jm, k]) / dy
                                   - (ft[i, j, k] - ft[i, j, km]) / dth)
    return umx, umy, umt


cdef inline double max_d(double a, double b) nogil:
    return a if a > b else b


cdef inline double min_d(double a, double b) nogil:
    return a if a < b else b
