"""Linear stability of the homogeneous state.

Perturbations f* + eps * Re[e^{sigma t + i omega x} sum_k A_k cos(k theta)]
turn the linearised kinetic operator into a countable banded eigenvalue
problem. Truncating at order n gives an n x n matrix whose leading
eigenvalue converges rapidly in n; the curve Re(sigma_max) = 0 in the
Pe-gamma plane is the instability line separating decay to the homogeneous
state from pattern formation.

With a = -omega^2 D_T, b = -i omega Pe / 2 and C1 = gamma omega/(omega^2 +
alpha), the truncated matrix is tridiagonal with diagonal a - k^2 apart from
the chemotactic couplings in column 0: i*C1 + 2b in row 1 and -lambda omega
C1 in row 2 (the look-ahead contribution). The adiabatic-closure variant
keeps a only in row 0 and drops it from the damped rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class BracketError(ValueError):
    """The growth rate does not change sign over the supplied bracket."""


@dataclass(frozen=True)
class DispersionParams:
    D_T: float
    alpha: float
    lambda_: float
    gamma: float
    Pe: float
    n: int
    omega: float = 2.0 * math.pi

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("truncation order n must be at least 2")
        if not self.omega > 0:
            raise ValueError("omega must be positive")

    def replace(self, **kw) -> "DispersionParams":
        d = {k: getattr(self, k) for k in
             ("D_T", "alpha", "lambda_", "gamma", "Pe", "n", "omega")}
        d.update(kw)
        return DispersionParams(**d)


@dataclass
class DispersionResult:
    sigma_max: complex
    coefficients: np.ndarray = field(repr=False)  # (n,) complex, ||A||_2 = 1
    converged: bool
    residual: float


def _abc(dp: DispersionParams):
    a = -dp.omega**2 * dp.D_T
    b = -0.5j * dp.omega * dp.Pe
    c1 = dp.gamma * dp.omega / (dp.omega**2 + dp.alpha)
    return a, b, c1


def build_truncated_matrix(dp: DispersionParams) -> np.ndarray:
    """n x n truncation of the banded mode-coupling matrix."""
    a, b, c1 = _abc(dp)
    n = dp.n
    m = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        m[k, k] = a - k * k
        if k + 1 < n:
            m[k, k + 1] = b
        if k >= 1:
            m[k, k - 1] = b
    m[1, 0] = 1j * c1 + 2.0 * b
    if n > 2:
        m[2, 0] = -dp.lambda_ * dp.omega * c1
    return m


def build_adiabatic_matrix(dp: DispersionParams) -> np.ndarray:
    """Adiabatic-closure variant: rows k >= 1 keep only the -k^2 damping."""
    a, b, c1 = _abc(dp)
    n = dp.n
    m = np.zeros((n, n), dtype=np.complex128)
    m[0, 0] = a
    for k in range(1, n):
        m[k, k] = -float(k * k)
        m[k, k - 1] = b
        if k + 1 < n:
            m[k, k + 1] = b
    m[0, 1] = b
    m[1, 0] = 1j * c1 + 2.0 * b
    return m


def leading_eigenvalue(m: np.ndarray) -> complex:
    """Eigenvalue of maximal real part (ties broken by larger imaginary part)."""
    return dispersion_from_matrix(m).sigma_max


def dispersion_from_matrix(m: np.ndarray) -> DispersionResult:
    """Leading eigenpair of a dense complex matrix via the QR eigensolver."""
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    if n > 256:
        raise ValueError("truncation orders above 256 are not supported")
    vals, vecs = np.linalg.eig(m)
    order = np.lexsort((-vals.imag, -vals.real))
    idx = order[0]
    sigma = complex(vals[idx])
    vec = vecs[:, idx]
    vec = vec / np.linalg.norm(vec)
    # deterministic phase: largest-magnitude coefficient made real positive
    j = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[j]) / vec[j])
    mnorm = np.linalg.norm(m, 2)
    residual = float(np.linalg.norm(m @ vec - sigma * vec))
    converged = residual <= 1e-10 * max(mnorm, 1.0)
    return DispersionResult(sigma_max=sigma, coefficients=vec,
                            converged=converged, residual=residual)


def dispersion(dp: DispersionParams, adiabatic: bool = False) -> DispersionResult:
    build = build_adiabatic_matrix if adiabatic else build_truncated_matrix
    return dispersion_from_matrix(build(dp))


def growth_rate(gamma: float, pe: float, base: DispersionParams,
                adiabatic: bool = False) -> float:
    """Re(sigma_max) at the given (gamma, Pe)."""
    dp = base.replace(gamma=gamma, Pe=pe)
    return dispersion(dp, adiabatic=adiabatic).sigma_max.real


def instability_threshold_gamma(pe: float, base: DispersionParams,
                                bracket=(1.0, 2000.0), tol: float = 1e-8,
                                adiabatic: bool = False) -> float:
    """Bisection root gamma*(Pe) of gamma -> Re(sigma_max).

    Bisection rather than Newton: the leading-branch switches can kink the
    growth rate, and bisection only needs the sign.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    glo = growth_rate(lo, pe, base, adiabatic)
    ghi = growth_rate(hi, pe, base, adiabatic)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise BracketError(
            f"growth rate does not change sign on [{lo}, {hi}] at Pe={pe}; "
            "widen the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = growth_rate(mid, pe, base, adiabatic)
        if gm == 0.0:
            return mid
        if (gm > 0) == (ghi > 0):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def threshold_gamma_n2(pe: float, d_t: float, alpha: float,
                       omega: float = 2.0 * math.pi) -> float:
    """Closed-form root of the n = 2 dispersion relation.

    From -Pe^2/2 + Pe gamma/(2 omega^2 + 2 alpha) - (1 + omega^2 D_T) D_T = 0.
    """
    if pe <= 0:
        raise ValueError("closed-form threshold requires Pe > 0")
    return (0.5 * pe**2 + (1.0 + omega**2 * d_t) * d_t) \
        * (2.0 * omega**2 + 2.0 * alpha) / pe


def adiabatic_threshold(pe: float, d_t: float, alpha: float,
                        omega: float = 2.0 * math.pi) -> float:
    """Closed-form adiabatic-closure threshold.

    Root of -Pe^2/2 + Pe gamma/(2 omega^2 + 2 alpha) - D_T = 0; differs from
    the n = 2 line by omega^2 D_T^2 (2 omega^2 + 2 alpha)/Pe.
    """
    if pe <= 0:
        raise ValueError("adiabatic threshold diverges at Pe = 0")
    return (0.5 * pe**2 + d_t) * (2.0 * omega**2 + 2.0 * alpha) / pe


def trace_instability_line(pe_values, base: DispersionParams,
                           bracket=(1.0, 2000.0), tol: float = 1e-8,
                           adiabatic: bool = False) -> np.ndarray:
    """gamma*(Pe) over a Pe scan; rows (Pe, gamma_star)."""
    out = np.empty((len(pe_values), 2))
    for i, pe in enumerate(pe_values):
        out[i, 0] = pe
        out[i, 1] = instability_threshold_gamma(pe, base, bracket, tol,
                                                adiabatic=adiabatic)
    return out


def reconstruct_eigenfunction(dr: DispersionResult, dp: DispersionParams,
                              nx: int, ntheta: int) -> np.ndarray:
    """Real eigenfunction Re[sum_k A_k cos(k theta) e^{i omega x}] on a grid.

    Evaluated at x_i = i/nx (unit box) and theta_j = 2 pi j/ntheta,
    normalized to max |f| = 1.
    """
    x = np.arange(nx) / nx
    th = 2.0 * np.pi * np.arange(ntheta) / ntheta
    a = dr.coefficients
    g = np.zeros(ntheta, dtype=np.complex128)
    for k in range(len(a)):
        g += a[k] * np.cos(k * th)
    fxth = np.real(np.exp(1j * dp.omega * x)[:, None] * g[None, :])
    peak = np.abs(fxth).max()
    if peak > 0:
        fxth = fxth / peak
    return fxth
