"""Periodic screened-Poisson kernel K0(kappa |x|) and its gradient.

The pheromone field generated by a point source behind the quasi-static
equation D*Lap(c) - alpha*c + source = 0 is, in free space,
K0(kappa r)/(2 pi D) with kappa = sqrt(alpha/D). On the periodic box the
kernel is evaluated at the minimal-image displacement only; the neglected
periodic images contribute O(exp(-kappa*box/2)), which is negligible for
kappa*box >> 1 but should be kept in mind for weakly screened setups.

The particle simulator uses the kernel sum without the 1/(2 pi D) Green's
normalization, i.e. c_N = (1/N) sum_j K0(kappa|x - X_j|). The factor
2 pi D relating that convention to the PDE solution of the chemical
equation is confirmed empirically by the convolution consistency tests
(see :func:`periodic_kernel_convolution`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend


@dataclass(frozen=True)
class KernelSpec:
    """Screening wavenumber kappa = sqrt(alpha/D) and periodic box side."""

    kappa: float
    box: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if not self.box > 0:
            raise ValueError("box must be positive")

    @property
    def r_cut(self) -> float:
        # Below this separation the gradient is treated as zero; the taming
        # in the SDE scheme already bounds the drift increment, this guard
        # only prevents overflow at (probability-zero) exact coincidences.
        return 1e-8 * self.box


def bessel_k0(x: float) -> float:
    """K0(x), absolute error below 1e-9 on [1e-6, 30]."""
    return backend.bessel_k0(float(x))


def bessel_k1(x: float) -> float:
    """K1(x) = -K0'(x), absolute error below 1e-9 on [1e-6, 30]."""
    return backend.bessel_k1(float(x))


def minimal_image(r, box):
    """Wrap displacement(s) into [-box/2, box/2)."""
    r = np.asarray(r, dtype=np.float64)
    return r - box * np.round(r / box)


def kernel_value(r, spec: KernelSpec) -> float:
    """K0(kappa |r*|) at the minimal image of the displacement r."""
    rr = minimal_image(r, spec.box)
    d = float(np.hypot(rr[0], rr[1]))
    return backend.bessel_k0(spec.kappa * d)


def kernel_gradient(r, spec: KernelSpec):
    """Gradient of K0(kappa |.|) at the minimal image of r.

    grad K = -kappa K1(kappa |r*|) r*/|r*|, pointing toward the source.
    Displacements below ``spec.r_cut`` return the zero vector; callers that
    need to track such near-singular encounters should count them (the
    particle backend does).
    """
    rr = minimal_image(r, spec.box)
    d = float(np.hypot(rr[0], rr[1]))
    if d < spec.r_cut:
        return np.zeros(2)
    g = -spec.kappa * backend.bessel_k1(spec.kappa * d) / d
    return g * rr


def periodic_kernel_convolution(rho: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """Discrete periodic convolution of the kernel with a density grid.

    Computes (1/(2 pi)) * sum_j K0(kappa |x_i - x_j|) rho_j dA on the
    minimal image, which approximates the solution of
    Lap(c) - kappa^2 c + rho = 0 (unit diffusivity; divide by D otherwise).
    The log-singular self cell is integrated exactly over the
    equivalent-area disk: int_0^R K0(kappa r) 2 pi r dr
    = (2 pi/kappa^2)(1 - kappa R K1(kappa R)) with pi R^2 = dA.

    Used as the independent cross-check of the spectral field solver (the
    two routes share no code).
    """
    rho = np.asarray(rho, dtype=np.float64)
    nx, ny = rho.shape
    dx = spec.box / nx
    dy = spec.box / ny
    x = minimal_image(np.arange(nx) * dx, spec.box)
    y = minimal_image(np.arange(ny) * dy, spec.box)
    r = np.hypot(x[:, None], y[None, :])
    table = np.empty_like(r)
    mask = r > 0
    table[mask] = backend.bessel_k0_many(spec.kappa * r[mask])
    # exact cell integral replaces the singular K0(0) sample
    r_eq = math.sqrt(dx * dy / math.pi)
    cell_int = (2.0 * math.pi / spec.kappa**2) * (
        1.0 - spec.kappa * r_eq * backend.bessel_k1(spec.kappa * r_eq))
    table[~mask] = cell_int / (dx * dy)
    conv = np.fft.irfft2(np.fft.rfft2(table) * np.fft.rfft2(rho), s=rho.shape)
    return conv * dx * dy / (2.0 * math.pi)
