"""Angular moments of the kinetic density and the pattern classifier.

rho integrates f over orientation, p weights by e(theta) (net direction of
motion), p2 weights by e(2*theta). p2 is insensitive to head-tail direction:
bidirectional traffic along a stripe reinforces it while cancelling in p,
which is why the scalar P2 separates lanes from spots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

F_STAR = 1.0 / (2.0 * math.pi)  # homogeneous state on the unit torus


@dataclass
class ObservableSet:
    rho: np.ndarray        # (nx, ny)
    p: np.ndarray          # (nx, ny, 2)
    p2: np.ndarray         # (nx, ny, 2)
    P2: float
    d_fstar: float
    time: float


@dataclass(frozen=True)
class PhaseLabel:
    label: str             # "H", "S" or "L"
    d_fstar: float
    P2_mean: float


def _theta_nodes(nt: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(nt) / nt


def spatial_density(f: np.ndarray, dtheta: float | None = None) -> np.ndarray:
    """rho_{i,j} = dtheta * sum_k f_{i,j,k} (midpoint quadrature)."""
    nt = f.shape[2]
    if dtheta is None:
        dtheta = 2.0 * np.pi / nt
    return dtheta * f.sum(axis=2)


def polarisation(f: np.ndarray, dtheta: float | None = None) -> np.ndarray:
    """p_{i,j} = dtheta * sum_k e(theta_k) f_{i,j,k}, shape (nx, ny, 2)."""
    nt = f.shape[2]
    if dtheta is None:
        dtheta = 2.0 * np.pi / nt
    th = _theta_nodes(nt)
    px = dtheta * (f * np.cos(th)[None, None, :]).sum(axis=2)
    py = dtheta * (f * np.sin(th)[None, None, :]).sum(axis=2)
    return np.stack([px, py], axis=-1)


def second_moment(f: np.ndarray, dtheta: float | None = None,
                  dx: float | None = None, dy: float | None = None):
    """Second angular moment field and its spatially integrated norm.

    p2_{i,j} = dtheta * sum_k e(2 theta_k) f_{i,j,k};
    P2 = | dx dy sum_{i,j} p2_{i,j} |  (Euclidean norm of the 2-vector).
    """
    nx, ny, nt = f.shape
    if dtheta is None:
        dtheta = 2.0 * np.pi / nt
    if dx is None:
        dx = 1.0 / nx
    if dy is None:
        dy = 1.0 / ny
    th = _theta_nodes(nt)
    qx = dtheta * (f * np.cos(2 * th)[None, None, :]).sum(axis=2)
    qy = dtheta * (f * np.sin(2 * th)[None, None, :]).sum(axis=2)
    p2 = np.stack([qx, qy], axis=-1)
    total = p2.sum(axis=(0, 1)) * dx * dy
    return p2, float(np.hypot(total[0], total[1]))


def distance_to_homogeneous(f: np.ndarray, dtheta: float | None = None,
                            dx: float | None = None, dy: float | None = None) -> float:
    """Discrete L2 norm of f - 1/(2 pi)."""
    nx, ny, nt = f.shape
    if dtheta is None:
        dtheta = 2.0 * np.pi / nt
    if dx is None:
        dx = 1.0 / nx
    if dy is None:
        dy = 1.0 / ny
    return float(np.sqrt(dx * dy * dtheta * ((f - F_STAR) ** 2).sum()))


def compute_observables(f: np.ndarray, time: float = 0.0,
                        dtheta: float | None = None,
                        dx: float | None = None, dy: float | None = None) -> ObservableSet:
    rho = spatial_density(f, dtheta)
    p = polarisation(f, dtheta)
    p2, P2 = second_moment(f, dtheta, dx, dy)
    d = distance_to_homogeneous(f, dtheta, dx, dy)
    return ObservableSet(rho=rho, p=p, p2=p2, P2=P2, d_fstar=d, time=time)


# Classification thresholds. There is no canonical cutoff between the
# endstate classes; these defaults encode "small distance to homogeneous"
# for H and "P2 close to unity" for L, and are configurable everywhere they
# are consumed so the choice stays visible in outputs.
TAU_H = 0.05
TAU_L = 0.3


def classify(d_fstar_max: float, P2_mean: float,
             tau_h: float = TAU_H, tau_l: float = TAU_L) -> PhaseLabel:
    """H if the endstate stayed near homogeneous, else L or S by P2."""
    if d_fstar_max < tau_h:
        label = "H"
    elif P2_mean >= tau_l:
        label = "L"
    else:
        label = "S"
    return PhaseLabel(label=label, d_fstar=d_fstar_max, P2_mean=P2_mean)
