"""Chemotactic active Brownian particles with look-ahead sensing.

Subpackages cover the microscopic SDE system (:mod:`antkinetics.particles`),
the screened-interaction kernel (:mod:`antkinetics.kernel`), the quasi-static
chemical field (:mod:`antkinetics.field`), the kinetic finite-volume solver
(:mod:`antkinetics.meanfield`), linear stability (:mod:`antkinetics.linstab`),
endstate observables (:mod:`antkinetics.observables`), 1D stationary states
(:mod:`antkinetics.stationary`) and sweep orchestration
(:mod:`antkinetics.sweep`).

Hot kernels run through :mod:`antkinetics.backend`, which picks the compiled
extension when present and the NumPy implementation otherwise.
"""

from .backend import COMPILED, backend_name
from .params import (ParameterError, PhysicalParams, ScaledParams,
                     rescale_physical, validate)

__all__ = [
    "COMPILED", "backend_name",
    "ParameterError", "PhysicalParams", "ScaledParams",
    "rescale_physical", "validate",
]

__version__ = "0.1.0"
