"""Physical and rescaled model parameters.

The model has a single nondimensionalization: time is measured in units of
the inverse rotational diffusivity T = 1/D_R, space in units of the chemical
screening length L = sqrt(D/D_R), and the pheromone concentration in units of
C0 = eta/D_R. Under that rescaling the five dimensionless groups below fully
determine the dynamics, and every solver in the package consumes only
:class:`ScaledParams`. Physical-unit particle runs convert first via
:func:`rescale_physical`.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass


class ParameterError(ValueError):
    """A parameter violates a model invariant; the message names it."""


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional parameters of the particle model.

    v0: self-propulsion speed [length/time]
    D_T_phys: translational diffusivity [length^2/time]
    D_R: rotational diffusivity [1/time]
    D: pheromone diffusivity [length^2/time]
    alpha_phys: pheromone decay rate [1/time]
    eta: pheromone production rate [1/time]
    gamma_phys: chemotactic sensitivity
    lambda_phys: look-ahead distance [length]
    L_box: periodic domain side [length]
    N: particle count
    """

    v0: float
    D_T_phys: float
    D_R: float
    D: float
    alpha_phys: float
    eta: float
    gamma_phys: float
    lambda_phys: float
    L_box: float
    N: int

    def __post_init__(self):
        for name in ("D_T_phys", "D_R", "D", "alpha_phys", "eta"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        if self.v0 < 0:
            raise ParameterError("v0 must be non-negative")
        if self.gamma_phys < 0:
            raise ParameterError("gamma_phys must be non-negative")
        if self.lambda_phys < 0:
            raise ParameterError("lambda_phys must be non-negative")
        if self.L_box <= 0:
            raise ParameterError("L_box must be positive")
        if self.N < 1:
            raise ParameterError("N must be at least 1")


@dataclass(frozen=True)
class ScaledParams:
    """Dimensionless parameter tuple consumed by every solver.

    D_T: rescaled translational diffusion, D_T_phys/D
    Pe: Peclet number, v0/sqrt(D*D_R)
    gamma: rescaled interaction strength, eta*gamma_phys/sqrt(D*D_R^3)
    lambda_: rescaled look-ahead distance, lambda_phys/sqrt(D/D_R)
    alpha: rescaled decay rate, alpha_phys/D_R
    """

    D_T: float
    Pe: float
    gamma: float
    lambda_: float
    alpha: float

    def __post_init__(self):
        validate(self)


def validate(s: ScaledParams) -> ScaledParams:
    """Return ``s`` unchanged if all invariants hold, else raise.

    Pe = 0 and gamma = 0 are valid (pure diffusion); D_T and alpha must be
    strictly positive, lambda_ non-negative.
    """
    if not (math.isfinite(s.D_T) and s.D_T > 0):
        raise ParameterError("D_T must be positive")
    if not (math.isfinite(s.alpha) and s.alpha > 0):
        raise ParameterError("alpha must be positive")
    if not (math.isfinite(s.Pe) and s.Pe >= 0):
        raise ParameterError("Pe must be non-negative")
    if not (math.isfinite(s.gamma) and s.gamma >= 0):
        raise ParameterError("gamma must be non-negative")
    if not (math.isfinite(s.lambda_) and s.lambda_ >= 0):
        raise ParameterError("lambda_ must be non-negative")
    return s


def rescale_physical(p: PhysicalParams) -> ScaledParams:
    """Map dimensional parameters onto the five dimensionless groups."""
    return ScaledParams(
        D_T=p.D_T_phys / p.D,
        Pe=p.v0 / math.sqrt(p.D * p.D_R),
        gamma=p.eta * p.gamma_phys / math.sqrt(p.D * p.D_R**3),
        lambda_=p.lambda_phys / math.sqrt(p.D / p.D_R),
        alpha=p.alpha_phys / p.D_R,
    )


def length_scale(p: PhysicalParams) -> float:
    """Reference length sqrt(D/D_R) dividing physical lengths."""
    return math.sqrt(p.D / p.D_R)


def time_scale(p: PhysicalParams) -> float:
    """Reference time 1/D_R dividing physical times."""
    return 1.0 / p.D_R


_PHYSICAL_KEYS = ("v0", "D_T_phys", "D_R", "D", "alpha_phys", "eta",
                  "gamma_phys", "lambda_phys", "L_box", "N")
_SCALED_KEYS = ("D_T", "Pe", "gamma", "lambda_", "alpha")


def scaled_from_dict(d: dict) -> ScaledParams:
    """Build ScaledParams from a JSON-style mapping with explicit keys.

    Accepts ``lambda`` as an alias for ``lambda_`` so config files can use
    the plain name.
    """
    d = dict(d)
    if "lambda" in d and "lambda_" not in d:
        d["lambda_"] = d.pop("lambda")
    missing = [k for k in _SCALED_KEYS if k not in d]
    if missing:
        raise ParameterError(f"missing scaled parameter keys: {missing}")
    extra = [k for k in d if k not in _SCALED_KEYS]
    if extra:
        raise ParameterError(f"unknown scaled parameter keys: {extra}")
    return ScaledParams(**{k: d[k] for k in _SCALED_KEYS})


def physical_from_dict(d: dict) -> PhysicalParams:
    missing = [k for k in _PHYSICAL_KEYS if k not in d]
    if missing:
        raise ParameterError(f"missing physical parameter keys: {missing}")
    extra = [k for k in d if k not in _PHYSICAL_KEYS]
    if extra:
        raise ParameterError(f"unknown physical parameter keys: {extra}")
    kwargs = {k: d[k] for k in _PHYSICAL_KEYS}
    kwargs["N"] = int(kwargs["N"])
    return PhysicalParams(**kwargs)


def params_from_config(cfg: dict) -> ScaledParams:
    """Read parameters from a config mapping.

    The config carries either a ``"scaled"`` block or a ``"physical"`` block
    (converted through :func:`rescale_physical`); exactly one must be present.
    """
    has_s, has_p = "scaled" in cfg, "physical" in cfg
    if has_s == has_p:
        raise ParameterError('config needs exactly one of "scaled" or "physical"')
    if has_s:
        return scaled_from_dict(cfg["scaled"])
    return rescale_physical(physical_from_dict(cfg["physical"]))


def load_config(path) -> dict:
    """Load a JSON configuration file (every field has an explicit key)."""
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ParameterError("config root must be a JSON object")
    return cfg


def scaled_to_dict(s: ScaledParams) -> dict:
    d = asdict(s)
    d["lambda"] = d.pop("lambda_")
    return d
