"""Ellipse-law minimisers of anisotropic logarithmic interaction energies.

Closed-form potentials of uniform ellipses, the minimiser map, and three
independent ways to check them: quadrature, Euler-Lagrange grid checks and
an interacting-particle gradient flow.
"""

from .closed_form import (
    c_alpha,
    ellipse_energy,
    grad_potential,
    log_potential,
    min_energy,
    minimizer,
    minimizer_ellipse,
    potential,
)
from .errors import CollisionError, DomainError, ToleranceNotReached
from .geometry import EllipseDomain, Region
from .kernel import AnisotropyStrength, GeneralAnisotropy, Regime

__version__ = "0.1.0"

__all__ = [
    "AnisotropyStrength",
    "CollisionError",
    "DomainError",
    "EllipseDomain",
    "GeneralAnisotropy",
    "Regime",
    "Region",
    "ToleranceNotReached",
    "c_alpha",
    "ellipse_energy",
    "grad_potential",
    "log_potential",
    "min_energy",
    "minimizer",
    "minimizer_ellipse",
    "potential",
]
