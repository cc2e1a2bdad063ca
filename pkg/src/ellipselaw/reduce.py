"""Rotation of a general anisotropy onto the single-parameter form.

For ``V = (alpha x1^2 + beta x2^2 + gamma x1 x2)/|x|^2`` there is a rotation
``y = R x`` with ``V = s y1^2/|y|^2 + const``, ``s = sqrt((beta-alpha)^2 +
gamma^2)``.  The minimiser of the general energy is then the image of the
single-parameter minimiser with strength ``s``: an ellipse with its major
axis on ``y1 = 0`` when ``s < 1``, a semicircle law on that line otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import EllipseDomain
from .kernel import GeneralAnisotropy, Regime

__all__ = ["ReductionResult", "reduce", "force_zero_lines"]


def _unit(v: complex) -> complex:
    v = complex(v) / abs(v)
    # fixed orientation: upper half plane, or +x1 when horizontal
    if v.imag < 0 or (v.imag == 0 and v.real < 0):
        v = -v
    return v


@dataclass(frozen=True)
class ReductionResult:
    rotation: np.ndarray
    effective_strength: float
    additive_constant: float
    predicted_regime: Regime
    support_axis: complex

    def to_canonical(self, x):
        """Map points ``x`` (complex) to the rotated coordinates ``y``."""
        x = np.asarray(x, dtype=np.complex128)
        R = self.rotation
        y1 = R[0, 0] * x.real + R[0, 1] * x.imag
        y2 = R[1, 0] * x.real + R[1, 1] * x.imag
        return y1 + 1j * y2

    def from_canonical(self, y):
        y = np.asarray(y, dtype=np.complex128)
        R = self.rotation
        x1 = R[0, 0] * y.real + R[1, 0] * y.imag
        x2 = R[0, 1] * y.real + R[1, 1] * y.imag
        return x1 + 1j * x2

    def canonical_ellipse(self) -> EllipseDomain:
        """Minimising ellipse in ``y`` coordinates (ellipse regime only)."""
        s = self.effective_strength
        if s >= 1.0:
            raise DomainError("strength >= 1: the minimiser is a semicircle law")
        return EllipseDomain(np.sqrt(1.0 - s), np.sqrt(1.0 + s))

    @property
    def support_angle(self) -> float:
        """Angle of the support axis in radians, in [0, pi)."""
        return float(np.angle(self.support_axis) % np.pi)

    def as_dict(self):
        R = self.rotation
        return {
            "rotation": R.tolist(),
            "effective_strength": self.effective_strength,
            "additive_constant": self.additive_constant,
            "predicted_regime": self.predicted_regime.value,
            "support_axis": [self.support_axis.real, self.support_axis.imag],
            "rotation_orthogonality_error": float(np.abs(R @ R.T - np.eye(2)).max()),
            "rotation_determinant": float(np.linalg.det(R)),
        }


def reduce(g) -> ReductionResult:
    al, be, ga = map(float, GeneralAnisotropy(*g))
    d = be - al
    s = float(np.hypot(d, ga))
    if ga == 0.0 and d >= 0.0:
        # V = (beta - alpha) x2^2/|x|^2 + alpha: swap the axes with a proper rotation
        R = np.array([[0.0, 1.0], [-1.0, 0.0]])
        const = al
    else:
        # d - s without cancellation when d > 0
        at = -ga * ga / (d + s) if d > 0.0 else d - s
        # rescale first so tiny (even subnormal) gamma keeps full precision
        m = max(abs(at), abs(ga))
        at, gn = at / m, ga / m
        n = np.hypot(at, gn)
        R = np.array([[-at, gn], [-gn, -at]]) / n
        const = be - s * (gn / n) ** 2
    regime = Regime.SEMICIRCLE if s >= 1.0 else Regime.ELLIPSE
    # the line y1 = 0 is spanned by R^T e2
    axis = _unit(complex(R[1, 0], R[1, 1]))
    return ReductionResult(R, s, float(const), regime, axis)


def force_zero_lines(g):
    """Unit directions of the two lines where the anisotropic force vanishes.

    Slopes ``(beta - alpha +- sqrt((beta-alpha)^2 + gamma^2)) / gamma``; the
    minus root is the attracting line ``y1 = 0``.  Returned in that order.
    """
    al, be, ga = map(float, GeneralAnisotropy(*g))
    if ga == 0.0:
        raise DomainError("gamma = 0: the zero lines are the coordinate axes (use reduce)")
    d = be - al
    s = np.hypot(d, ga)
    return tuple(_unit(complex(1.0, (d + sgn * s) / ga)) for sgn in (-1.0, 1.0))
