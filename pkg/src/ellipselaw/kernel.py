"""Pointwise interaction kernels.

``W_alpha(x) = -1/2 log|x|^2 + alpha x1^2/|x|^2`` and the general form
``W_{alpha,beta,gamma}(x) = -log|x| + (alpha x1^2 + beta x2^2 + gamma x1 x2)/|x|^2``.
Vectors are complex numbers ``x1 + 1j*x2``; gradients are returned the same
way (``d/dx1 + 1j d/dx2``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .complex_core import as_complex
from .errors import DomainError

__all__ = [
    "Regime",
    "AnisotropyStrength",
    "GeneralAnisotropy",
    "w_alpha",
    "grad_w_alpha",
    "grad_w_alpha_complex",
    "w_general",
    "grad_w_general",
    "force_general",
    "fourier_weight",
]


class Regime(str, enum.Enum):
    ELLIPSE = "ellipse"
    SEMICIRCLE = "semicircle"
    SWAPPED_ELLIPSE = "swapped-ellipse"
    SWAPPED_SEMICIRCLE = "swapped-semicircle"


@dataclass(frozen=True)
class AnisotropyStrength:
    """The scalar ``alpha`` together with the regime it selects.

    ``0 <= alpha < 1``: ellipse; ``alpha >= 1``: vertical wall (semicircle);
    negative values are the same picture with the axes swapped.
    """

    alpha: float

    def __post_init__(self):
        if not np.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def regime(self) -> Regime:
        a = self.alpha
        if 0.0 <= a < 1.0:
            return Regime.ELLIPSE
        if a >= 1.0:
            return Regime.SEMICIRCLE
        if a > -1.0:
            return Regime.SWAPPED_ELLIPSE
        return Regime.SWAPPED_SEMICIRCLE

    def __float__(self):
        return self.alpha


class GeneralAnisotropy(NamedTuple):
    alpha: float
    beta: float
    gamma: float


def _alpha(alpha) -> float:
    return float(alpha)


def _nonzero(x, what):
    x = as_complex(x, "x")
    if np.any(x == 0):
        raise DomainError(f"{what} is undefined at the origin")
    return x


def _out(arr):
    arr = np.asarray(arr)
    return arr[()] if arr.ndim == 0 else arr


def w_alpha(x, alpha):
    """Kernel value; ``+inf`` at the origin."""
    x = as_complex(x, "x")
    alpha = _alpha(alpha)
    r2 = (x * x.conj()).real
    with np.errstate(divide="ignore", invalid="ignore"):
        val = -0.5 * np.log(r2) + alpha * x.real**2 / r2
    return _out(np.where(r2 == 0, np.inf, val))


def grad_w_alpha(x, alpha):
    """Gradient ``-x/|x|^2 + 2 alpha x1 x2 x_perp/|x|^4``."""
    x = _nonzero(x, "grad W_alpha")
    alpha = _alpha(alpha)
    x1, x2 = x.real, x.imag
    r2 = x1 * x1 + x2 * x2
    s = 2.0 * alpha * x1 * x2 / (r2 * r2)
    g1 = -x1 / r2 + s * x2
    g2 = -x2 / r2 - s * x1
    return _out(g1 + 1j * g2)


def grad_w_alpha_complex(x, alpha):
    """Same gradient through ``2 dbar W = -1/zbar + (alpha/2)/z - (alpha/2) z/zbar^2``."""
    z = _nonzero(x, "grad W_alpha")
    alpha = _alpha(alpha)
    zb = z.conj()
    return _out(-1.0 / zb + 0.5 * alpha / z - 0.5 * alpha * z / (zb * zb))


def w_general(x, g):
    x = as_complex(x, "x")
    al, be, ga = map(float, g)
    x1, x2 = x.real, x.imag
    r2 = x1 * x1 + x2 * x2
    with np.errstate(divide="ignore", invalid="ignore"):
        val = -0.5 * np.log(r2) + (al * x1 * x1 + be * x2 * x2 + ga * x1 * x2) / r2
    return _out(np.where(r2 == 0, np.inf, val))


def force_general(x, g):
    """Anisotropic force ``-grad V`` (log part excluded).

    Equal to ``(gamma x1^2 - gamma x2^2 + 2(beta-alpha) x1 x2)/|x|^4 * x_perp``;
    it is tangential and vanishes on two orthogonal lines through 0.
    """
    x = _nonzero(x, "force")
    al, be, ga = map(float, g)
    x1, x2 = x.real, x.imag
    r2 = x1 * x1 + x2 * x2
    s = (ga * (x1 * x1 - x2 * x2) + 2.0 * (be - al) * x1 * x2) / (r2 * r2)
    return _out(s * x2 - 1j * s * x1)


def grad_w_general(x, g):
    x = _nonzero(x, "grad W")
    r2 = (x * x.conj()).real
    return _out(-x / r2 - np.asarray(force_general(x, g)))


def fourier_weight(xi, alpha):
    """Positive part of the kernel's Fourier transform away from 0.

    Returns ``((1-alpha) xi1^2 + (1+alpha) xi2^2) / |xi|^4``.  The true density
    carries an extra factor ``1/(2 pi)``, omitted here since only the sign
    matters.  Nonnegative for every ``xi`` iff ``|alpha| <= 1``.
    """
    xi = _nonzero(xi, "fourier_weight")
    alpha = _alpha(alpha)
    k1, k2 = xi.real, xi.imag
    r2 = k1 * k1 + k2 * k2
    return _out(((1.0 - alpha) * k1 * k1 + (1.0 + alpha) * k2 * k2) / (r2 * r2))
