"""Closed-form potentials of the uniform measure on an ellipse.

``mu_{a,b}`` is the normalised indicator ``chi_Omega(a,b) / (pi a b)``.  All
point arguments are complex (``x1 + 1j*x2``) scalars or arrays; vector
outputs (gradients) use the same encoding.

The formulas assume ``b >= a``.  Callers with ``a > b`` pass
``allow_swap=True`` and the evaluation is routed through the reflection
``(x1, x2) -> (x2, x1)``, which maps ``Omega(a, b)`` to ``Omega(b, a)`` and
``W_alpha`` to ``alpha + W_{-alpha}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complex_core import as_complex, branch_sqrt, h_func, h_prime
from .errors import DomainError
from .geometry import EllipseDomain
from .kernel import Regime

__all__ = [
    "MinimizerDescriptor",
    "cauchy_transform",
    "conv_conj",
    "conv_z_over_zbar2",
    "grad_potential",
    "grad_interior",
    "grad_exterior",
    "potential_interior",
    "potential_exterior",
    "grad_potential_assembled",
    "log_potential",
    "potential",
    "c_alpha",
    "ellipse_energy",
    "min_energy",
    "minimizer",
    "minimizer_ellipse",
    "foci_level",
    "el2_integrand",
]


def _out(arr):
    arr = np.asarray(arr)
    return arr[()] if arr.ndim == 0 else arr


def _reflect(z):
    """(x1, x2) -> (x2, x1) on complex numbers (also maps gradients back)."""
    return 1j * np.conj(z)


def _needs_swap(e: EllipseDomain, allow_swap: bool) -> bool:
    if e.is_canonical:
        return False
    if not allow_swap:
        raise DomainError(
            f"closed forms need b >= a (got a={e.a}, b={e.b}); pass allow_swap=True"
        )
    return True


def _split(z, e: EllipseDomain):
    """Complex array plus interior / exterior masks."""
    z = as_complex(z)
    inside = np.asarray(e.inside_mask(z))
    return z, inside, ~inside


def _not_interior(z, e: EllipseDomain):
    # the cut [-ic, ic] is strictly inside, so boundary points are fine
    if np.any(e.level(z) < 1.0 - e.eps_b):
        raise DomainError("exterior formula evaluated at an interior point")
    return z


def _exterior(z, e: EllipseDomain):
    # [-ic, ic] lies inside Omega(a,b) because c < b, so exterior points never
    # touch the branch cut; enforce that here.
    if np.any(e.inside_mask(z)):
        raise DomainError("exterior formula evaluated at a non-exterior point")
    return z


# -- convolutions against the indicator ------------------------------------


def cauchy_transform(z, e: EllipseDomain, allow_swap: bool = True):
    """``(1/(pi z)) * chi_Omega(a,b)``: ``zbar - lam z`` inside, ``2ab h(z)`` outside."""
    if _needs_swap(e, allow_swap):
        return _out(-1j * np.conj(cauchy_transform(_reflect(z), e.swapped())))
    z, inside, outside = _split(z, e)
    out = np.empty_like(z)
    zi = z[inside]
    out[inside] = zi.conj() - e.lam * zi
    zo = _exterior(z[outside], e)
    out[outside] = 2.0 * e.a * e.b * h_func(zo, e.c2)
    return _out(out)


def conv_conj(z, e: EllipseDomain, allow_swap: bool = True):
    """``(1/(pi zbar)) * chi_Omega(a,b)``: ``z - lam zbar`` inside, ``2ab h(zbar)`` outside."""
    if _needs_swap(e, allow_swap):
        return _out(1j * np.conj(conv_conj(_reflect(z), e.swapped())))
    z, inside, outside = _split(z, e)
    out = np.empty_like(z)
    zi = z[inside]
    out[inside] = zi - e.lam * zi.conj()
    zo = _exterior(z[outside], e)
    out[outside] = 2.0 * e.a * e.b * h_func(zo.conj(), e.c2)
    return _out(out)


def conv_z_over_zbar2(z, e: EllipseDomain, allow_swap: bool = True):
    """``-(1/pi) (z/zbar^2) * chi_Omega(a,b)``.

    Inside: ``lam^2 zbar - lam z``.  Outside:
    ``2ab (z - lam zbar - 2ab h(zbar)) h'(zbar) - 2ab lam h(zbar)``.
    """
    if _needs_swap(e, allow_swap):
        return _out(-1j * np.conj(conv_z_over_zbar2(_reflect(z), e.swapped())))
    z, inside, outside = _split(z, e)
    lam, ab = e.lam, e.a * e.b
    out = np.empty_like(z)
    zi = z[inside]
    out[inside] = lam * lam * zi.conj() - lam * zi
    zo = _exterior(z[outside], e)
    zb = zo.conj()
    hb = h_func(zb, e.c2)
    out[outside] = 2.0 * ab * (zo - lam * zb - 2.0 * ab * hb) * h_prime(zb, e.c2) - 2.0 * ab * lam * hb
    return _out(out)


# -- potentials of mu_{a,b} -------------------------------------------------


def grad_interior(z, e: EllipseDomain, alpha):
    """Interior gradient formula (linear in ``z`` and ``zbar``), no masking."""
    z = as_complex(z)
    alpha = float(alpha)
    lam, ab = e.lam, e.a * e.b
    return _out(((-1.0 - alpha * lam) * z + (lam + 0.5 * alpha * (1.0 + lam * lam)) * z.conj()) / ab)


def grad_exterior(z, e: EllipseDomain, alpha):
    """Exterior gradient formula; valid on the closed exterior including the boundary."""
    z = _not_interior(as_complex(z), e)
    alpha = float(alpha)
    lam, ab = e.lam, e.a * e.b
    zb = z.conj()
    hb = h_func(zb, e.c2)
    return _out(
        -(2.0 + alpha * lam) * hb
        + alpha * h_func(z, e.c2)
        - alpha * (lam * zb - z + 2.0 * ab * hb) * h_prime(zb, e.c2)
    )


def grad_potential(z, e: EllipseDomain, alpha, allow_swap: bool = False):
    """Gradient of ``W_alpha * mu_{a,b}`` as ``d/dx1 + 1j d/dx2``."""
    alpha = float(alpha)
    if _needs_swap(e, allow_swap):
        return _out(_reflect(grad_potential(_reflect(z), e.swapped(), -alpha)))
    z, inside, outside = _split(z, e)
    out = np.empty_like(z)
    out[inside] = grad_interior(z[inside], e, alpha)
    out[outside] = grad_exterior(_exterior(z[outside], e), e, alpha)
    return _out(out)


def grad_potential_assembled(z, e: EllipseDomain, alpha, allow_swap: bool = False):
    """Gradient rebuilt from the three indicator convolutions.

    ``grad W_alpha = -1/zbar + (alpha/2)/z - (alpha/2) z/zbar^2``, so after
    dividing by ``ab`` the three transforms combine linearly.
    """
    alpha = float(alpha)
    if _needs_swap(e, allow_swap):
        return _out(_reflect(grad_potential_assembled(_reflect(z), e.swapped(), -alpha)))
    z = as_complex(z)
    ab = e.a * e.b
    total = -conv_conj(z, e) + 0.5 * alpha * cauchy_transform(z, e) + 0.5 * alpha * conv_z_over_zbar2(z, e)
    return _out(total / ab)


def _H(z, c2):
    # -(1/c2) Re(z sqrt(z^2+c2) - z^2) - log|sqrt(z^2+c2) + z| + log 2 + 1/2,
    # rewritten through z sqrt(.) - z^2 = c2 z h(z) so that c2 -> 0 is exact
    # (the disk value -log|z|) and there is no cancellation for small c2.
    h = h_func(z, c2)
    return -(z * h).real + np.log(np.abs(h)) + np.log(2.0) + 0.5


def log_potential(z, e: EllipseDomain, allow_swap: bool = False):
    """Logarithmic potential ``-log|.| * mu_{a,b}``."""
    if _needs_swap(e, allow_swap):
        return log_potential(_reflect(z), e.swapped())
    z, inside, outside = _split(z, e)
    a, b = e.a, e.b
    out = np.empty(z.shape)
    zi = z[inside]
    out[inside] = -(b * zi.real**2 + a * zi.imag**2) / (a * b * (a + b)) - np.log((a + b) / 2.0) + 0.5
    zo = _exterior(z[outside], e)
    out[outside] = _H(zo, e.c2)
    return _out(out)


def potential_interior(z, e: EllipseDomain, alpha):
    """Interior quadratic, no masking."""
    z = as_complex(z)
    alpha = float(alpha)
    a, b = e.a, e.b
    s = a + b
    cx = (-a - b + alpha * b) / (a * s * s)
    cy = -(a + b + alpha * a) / (b * s * s)
    return _out(cx * z.real**2 + cy * z.imag**2 - np.log(s / 2.0) + 0.5 + alpha * a / s)


def potential_exterior(z, e: EllipseDomain, alpha):
    """Exterior formula; valid on the closed exterior including the boundary."""
    z = _not_interior(as_complex(z), e)
    alpha = float(alpha)
    zb = z.conj()
    hb = h_func(zb, e.c2)
    aniso = (h_func(z, e.c2) * zb - e.a * e.b * hb * hb - e.lam * hb * zb).real
    return _out(_H(z, e.c2) + alpha * aniso + alpha * e.a / (e.a + e.b))


def potential(z, e: EllipseDomain, alpha, allow_swap: bool = False):
    """``(W_alpha * mu_{a,b})(z)`` on the whole plane.

    Inside it is the quadratic
    ``A x1^2 + B x2^2 - log((a+b)/2) + 1/2 + alpha a/(a+b)``; outside
    ``H(z) + alpha Re(h(z) zbar - ab h(zbar)^2 - lam h(zbar) zbar) + alpha a/(a+b)``.
    """
    alpha = float(alpha)
    if _needs_swap(e, allow_swap):
        return _out(alpha + potential(_reflect(z), e.swapped(), -alpha))
    z, inside, outside = _split(z, e)
    out = np.empty(z.shape)
    out[inside] = potential_interior(z[inside], e, alpha)
    out[outside] = potential_exterior(_exterior(z[outside], e), e, alpha)
    return _out(out)


# -- constants and energies -------------------------------------------------


def _check_ellipse_alpha(alpha):
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"formula valid for 0 <= alpha < 1, got {alpha}")
    return alpha


def c_alpha(alpha) -> float:
    """Euler-Lagrange constant of the ellipse law."""
    alpha = _check_ellipse_alpha(alpha)
    sm, sp = np.sqrt(1.0 - alpha), np.sqrt(1.0 + alpha)
    return float(0.5 - np.log((sm + sp) / 2.0) + alpha * sm / (sm + sp))


def min_energy(alpha) -> float:
    """Minimum value of the energy, attained at the ellipse law."""
    alpha = _check_ellipse_alpha(alpha)
    sm, sp = np.sqrt(1.0 - alpha), np.sqrt(1.0 + alpha)
    return float(0.375 - 0.5 * np.log((sm + sp) / 2.0) + 0.5 * alpha * sm / (sm + sp))


def second_moments(e: EllipseDomain):
    """``(E[x1^2], E[x2^2])`` under ``mu_{a,b}``."""
    return e.a**2 / 4.0, e.b**2 / 4.0


def ellipse_energy(e: EllipseDomain, alpha, allow_swap: bool = False) -> float:
    """Energy ``I_alpha(mu_{a,b})`` of the uniform measure on ``Omega(a,b)``."""
    alpha = float(alpha)
    if _needs_swap(e, allow_swap):
        # the reflection adds the constant alpha to the kernel, i.e. alpha/2 to I
        return 0.5 * alpha + ellipse_energy(e.swapped(), -alpha)
    a, b = e.a, e.b
    s = a + b
    cx = (-a - b + alpha * b) / (a * s * s)
    cy = -(a + b + alpha * a) / (b * s * s)
    m11, m22 = second_moments(e)
    return float(
        0.5 * (1.0 + cx) * m11
        + 0.5 * (1.0 + cy) * m22
        - 0.5 * np.log(s / 2.0)
        + 0.25
        + 0.5 * alpha * a / s
    )


# -- minimiser --------------------------------------------------------------


@dataclass(frozen=True)
class MinimizerDescriptor:
    """Shape of the unique minimiser for a given ``alpha``.

    ``ellipse`` is set in the two ellipse regimes; ``axis`` (a unit complex
    number) and ``radius`` describe the supporting segment of a semicircle law.
    """

    alpha: float
    regime: Regime
    ellipse: Optional[EllipseDomain] = None
    axis: Optional[complex] = None
    radius: Optional[float] = None


def minimizer_ellipse(alpha) -> EllipseDomain:
    """``Omega(sqrt(1-alpha), sqrt(1+alpha))``, valid for ``|alpha| < 1``."""
    alpha = float(alpha)
    if not -1.0 < alpha < 1.0:
        raise DomainError(f"ellipse law needs |alpha| < 1, got {alpha}")
    return EllipseDomain(np.sqrt(1.0 - alpha), np.sqrt(1.0 + alpha))


def minimizer(alpha) -> MinimizerDescriptor:
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if alpha >= 1.0:
        return MinimizerDescriptor(alpha, Regime.SEMICIRCLE, axis=1j, radius=np.sqrt(2.0))
    if alpha <= -1.0:
        return MinimizerDescriptor(alpha, Regime.SWAPPED_SEMICIRCLE, axis=1.0 + 0j, radius=np.sqrt(2.0))
    regime = Regime.ELLIPSE if alpha >= 0.0 else Regime.SWAPPED_ELLIPSE
    return MinimizerDescriptor(alpha, regime, ellipse=minimizer_ellipse(alpha))


# -- boundary level function and the exterior sign ---------------------------


def foci_level(z, e: EllipseDomain):
    """``|z^2| + |z^2 + c^2| - (a^2 + b^2)``: zero on the boundary, >= 0 outside."""
    if not e.is_canonical:
        raise DomainError("foci_level needs b >= a")
    z = as_complex(z)
    z2 = z * z
    return _out(np.abs(z2) + np.abs(z2 + e.c2) - (e.a**2 + e.b**2))


def el2_integrand(z, alpha):
    """Product whose sign decides the exterior condition for the ellipse law.

    ``(|z^2+2 alpha| + |z^2| - 2) / (2 |z^2+2 alpha|) * Re(zbar sqrt(z^2+2 alpha))``;
    both factors are nonnegative outside the minimising ellipse.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"el2_integrand needs 0 < alpha < 1, got {alpha}")
    z = as_complex(z)
    e = minimizer_ellipse(alpha)
    if np.any(e.level(z) < 1.0 - e.eps_b):
        raise DomainError("el2_integrand is defined on and outside the minimising ellipse")
    w = np.asarray(branch_sqrt(z, 2.0 * alpha))
    m = np.abs(z * z + 2.0 * alpha)
    return _out((m + np.abs(z * z) - 2.0) / (2.0 * m) * (z.conj() * w).real)
