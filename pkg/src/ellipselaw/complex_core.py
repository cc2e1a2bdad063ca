"""Complex arithmetic helpers.

Points of the plane are handled as Python/numpy complex numbers
``z = x1 + 1j*x2``.  Every function here accepts a scalar or an array and
returns the same shape.

The central object is the quadrant-preserving square root
``w = sqrt(z**2 + c2)``: the branch that behaves like ``z`` at infinity, with
its cut on the segment ``[-i sqrt(c2), i sqrt(c2)]`` of the imaginary axis.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = ["as_complex", "branch_sqrt", "h_func", "h_prime", "perp", "on_cut"]


def as_complex(z, name="z"):
    """Return ``z`` as a complex128 array, rejecting NaN/Inf."""
    arr = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite values")
    return arr


def _c2_of(c2):
    # EllipseDomain and friends carry their own c2
    c2 = float(getattr(c2, "c2", c2))
    if not np.isfinite(c2) or c2 < 0:
        raise DomainError(f"c2 must be a finite nonnegative real, got {c2!r}")
    return c2


def _out(arr):
    return arr[()] if arr.ndim == 0 else arr


def on_cut(z, c2):
    """Boolean mask of points strictly inside the open cut ``(-i c, i c)``."""
    z = np.asarray(z, dtype=np.complex128)
    c2 = _c2_of(c2)
    return (z.real == 0.0) & (z.imag * z.imag < c2)


def branch_sqrt(z, c2):
    """Quadrant-preserving branch of ``sqrt(z**2 + c2)``.

    The result ``w`` satisfies ``w**2 == z**2 + c2``, ``Re(z) Re(w) >= 0`` and
    ``Im(z) Im(w) >= 0``.  Start from the principal root and flip its sign
    whenever it points into the wrong half plane, i.e. when
    ``Re(conj(z) w) < 0``; off the cut the correct root has
    ``Re(conj(z) w) > 0`` so the test is unambiguous.

    The cut endpoints ``±i sqrt(c2)`` are accepted (``w = 0``); points strictly
    inside the cut raise :class:`DomainError`.
    """
    z = as_complex(z)
    c2 = _c2_of(c2)
    if np.any(on_cut(z, c2)):
        raise DomainError("z lies strictly inside the branch cut [-ic, ic]")
    w = np.sqrt(z * z + c2)
    flip = (z.real * w.real + z.imag * w.imag) < 0.0
    w = np.where(flip, -w, w)
    return _out(w)


def h_func(z, c2):
    """``h(z) = 1 / (z + sqrt(z**2 + c2))``.

    ``c2`` is ``b**2 - a**2`` (an :class:`EllipseDomain` may be passed
    instead).  For ``c2 == 0`` this is ``1/(2z)``.
    """
    z = as_complex(z)
    w = np.asarray(branch_sqrt(z, c2))
    return _out(1.0 / (z + w))


def h_func_alt(z, c2):
    """Algebraic alternative ``(sqrt(z**2 + c2) - z) / c2``, valid for c2 > 0."""
    z = as_complex(z)
    c2v = _c2_of(c2)
    if c2v == 0.0:
        raise DomainError("the alternate form of h needs c2 > 0")
    w = np.asarray(branch_sqrt(z, c2v))
    return _out((w - z) / c2v)


def h_prime(z, c2):
    """Derivative ``h'(z) = -h(z) / sqrt(z**2 + c2)``."""
    z = as_complex(z)
    w = np.asarray(branch_sqrt(z, c2))
    return _out(-1.0 / ((z + w) * w))


def perp(z):
    """``x_perp = (x2, -x1)`` written as a complex number: ``-1j * z``."""
    return -1j * np.asarray(z, dtype=np.complex128)
