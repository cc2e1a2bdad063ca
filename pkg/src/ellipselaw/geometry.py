"""Ellipse domains ``Omega(a, b) = {x1^2/a^2 + x2^2/b^2 < 1}``."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .complex_core import as_complex

__all__ = ["Region", "EllipseDomain", "BOUNDARY_BAND"]

BOUNDARY_BAND = 1e-12


class Region(str, enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class EllipseDomain:
    """Semi-axes ``a`` (horizontal) and ``b`` (vertical).

    ``lam = (a-b)/(a+b)`` and ``c2 = b^2 - a^2`` are the two derived numbers
    the closed forms are written in.  ``eps_b`` is the half-width of the band
    around ``level == 1`` that counts as boundary.
    """

    a: float
    b: float
    eps_b: float = BOUNDARY_BAND

    def __post_init__(self):
        for name in ("a", "b"):
            v = float(getattr(self, name))
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"semi-axis {name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def lam(self) -> float:
        return (self.a - self.b) / (self.a + self.b)

    @property
    def c2(self) -> float:
        return self.b * self.b - self.a * self.a

    @property
    def is_canonical(self) -> bool:
        """True when ``b >= a``, the orientation the closed forms assume."""
        return self.b >= self.a

    def swapped(self) -> "EllipseDomain":
        return EllipseDomain(self.b, self.a, self.eps_b)

    def level(self, z):
        """``x1^2/a^2 + x2^2/b^2``; equals 1 on the boundary."""
        z = as_complex(z)
        return (z.real / self.a) ** 2 + (z.imag / self.b) ** 2

    def inside_mask(self, z):
        """Points handled by the interior formulas (interior plus boundary band)."""
        return self.level(z) <= 1.0 + self.eps_b

    def outside_mask(self, z):
        return self.level(z) > 1.0 + self.eps_b

    def classify(self, z):
        """:class:`Region` of a point, or an object array of them."""
        lev = np.asarray(self.level(z))
        # index into an object array of members: numpy would otherwise
        # coerce the str-valued enum to a plain string
        members = np.empty(3, dtype=object)
        members[:] = [Region.INSIDE, Region.BOUNDARY, Region.OUTSIDE]
        code = np.where(lev < 1.0 - self.eps_b, 0, np.where(lev <= 1.0 + self.eps_b, 1, 2))
        out = members[code]
        return out

    def boundary_points(self, n: int, phase: float = 0.0):
        """``n`` points ``(a cos t, b sin t)`` at ``t = phase + 2 pi k/n``."""
        t = phase + 2.0 * np.pi * np.arange(n) / n
        return self.a * np.cos(t) + 1j * self.b * np.sin(t)

    def sample_uniform(self, n: int, rng: np.random.Generator):
        """``n`` i.i.d. points uniform on the ellipse."""
        r = np.sqrt(rng.random(n))
        t = 2.0 * np.pi * rng.random(n)
        return self.a * r * np.cos(t) + 1j * self.b * r * np.sin(t)
