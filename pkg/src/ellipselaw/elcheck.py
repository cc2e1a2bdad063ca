"""Grid checks of the optimality conditions for the ellipse law.

For ``mu_alpha`` uniform on ``Omega(sqrt(1-alpha), sqrt(1+alpha))``:

* inside:  ``W * mu + |z|^2/2 = C_alpha`` and ``grad(W * mu) + z = 0``;
* outside: ``W * mu + |z|^2/2 >= C_alpha`` and ``Re(zbar grad(W * mu)) + |z|^2 >= 0``.

Points inside the boundary band are skipped here; :func:`check_c1` covers the
boundary itself by comparing the two formula branches there.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import closed_form as cf
from .errors import DomainError
from .geometry import EllipseDomain

__all__ = ["ResidualReport", "C1Report", "check_el1", "check_el2", "check_c1", "distance_to_boundary"]

EL1_TOL = 1e-9
EL2_TOL = 1e-10
C1_TOL = 1e-9


def _point(z):
    return [float(np.real(z)), float(np.imag(z))]


@dataclass
class ResidualReport:
    alpha: float
    grid_spec: dict
    n_points: int
    max_abs_interior_residual: float = 0.0
    argmax_location: list = field(default_factory=lambda: [0.0, 0.0])
    max_potential_residual: float = 0.0
    max_gradient_residual: float = 0.0
    min_exterior_margin: float = np.inf
    argmin_location: list = field(default_factory=lambda: [0.0, 0.0])
    min_gradient_margin: float = np.inf
    argmin_distance_cells: float = np.nan
    integrand_max_mismatch: float = np.nan
    tolerance: float = 0.0
    passed: bool = True

    def to_dict(self):
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, float) and not np.isfinite(v):
                d[k] = None if np.isnan(v) else ("inf" if v > 0 else "-inf")
        return d


def _grid(x_ext, y_ext, resolution):
    xs = np.linspace(-x_ext, x_ext, resolution)
    ys = np.linspace(-y_ext, y_ext, resolution)
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    return (X + 1j * Y).ravel()


def distance_to_boundary(z, e: EllipseDomain, samples: int = 20000):
    """Euclidean distance from each point to the ellipse, by dense sampling."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    bd = e.boundary_points(samples)
    return np.array([np.abs(bd - p).min() for p in z])


def check_el1(alpha, resolution: int = 101, tol: float = EL1_TOL) -> ResidualReport:
    """Interior equality residuals on a grid covering the minimising ellipse."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"check_el1 needs 0 <= alpha < 1, got {alpha}")
    e = cf.minimizer_ellipse(alpha)
    z = _grid(e.a, e.b, resolution)
    z = z[e.level(z) < 1.0 - e.eps_b]
    c = cf.c_alpha(alpha)
    pot = np.abs(cf.potential(z, e, alpha) + np.abs(z) ** 2 / 2.0 - c)
    grd = np.abs(cf.grad_potential(z, e, alpha) + z)
    worst = np.maximum(pot, grd)
    k = int(np.argmax(worst))
    rep = ResidualReport(
        alpha=alpha,
        grid_spec={"extent": [e.a, e.b], "resolution": resolution, "region": "interior"},
        n_points=int(z.size),
        max_abs_interior_residual=float(worst[k]),
        argmax_location=_point(z[k]),
        max_potential_residual=float(pot.max()),
        max_gradient_residual=float(grd.max()),
        tolerance=tol,
    )
    rep.passed = rep.max_abs_interior_residual <= tol
    return rep


def check_el2(alpha, extent: float = 4.0, resolution: int = 201, tol: float = EL2_TOL) -> ResidualReport:
    """Exterior inequality margins on ``[-extent, extent]^2``."""
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"check_el2 needs 0 <= alpha < 1, got {alpha}")
    e = cf.minimizer_ellipse(alpha)
    z = _grid(extent, extent, resolution)
    z = z[e.level(z) > 1.0 + e.eps_b]
    c = cf.c_alpha(alpha)
    margin = cf.potential(z, e, alpha) + np.abs(z) ** 2 / 2.0 - c
    gmargin = (z.conj() * cf.grad_potential(z, e, alpha)).real + np.abs(z) ** 2
    k = int(np.argmin(margin))
    cell = 2.0 * extent / (resolution - 1)
    mismatch = np.nan
    if alpha > 0.0:
        # Re(zbar (grad + z)) is exactly the factored exterior expression
        mismatch = float(np.abs(gmargin - cf.el2_integrand(z, alpha)).max())
    rep = ResidualReport(
        alpha=alpha,
        grid_spec={"extent": extent, "resolution": resolution, "region": "exterior"},
        n_points=int(z.size),
        min_exterior_margin=float(margin[k]),
        argmin_location=_point(z[k]),
        min_gradient_margin=float(gmargin.min()),
        argmin_distance_cells=float(distance_to_boundary(z[k], e)[0] / cell),
        integrand_max_mismatch=mismatch,
        tolerance=tol,
    )
    rep.passed = rep.min_exterior_margin >= -tol and rep.min_gradient_margin >= -tol
    return rep


@dataclass
class C1Report:
    a: float
    b: float
    alpha: float
    n_samples: int
    max_value_mismatch: float
    max_gradient_mismatch: float
    worst_angle: float
    tolerance: float = C1_TOL
    passed: bool = True

    def to_dict(self):
        return asdict(self)


def check_c1(e: EllipseDomain, alpha, n_boundary_samples: int = 64, tol: float = C1_TOL) -> C1Report:
    """Interior vs exterior formulas at ``(a cos t, b sin t)``, ``t = 2 pi k/n``."""
    if not e.is_canonical:
        raise DomainError("check_c1 needs b >= a")
    t = 2.0 * np.pi * np.arange(n_boundary_samples) / n_boundary_samples
    z = e.a * np.cos(t) + 1j * e.b * np.sin(t)
    dv = np.abs(cf.potential_interior(z, e, alpha) - cf.potential_exterior(z, e, alpha))
    dg = np.abs(cf.grad_interior(z, e, alpha) - cf.grad_exterior(z, e, alpha))
    k = int(np.argmax(np.maximum(dv, dg)))
    rep = C1Report(e.a, e.b, float(alpha), n_boundary_samples, float(dv.max()), float(dg.max()), float(t[k]), tol)
    rep.passed = rep.max_value_mismatch <= tol and rep.max_gradient_mismatch <= tol
    return rep
