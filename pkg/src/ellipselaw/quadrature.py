"""Brute-force quadrature for convolutions and energies on an ellipse.

These are deliberately independent of :mod:`ellipselaw.closed_form`: they only
evaluate kernels pointwise.

Every target is integrated in polar coordinates centred at the target,
``xi = z + rho e^{it}``.  For interior (and boundary) targets ``rho`` runs over
``(0, R(t))`` for all ``t``; the Jacobian ``rho`` cancels the ``1/|u|``
singularities and tames ``log|u|``, so one rule serves every kernel.  For
exterior targets only the directions that hit the ellipse contribute, and
``rho`` runs over the chord.  Tensor rules: midpoint in the periodic angle,
Gauss-Legendre in ``rho`` and in the (substituted) exterior angle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import kernel as K
from .errors import DomainError, ToleranceNotReached
from .geometry import EllipseDomain

__all__ = ["QuadratureConfig", "KERNELS", "conv_oracle", "energy_oracle", "EnergyEstimate"]


@dataclass(frozen=True)
class QuadratureConfig:
    radial_nodes: int = 256
    angular_nodes: int = 256
    mc_samples: int = 1_000_000
    rng_seed: int = 20240601

    def __post_init__(self):
        if self.radial_nodes < 16 or self.angular_nodes < 16:
            raise ValueError("node counts must be at least 16")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be positive")

    def refined(self) -> "QuadratureConfig":
        return QuadratureConfig(2 * self.radial_nodes, 2 * self.angular_nodes, self.mc_samples, self.rng_seed)


# kernel_id -> (kernel of the displacement u = z - xi, scale on the mu-average).
# The scale turns the mu_{a,b}-average into the quantity the matching closed
# form returns: the three Cauchy-type transforms are (1/pi)-normalised
# convolutions against the bare indicator, i.e. ab times the mu-average.
def _log(u, alpha):
    return -np.log(np.abs(u))


def _cauchy(u, alpha):
    return 1.0 / u


def _conj_cauchy(u, alpha):
    return 1.0 / np.conj(u)


def _z_over_zbar2(u, alpha):
    ub = np.conj(u)
    return -u / (ub * ub)


def _w_alpha(u, alpha):
    return K.w_alpha(u, alpha)


def _grad_w_alpha(u, alpha):
    return K.grad_w_alpha(u, alpha)


KERNELS = {
    "log": (_log, False),
    "cauchy": (_cauchy, True),
    "conj_cauchy": (_conj_cauchy, True),
    "z_over_zbar2": (_z_over_zbar2, True),
    "w_alpha": (_w_alpha, False),
    "grad_w_alpha": (_grad_w_alpha, False),
}


def _midpoints(n, length=1.0):
    return (np.arange(n) + 0.5) * (length / n)


@functools.lru_cache(maxsize=None)
def _gauss(n):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _ray_roots(z, e, t):
    """Coefficients of the quadratic in rho for the ray ``z + rho e^{it}``."""
    c, s = np.cos(t), np.sin(t)
    A = (c / e.a) ** 2 + (s / e.b) ** 2
    B = 2.0 * (z.real * c / e.a**2 + z.imag * s / e.b**2)
    C = (z.real / e.a) ** 2 + (z.imag / e.b) ** 2 - 1.0
    return A, B, C


def _interior_rule(f, z, e, alpha, nr, nt):
    # periodic in t: midpoint rule is spectrally accurate there
    t = _midpoints(nt, 2.0 * np.pi)
    A, B, C = _ray_roots(z, e, t)
    C = min(C, 0.0)
    L = (-B + np.sqrt(B * B - 4.0 * A * C)) / (2.0 * A)
    x, w = _gauss(nr)
    rho = x[:, None] * L[None, :]
    u = -rho * np.exp(1j * t)[None, :]
    vals = f(u, alpha) * rho * (w[:, None] * L[None, :])
    return vals.sum() * (2.0 * np.pi / nt) / (np.pi * e.a * e.b)


def _tangent_directions(z, e):
    """Directions from exterior z that graze the ellipse, ordered t_lo < t_hi."""
    p = complex(z.real / e.a, z.imag / e.b)
    # in the scaled frame the tangent points sit at arg(p) +- arccos(1/|p|)
    half = np.arccos(min(1.0, 1.0 / abs(p)))
    mid = np.angle(-z)
    ts = []
    for sgn in (-1.0, 1.0):
        q = np.exp(1j * (np.angle(p) + sgn * half))
        d = complex(e.a * q.real, e.b * q.imag) - z
        # unwrap around the direction of the centre
        ts.append(mid + np.angle(d / np.exp(1j * mid)))
    return min(ts), max(ts)


def _exterior_rule(f, z, e, alpha, nr, nt):
    t_lo, t_hi = _tangent_directions(z, e)
    # t = mid - half cos(theta): the chord length has square-root zeros at the
    # tangent directions, which this substitution makes smooth.
    th, wth = _gauss(nt)
    th = th * np.pi
    wth = wth * np.pi
    tm, hw = 0.5 * (t_lo + t_hi), 0.5 * (t_hi - t_lo)
    t = tm - hw * np.cos(th)
    dt = hw * np.sin(th) * wth
    A, B, C = _ray_roots(z, e, t)
    disc = np.sqrt(np.maximum(B * B - 4.0 * A * C, 0.0))
    r1 = (-B - disc) / (2.0 * A)
    r2 = (-B + disc) / (2.0 * A)
    # r1 via the product of roots to avoid cancellation when z is near the boundary
    r1 = np.where(disc > 0, C / (A * np.where(r2 > 0, r2, 1.0)), r1)
    x, w = _gauss(nr)
    span = r2 - r1
    rho = r1[None, :] + x[:, None] * span[None, :]
    u = -rho * np.exp(1j * t)[None, :]
    vals = f(u, alpha) * rho * (w[:, None] * span[None, :]) * dt[None, :]
    return vals.sum() / (np.pi * e.a * e.b)


def _single(kernel_id, z, e, alpha, cfg):
    f, scaled = KERNELS[kernel_id]
    z = complex(z)
    if e.level(z) <= 1.0:
        val = _interior_rule(f, z, e, alpha, cfg.radial_nodes, cfg.angular_nodes)
    else:
        val = _exterior_rule(f, z, e, alpha, cfg.radial_nodes, cfg.angular_nodes)
    if scaled:
        val = val * e.a * e.b
    return val


def conv_oracle(kernel_id, z, e: EllipseDomain, alpha=0.0, cfg: QuadratureConfig | None = None, tol=None):
    """Numerically convolve a kernel with the ellipse at ``z``.

    ``kernel_id`` is one of ``log, cauchy, conj_cauchy, z_over_zbar2, w_alpha,
    grad_w_alpha``.  The result is directly comparable with, respectively,
    ``log_potential``, ``cauchy_transform``, ``conv_conj``,
    ``conv_z_over_zbar2``, ``potential`` and ``grad_potential``.  Real kernels
    return floats, the rest complex.  ``z`` may be an array; the rule is
    applied point by point.

    With ``tol`` set, the rule is also run with doubled node counts; if the
    two disagree by more than ``tol * max(1, |value|)`` a
    :class:`ToleranceNotReached` is raised.  The refined value is returned.
    """
    if kernel_id not in KERNELS:
        raise ValueError(f"unknown kernel {kernel_id!r}; choose from {sorted(KERNELS)}")
    cfg = cfg or QuadratureConfig()
    alpha = float(alpha)
    zs = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(zs)):
        raise DomainError("z contains non-finite values")
    real = kernel_id in ("log", "w_alpha")

    flat = zs.ravel()
    out = np.empty(flat.shape, dtype=np.float64 if real else np.complex128)
    for k, zk in enumerate(flat):
        val = _single(kernel_id, zk, e, alpha, cfg)
        if tol is not None:
            fine = _single(kernel_id, zk, e, alpha, cfg.refined())
            disc = abs(fine - val) / max(1.0, abs(fine))
            if disc > tol:
                raise ToleranceNotReached(
                    f"{kernel_id} at z={zk}: refinements differ by {disc:.3e} > {tol:.1e}",
                    estimate=fine,
                    discrepancy=disc,
                )
            val = fine
        out[k] = val.real if real else val
    out = out.reshape(zs.shape)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class EnergyEstimate:
    value: float
    stderr: float
    samples: int


def sample_pairs(e: EllipseDomain, n: int, rng: np.random.Generator):
    """``n`` independent pairs of uniform points on the ellipse, never equal."""
    x = e.sample_uniform(n, rng)
    y = e.sample_uniform(n, rng)
    same = x == y
    while np.any(same):
        y[same] = e.sample_uniform(int(same.sum()), rng)
        same = x == y
    return x, y


def energy_oracle(e: EllipseDomain, alpha, cfg: QuadratureConfig | None = None) -> EnergyEstimate:
    """Monte Carlo estimate of ``I_alpha(mu_{a,b})`` with its standard error.

    Uses ``1/2 W(X - Y) + 1/4 (|X|^2 + |Y|^2)`` per pair, which has the
    right mean and a little less variance than using ``|X|^2`` alone.
    """
    cfg = cfg or QuadratureConfig()
    rng = np.random.default_rng(cfg.rng_seed)
    x, y = sample_pairs(e, cfg.mc_samples, rng)
    s = 0.5 * K.w_alpha(x - y, alpha) + 0.25 * (np.abs(x) ** 2 + np.abs(y) ** 2)
    n = s.size
    mean = float(np.mean(s))
    se = float(np.std(s, ddof=1) / np.sqrt(n)) if n > 1 else float("inf")
    return EnergyEstimate(mean, se, n)
