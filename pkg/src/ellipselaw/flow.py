"""Interacting-particle approximation of the gradient flow of the energy.

N particles of mass 1/N move by forward Euler along

    dx_i/dt = -(1/N) sum_{j != i} grad W(x_i - x_j) - x_i,

the particle version of ``d mu/dt = div(mu grad(W * mu + |x|^2/2))``.
Pairwise sums are exact O(N^2) compiled loops in a fixed order, so a
fixed seed gives bit-identical trajectories.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field, replace
from typing import Union

import numpy as np

from .closed_form import minimizer_ellipse
from .errors import CollisionError, DomainError
from .geometry import EllipseDomain
from .kernel import GeneralAnisotropy, Regime
from ._pairs import min_separation2, pair_forces
from .reduce import reduce

log = logging.getLogger(__name__)

__all__ = [
    "ParticleEnsemble",
    "SimConfig",
    "SimResult",
    "velocity_field",
    "step",
    "run",
    "discrete_energy",
    "empirical_moments",
    "containment_fraction",
    "covariance_axes",
    "initial_ensemble",
    "MIN_SEPARATION",
]

MIN_SEPARATION = 1e-9
MAX_HALVINGS = 20

Params = Union[float, GeneralAnisotropy, tuple]


@dataclass(frozen=True)
class ParticleEnsemble:
    """Equal-weight particles; treated as a value (steps return new ones)."""

    positions: np.ndarray
    rng_seed: int = 0
    step_count: int = 0
    time: float = 0.0

    def __post_init__(self):
        x = np.array(self.positions, dtype=np.complex128)
        if x.ndim != 1 or x.size < 2:
            raise ValueError("an ensemble needs a 1-d array of at least 2 positions")
        if not np.all(np.isfinite(x)):
            raise ValueError("positions must be finite")
        x.setflags(write=False)
        object.__setattr__(self, "positions", x)

    @property
    def n(self) -> int:
        return self.positions.size


def _coefficients(params):
    """``(alpha, beta, gamma)`` of the kernel; a bare float is ``(alpha, 0, 0)``."""
    if isinstance(params, (tuple, list, GeneralAnisotropy)):
        return tuple(float(v) for v in GeneralAnisotropy(*params))
    return (float(params), 0.0, 0.0)


def _pair_geometry(x):
    d1 = x.real[:, None] - x.real[None, :]
    d2 = x.imag[:, None] - x.imag[None, :]
    r2 = d1 * d1 + d2 * d2
    np.fill_diagonal(r2, np.inf)
    rmin2 = r2.min()
    if rmin2 < MIN_SEPARATION**2:
        i, j = np.unravel_index(np.argmin(r2), r2.shape)
        raise CollisionError(f"particles {i} and {j} are {np.sqrt(rmin2):.3e} apart")
    return d1, d2, r2


def velocity_field(ens: ParticleEnsemble, params) -> np.ndarray:
    """Velocities ``-(1/N) sum_j grad W(x_i - x_j) - x_i`` as a complex array."""
    x = ens.positions
    al, be, ga = _coefficients(params)
    x1 = np.ascontiguousarray(x.real)
    x2 = np.ascontiguousarray(x.imag)
    g1, g2, rmin2 = pair_forces(x1, x2, al, be, ga)
    if rmin2 < MIN_SEPARATION**2:
        _pair_geometry(x)  # raises with the offending pair
    n = x.size
    return (-g1 / n - x1) + 1j * (-g2 / n - x2)


def _min_separation2(x):
    return min_separation2(np.ascontiguousarray(x.real), np.ascontiguousarray(x.imag))


def step(ens: ParticleEnsemble, params, dt: float) -> ParticleEnsemble:
    """One forward-Euler step.

    A step that would bring two particles within :data:`MIN_SEPARATION` is
    retried with ``dt`` halved, at most 20 times.
    """
    if dt < 0:
        raise ValueError("dt must be nonnegative")
    v = velocity_field(ens, params)
    x = ens.positions
    h = float(dt)
    for _ in range(MAX_HALVINGS + 1):
        trial = x + h * v
        if h == 0.0 or _min_separation2(trial) >= MIN_SEPARATION**2:
            return replace(ens, positions=trial, step_count=ens.step_count + 1, time=ens.time + h)
        log.debug("collision at step %d, halving dt to %g", ens.step_count, h / 2)
        h *= 0.5
    raise CollisionError(f"step {ens.step_count}: collision persists after {MAX_HALVINGS} halvings of dt")


def discrete_energy(ens: ParticleEnsemble, params, block: int = 1024) -> float:
    """``(1/(2N^2)) sum_{i != j} W(x_i - x_j) + (1/(2N)) sum_i |x_i|^2``.

    Plain numpy in row blocks, kept separate from the compiled force loop so it
    can serve as a finite-difference check on it.
    """
    x = ens.positions
    al, be, ga = _coefficients(params)
    n = x.size
    total = 0.0
    for start in range(0, n, block):
        rows = x[start:start + block]
        d1 = rows.real[:, None] - x.real[None, :]
        d2 = rows.imag[:, None] - x.imag[None, :]
        r2 = d1 * d1 + d2 * d2
        idx = np.arange(rows.size)
        r2[idx, start + idx] = np.inf  # drop the diagonal
        k = np.argmin(r2)
        if r2.flat[k] < MIN_SEPARATION**2:
            i, j = np.unravel_index(k, r2.shape)
            raise CollisionError(f"particles {start + i} and {j} are {np.sqrt(r2.flat[k]):.3e} apart")
        with np.errstate(invalid="ignore"):
            w = -0.5 * np.log(r2) + (al * d1 * d1 + be * d2 * d2 + ga * d1 * d2) / r2
        w[idx, start + idx] = 0.0
        total += float(w.sum())
    return float(total / (2.0 * n * n) + np.sum(np.abs(x) ** 2) / (2.0 * n))


def empirical_moments(ens_or_positions):
    """``(mean x1^2, mean x2^2, mean x1 x2)``."""
    x = getattr(ens_or_positions, "positions", ens_or_positions)
    x = np.asarray(x, dtype=np.complex128)
    return (
        float(np.mean(x.real**2)),
        float(np.mean(x.imag**2)),
        float(np.mean(x.real * x.imag)),
    )


def containment_fraction(ens_or_positions, e: EllipseDomain, inflate: float = 1.0) -> float:
    """Fraction of particles inside ``Omega(inflate a, inflate b)``."""
    if inflate < 1.0:
        raise ValueError("inflate must be >= 1")
    x = np.asarray(getattr(ens_or_positions, "positions", ens_or_positions), dtype=np.complex128)
    if np.isinf(inflate):
        return 1.0
    lev = (x.real / (inflate * e.a)) ** 2 + (x.imag / (inflate * e.b)) ** 2
    return float(np.mean(lev <= 1.0))


def covariance_axes(ens_or_positions):
    """Principal axis angle (radians in [0, pi)) and minor/major eigenvalue ratio.

    Uses second moments about the origin, the centre of every minimiser.
    """
    m11, m22, m12 = empirical_moments(ens_or_positions)
    evals, evecs = np.linalg.eigh(np.array([[m11, m12], [m12, m22]]))
    major = evecs[:, 1]
    angle = float(np.arctan2(major[1], major[0]) % np.pi)
    return angle, float(evals[0] / evals[1]), (float(evals[0]), float(evals[1]))


@dataclass
class SimConfig:
    n_particles: int = 500
    dt: float = 1e-3
    t_end: float = 20.0
    alpha: Params = 0.0
    init: str = "uniform_disk"
    init_scale: float = 2.0
    seed: int = 0
    record_every: int = 1000

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError("n_particles must be at least 2")
        if not self.dt > 0 or not self.t_end > 0:
            raise ValueError("dt and t_end must be positive")
        if self.init not in ("uniform_disk", "gaussian"):
            raise ValueError(f"unknown init {self.init!r}")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")

    def params_dict(self):
        al, be, ga = _coefficients(self.alpha)
        return {
            "n_particles": self.n_particles,
            "dt": self.dt,
            "t_end": self.t_end,
            "alpha": al,
            "beta": be,
            "gamma": ga,
            "init": self.init,
            "init_scale": self.init_scale,
            "seed": self.seed,
            "record_every": self.record_every,
        }


@dataclass
class SimResult:
    config: SimConfig
    final: ParticleEnsemble
    snapshots: list = field(default_factory=list)  # (step, time, positions)
    energy_trace: list = field(default_factory=list)  # (step, time, energy)
    diagnostics: dict = field(default_factory=dict)


def initial_ensemble(cfg: SimConfig) -> ParticleEnsemble:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n_particles
    if cfg.init == "uniform_disk":
        r = cfg.init_scale * np.sqrt(rng.random(n))
        t = 2.0 * np.pi * rng.random(n)
        x = r * np.exp(1j * t)
    else:
        x = cfg.init_scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return ParticleEnsemble(x, rng_seed=cfg.seed)


def predicted_shape(params):
    """Regime, predicted moments and containment ellipse for a kernel.

    The containment ellipse and moments are in the original coordinates; for a
    general anisotropy they come from the rotation reduction.
    """
    al, be, ga = _coefficients(params)
    if be == 0.0 and ga == 0.0:
        if -1.0 < al < 1.0:
            e = minimizer_ellipse(al)
            return {
                "regime": (Regime.ELLIPSE if al >= 0 else Regime.SWAPPED_ELLIPSE).value,
                "moments": [e.a**2 / 4, e.b**2 / 4, 0.0],
                "ellipse": [e.a, e.b],
            }
        vertical = al >= 1.0
        return {
            "regime": (Regime.SEMICIRCLE if vertical else Regime.SWAPPED_SEMICIRCLE).value,
            "moments": [0.0, 0.5, 0.0] if vertical else [0.5, 0.0, 0.0],
        }
    red = reduce((al, be, ga))
    s = red.effective_strength
    # along the support axis the variance is (1+s)/4, across it (1-s)/4
    major = (1.0 + s) / 4.0 if s < 1 else 0.5
    minor = (1.0 - s) / 4.0 if s < 1 else 0.0
    u = red.support_axis
    return {
        "regime": red.predicted_regime.value,
        "support_axis": [u.real, u.imag],
        "support_angle": red.support_angle,
        "eigenvalues": [minor, major],
        "eigenvalue_ratio": minor / major,
    }


def _final_diagnostics(ens, params):
    m11, m22, m12 = empirical_moments(ens)
    angle, ratio, evals = covariance_axes(ens)
    out = {
        "moments": {"m11": m11, "m22": m22, "m12": m12},
        "principal_angle": angle,
        "eigenvalue_ratio": ratio,
        "eigenvalues": list(evals),
        "energy": discrete_energy(ens, params),
        "predicted": predicted_shape(params),
    }
    al, be, ga = _coefficients(params)
    if be == 0.0 and ga == 0.0 and -1.0 < al < 1.0:
        e = minimizer_ellipse(al)
        out["containment_1.05"] = containment_fraction(ens, e, 1.05)
    elif be == 0.0 and ga == 0.0:
        # one-dimensional limit support: report collapse instead of containment
        out["axis_collapse"] = {"m11": m11, "m22": m22}
    else:
        red = reduce((al, be, ga))
        if red.effective_strength < 1.0:
            y = red.to_canonical(ens.positions)
            out["containment_1.05"] = containment_fraction(y, red.canonical_ellipse(), 1.05)
    return out


def run(cfg: SimConfig, keep_snapshots: bool = True) -> SimResult:
    """Integrate from the seeded initial condition up to ``cfg.t_end``."""
    params = cfg.alpha
    ens = initial_ensemble(cfg)
    res = SimResult(cfg, ens)
    n_steps = int(round(cfg.t_end / cfg.dt))

    def record(e):
        if keep_snapshots:
            res.snapshots.append((e.step_count, e.time, e.positions))
        res.energy_trace.append((e.step_count, e.time, discrete_energy(e, params)))

    record(ens)
    k = 0
    while k < n_steps:
        ens = step(ens, params, cfg.dt)
        k += 1
        if ens.step_count % cfg.record_every == 0 or k == n_steps:
            record(ens)
    res.final = ens
    res.diagnostics = _final_diagnostics(ens, params)
    return res


def write_snapshots_csv(res: SimResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["step", "particle_index", "x1", "x2"])
        for step_no, _t, x in res.snapshots:
            for i, p in enumerate(x):
                w.writerow([step_no, i, f"{p.real:.17g}", f"{p.imag:.17g}"])


def summary_dict(res: SimResult) -> dict:
    return {
        "config": res.config.params_dict(),
        "steps": res.final.step_count,
        "time": res.final.time,
        "final": res.diagnostics,
        "energy_trace": [{"step": s, "time": t, "energy": e} for s, t, e in res.energy_trace],
    }


def write_summary_json(res: SimResult, path, manifest=None) -> None:
    doc = summary_dict(res)
    if manifest is not None:
        doc["manifest"] = manifest
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
