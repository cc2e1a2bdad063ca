"""Closed forms against frozen values from an independent oracle (see reference_values)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipselaw import closed_form as cf
from ellipselaw.complex_core import branch_sqrt
from ellipselaw.errors import DomainError
from ellipselaw.geometry import EllipseDomain, Region
from ellipselaw.kernel import Regime

from reference_values import (
    CAUCHY_08_12_AT_2,
    CONV_CONJ_08_12_AT_2I,
    Z_OVER_ZBAR2_08_12_AT_15_05,
    GRAD_08_12_A05_AT_2_1,
    LOGPOT_08_12_AT_01_01,
    POT_08_12_A03_AT_2_M1,
    C_ALPHA_05,
    MIN_ENERGY_05,
    ELLIPSE_ENERGY_08_12,
)

E = EllipseDomain(0.8, 1.2)
DISK = EllipseDomain(1.0, 1.0)

ORACLE_TOL = 1e-12

pts = st.tuples(st.floats(-4, 4), st.floats(-4, 4)).map(lambda t: complex(*t))
alphas = st.floats(0, 0.95)


def test_geometry_basics():
    assert E.lam == pytest.approx(-0.2)
    assert E.c2 == pytest.approx(0.8)
    assert E.classify(0j) is Region.INSIDE
    assert E.classify(0.8 + 0j) is Region.BOUNDARY
    assert E.classify(2.4j) is Region.OUTSIDE
    assert list(E.classify(np.array([0, 0.8, 2.4j]))) == [Region.INSIDE, Region.BOUNDARY, Region.OUTSIDE]
    with pytest.raises(ValueError):
        EllipseDomain(0.0, 1.0)


def test_sample_uniform_moments():
    x = E.sample_uniform(100_000, np.random.default_rng(5))
    assert np.all(E.inside_mask(x))
    m11, m22 = np.mean(x.real**2), np.mean(x.imag**2)
    # standard error of mean x1^2 is below 2e-4 here
    assert abs(m11 - 0.16) < 1e-3 and abs(m22 - 0.36) < 2e-3 and abs(np.mean(x.real * x.imag)) < 1e-3


def test_cauchy_transform():
    assert cf.cauchy_transform(0j, E) == 0
    assert cf.cauchy_transform(2.0 + 0j, DISK) == pytest.approx(0.5, abs=1e-15)
    assert abs(cf.cauchy_transform(2.0, E) - CAUCHY_08_12_AT_2) <= ORACLE_TOL


def test_conv_conj():
    assert cf.conv_conj(0j, E) == 0
    assert abs(cf.conv_conj(2j, E) - CONV_CONJ_08_12_AT_2I) <= ORACLE_TOL


@given(pts)
@settings(max_examples=200, deadline=None)
def test_conv_conj_conjugation_symmetry(z):
    c = cf.conv_conj(z, E)
    assert abs(c - np.conj(cf.cauchy_transform(z, E))) <= 1e-13
    assert abs(c - cf.cauchy_transform(np.conj(z), E)) <= 1e-13


def test_conv_z_over_zbar2():
    assert cf.conv_z_over_zbar2(0j, E) == 0
    inside = np.array([0.1 + 0.2j, -0.5 + 0.3j])
    assert np.all(np.abs(cf.conv_z_over_zbar2(inside, DISK)) <= 1e-15)
    assert abs(cf.conv_z_over_zbar2(1.5 + 0.5j, E) - Z_OVER_ZBAR2_08_12_AT_15_05) <= ORACLE_TOL


def test_grad_potential_values():
    z = np.array([0.2 + 0.3j, -0.4 - 0.1j])
    assert np.allclose(cf.grad_potential(z, DISK, 0.0), -z, atol=1e-15, rtol=0)
    g = cf.grad_potential(2 + 1j, E, 0.5)
    assert abs(g - GRAD_08_12_A05_AT_2_1) <= ORACLE_TOL
    h = 1e-6
    f = lambda p: cf.potential(p, E, 0.5)
    fd = complex((f(2 + h + 1j) - f(2 - h + 1j)) / (2 * h), (f(2 + 1j + 1j * h) - f(2 + 1j - 1j * h)) / (2 * h))
    assert abs(g - fd) <= 1e-8


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.9])
def test_minimizer_interior_field(alpha):
    e = cf.minimizer_ellipse(alpha)
    z = e.sample_uniform(200, np.random.default_rng(1))
    assert np.abs(cf.grad_potential(z, e, alpha) + z).max() <= 1e-12
    assert np.abs(cf.potential(z, e, alpha) + np.abs(z) ** 2 / 2 - cf.c_alpha(alpha)).max() <= 1e-12


@given(pts, st.floats(0.3, 2), st.floats(0.3, 2), st.floats(-1.5, 1.5))
@settings(max_examples=150, deadline=None)
def test_assembled_gradient_matches(z, a, b, alpha):
    e = EllipseDomain(min(a, b), max(a, b))
    if abs(e.level(z) - 1) < 1e-9:
        return
    g1 = cf.grad_potential(z, e, alpha)
    g2 = cf.grad_potential_assembled(z, e, alpha)
    assert abs(g1 - g2) <= 1e-11 * max(1, abs(g1))


@given(pts, st.floats(0.3, 2), st.floats(0.3, 2), st.floats(-1.5, 1.5))
@settings(max_examples=150, deadline=None)
def test_gradient_is_derivative_of_potential(z, a, b, alpha):
    e = EllipseDomain(min(a, b), max(a, b))
    h = 1e-6
    if abs(e.level(z) - 1) < 1e-4:
        return
    f = lambda p: cf.potential(p, e, alpha)
    fd = complex((f(z + h) - f(z - h)) / (2 * h), (f(z + 1j * h) - f(z - 1j * h)) / (2 * h))
    assert abs(cf.grad_potential(z, e, alpha) - fd) <= 1e-7


def test_log_potential():
    assert cf.log_potential(0j, DISK) == pytest.approx(0.5, abs=1e-15)
    assert cf.log_potential(2.0, DISK) == pytest.approx(-np.log(2), abs=1e-15)
    assert cf.log_potential(np.sqrt(2) * (1 + 1j), DISK) == pytest.approx(-np.log(2), abs=1e-15)
    assert abs(cf.log_potential(0.1 + 0.1j, E) - LOGPOT_08_12_AT_01_01) <= ORACLE_TOL


def test_potential_values():
    assert cf.potential(0j, DISK, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert abs(cf.potential(2 - 1j, E, 0.3) - POT_08_12_A03_AT_2_M1) <= ORACLE_TOL


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_exterior_field_identity(alpha):
    # grad(W*mu) + z written through |z^2 + 2 alpha| outside the minimiser
    e = cf.minimizer_ellipse(alpha)
    z = np.array([2 + 1j, -0.3 + 3j, 1.6 - 0.2j, -4 - 4j])
    assert np.all(e.outside_mask(z))
    m = np.abs(z * z + 2 * alpha)
    expected = (m + np.abs(z * z) - 2) / (2 * m) * branch_sqrt(z, 2 * alpha)
    assert np.abs(cf.grad_potential(z, e, alpha) + z - expected).max() <= 1e-13


@given(pts, st.floats(0.3, 2), st.floats(0.3, 2), st.floats(-1.5, 1.5))
@settings(max_examples=150, deadline=None)
def test_swap_symmetry(z, a, b, alpha):
    if a == b:
        return
    e = EllipseDomain(max(a, b), min(a, b))  # wide: needs the swap
    with pytest.raises(DomainError):
        cf.potential(z, e, alpha)
    s = 1j * np.conj(z)
    v = cf.potential(z, e, alpha, allow_swap=True)
    assert abs(v - (alpha + cf.potential(s, e.swapped(), -alpha))) <= 1e-12 * max(1, abs(v))


def test_constants():
    assert cf.c_alpha(0.0) == 0.5
    assert cf.min_energy(0.0) == 0.375
    assert cf.c_alpha(0.5) == pytest.approx(C_ALPHA_05, abs=1e-15)
    assert cf.min_energy(0.5) == pytest.approx(MIN_ENERGY_05, abs=1e-15)
    e = cf.minimizer_ellipse(0.5)
    # cross-check: C_alpha is potential + |z|^2/2 anywhere inside, e.g. at 0
    assert cf.potential(0j, e, 0.5) == pytest.approx(cf.c_alpha(0.5), abs=1e-14)
    assert cf.c_alpha(1 - 1e-15) == pytest.approx(0.5 + 0.5 * np.log(2), abs=1e-7)
    for bad in (1.0, -0.1, 2.0):
        with pytest.raises(DomainError):
            cf.c_alpha(bad)


@pytest.mark.parametrize("alpha", [0.0, 0.1, 0.5, 0.75, 0.99])
def test_energy_at_minimizer(alpha):
    assert cf.ellipse_energy(cf.minimizer_ellipse(alpha), alpha) == pytest.approx(cf.min_energy(alpha), abs=1e-12)


def test_ellipse_energy_values():
    assert cf.ellipse_energy(DISK, 0.0) == pytest.approx(0.375, abs=1e-15)
    assert abs(cf.ellipse_energy(E, 0.5) - ELLIPSE_ENERGY_08_12) <= 1e-12
    assert cf.ellipse_energy(DISK, 0.5) > cf.min_energy(0.5)


@given(st.floats(0.3, 2), st.floats(0.3, 2), st.floats(0, 0.95))
@settings(max_examples=200, deadline=None)
def test_minimizer_is_minimal_among_ellipses(a, b, alpha):
    e = EllipseDomain(min(a, b), max(a, b))
    assert cf.ellipse_energy(e, alpha) >= cf.min_energy(alpha) - 1e-12


def test_minimizer_descriptor():
    m = cf.minimizer(0.0)
    assert m.regime is Regime.ELLIPSE and m.ellipse.a == 1.0 and m.ellipse.b == 1.0
    m = cf.minimizer(1.0)
    assert m.regime is Regime.SEMICIRCLE and m.axis == 1j and m.radius == pytest.approx(np.sqrt(2))
    m = cf.minimizer(-0.5)
    assert m.regime is Regime.SWAPPED_ELLIPSE
    assert (m.ellipse.a, m.ellipse.b) == pytest.approx((np.sqrt(1.5), np.sqrt(0.5)))


def test_foci_level():
    for a, b in [(1, 1), (0.8, 1.2), (0.5, 1.5)]:
        e = EllipseDomain(a, b)
        assert cf.foci_level(a + 0j, e) == pytest.approx(0, abs=1e-15)
        assert cf.foci_level(1j * b, e) == pytest.approx(0, abs=1e-15)
        assert cf.foci_level(2 * a + 2j * b, e) > 0


def test_el2_integrand():
    alpha = 0.5
    # direct arithmetic at z = 2i: z^2 + 1 = -3, principal root i sqrt 3 already in the right quadrant
    w = 1j * np.sqrt(3.0)
    expected = (3 + 4 - 2) / (2 * 3) * (np.conj(2j) * w).real
    assert cf.el2_integrand(2j, alpha) == pytest.approx(expected, abs=1e-15)
    for R in (0.8, 1.5, 3.0):
        assert cf.el2_integrand(R + 0j, alpha) >= 0
    e = cf.minimizer_ellipse(alpha)
    bd = e.boundary_points(16)
    assert np.abs(cf.el2_integrand(bd, alpha)).max() <= 1e-10
    with pytest.raises(DomainError):
        cf.el2_integrand(0j, alpha)
