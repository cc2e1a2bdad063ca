import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipselaw.errors import DomainError
from ellipselaw.kernel import (
    AnisotropyStrength,
    GeneralAnisotropy,
    Regime,
    force_general,
    fourier_weight,
    grad_w_alpha,
    grad_w_alpha_complex,
    grad_w_general,
    w_alpha,
    w_general,
)

coord = st.floats(-5, 5, allow_nan=False).filter(lambda v: abs(v) > 1e-2)
alphas = st.floats(-2, 2, allow_nan=False)


def fd_grad(f, x, h=1e-6):
    return complex((f(x + h) - f(x - h)) / (2 * h), (f(x + 1j * h) - f(x - 1j * h)) / (2 * h))


def test_w_alpha_values():
    assert w_alpha(1.0, 0.7) == pytest.approx(0.7, abs=1e-15)
    assert w_alpha(1j, 0.3) == 0.0
    assert w_alpha(1 + 1j, 0.5) == pytest.approx(-0.5 * np.log(2) + 0.25, abs=1e-15)
    assert w_alpha(0.0, 0.5) == np.inf


def test_grad_w_alpha_values():
    for al in (-1.0, 0.0, 0.4, 2.0):
        assert grad_w_alpha(1.0, al) == pytest.approx(-1.0, abs=1e-15)
    z = 0.3 - 2.1j
    assert grad_w_alpha(z, 0.0) == pytest.approx(-z / abs(z) ** 2, abs=1e-15)
    fd = fd_grad(lambda x: w_alpha(x, 1.0), 1 + 1j)
    assert abs(grad_w_alpha(1 + 1j, 1.0) - fd) <= 1e-8
    with pytest.raises(DomainError):
        grad_w_alpha(0.0, 0.5)


@given(coord, coord, alphas)
@settings(max_examples=200, deadline=None)
def test_gradient_forms_and_fd(x, y, al):
    z = complex(x, y)
    g = grad_w_alpha(z, al)
    assert abs(g - grad_w_alpha_complex(z, al)) <= 1e-12 * max(1, abs(g))
    fd = fd_grad(lambda p: w_alpha(p, al), z, h=1e-6 * max(1, abs(z)))
    assert abs(g - fd) <= 1e-5 * max(1, abs(g))


def test_regimes():
    assert AnisotropyStrength(0.0).regime is Regime.ELLIPSE
    assert AnisotropyStrength(0.99).regime is Regime.ELLIPSE
    assert AnisotropyStrength(1.0).regime is Regime.SEMICIRCLE
    assert AnisotropyStrength(-0.5).regime is Regime.SWAPPED_ELLIPSE
    assert AnisotropyStrength(-1.0).regime is Regime.SWAPPED_SEMICIRCLE
    with pytest.raises(ValueError):
        AnisotropyStrength(float("nan"))


def test_w_general_values():
    z = np.array([0.4 + 1.1j, -2 + 0.3j])
    assert np.allclose(w_general(z, (0.6, 0, 0)), w_alpha(z, 0.6), rtol=0, atol=1e-15)
    assert w_general(1.0, (0.2, 0.7, 0.4)) == pytest.approx(0.2, abs=1e-15)
    assert w_general(1 + 1j, (0, 0, 1)) == pytest.approx(-0.5 * np.log(2) + 0.5, abs=1e-15)


def test_force_general_values():
    g = GeneralAnisotropy(0.0, 0.0, 1.0)
    aniso = lambda p: w_general(p, g) + 0.5 * np.log(abs(p) ** 2)
    fd = -fd_grad(aniso, 1.0 + 0j)
    assert abs(force_general(1.0, g) - (-1j)) <= 1e-15
    assert abs(force_general(1.0, g) - fd) <= 1e-8
    # isotropic case: no anisotropic force anywhere
    assert np.all(force_general(np.array([1 + 2j, -0.5 + 0.1j]), (0.3, 0.3, 0.0)) == 0)


@given(coord, coord, st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
@settings(max_examples=150, deadline=None)
def test_grad_w_general_fd(x, y, al, be, ga):
    z = complex(x, y)
    g = (al, be, ga)
    fd = fd_grad(lambda p: w_general(p, g), z, h=1e-6 * max(1, abs(z)))
    got = grad_w_general(z, g)
    assert abs(got - fd) <= 1e-5 * max(1, abs(got))
    # the anisotropic force is tangential
    assert abs((np.conj(z) * force_general(z, g)).real) <= 1e-12 * max(1, abs(z) * abs(got))


@pytest.mark.parametrize("g", [(0.2, 0.7, 0.4), (0.0, 0.0, 1.0), (1.0, -0.5, -0.3)])
def test_force_vanishes_on_zero_lines(g):
    al, be, ga = g
    d, s = be - al, np.hypot(be - al, ga)
    for slope in ((d - s) / ga, (d + s) / ga):
        for t in (0.3, 1.0, -2.5):
            assert abs(force_general(t * (1 + 1j * slope), g)) <= 1e-12


def test_fourier_weight_values():
    assert fourier_weight(1.0, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert fourier_weight(2j, 1.0) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        fourier_weight(0.0, 0.5)


@given(coord, coord, st.floats(-1, 1))
@settings(max_examples=200, deadline=None)
def test_fourier_weight_nonnegative(x, y, al):
    assert fourier_weight(complex(x, y), al) >= 0


def test_fourier_weight_negative_beyond_critical():
    assert fourier_weight(1.0 + 0.01j, 1.1) < 0
    assert fourier_weight(0.01 + 1j, -1.1) < 0
