# standard library
from math import e, exp, gamma, log, pi, sqrt


# dependencies
import numpy as np
from magkern import (
    BesselOrder,
    BesselUnderflowWarning,
    DivergenceError,
    DomainError,
    bessel_j,
    bessel_k,
    bessel_ke,
    gamma_fn,
    gauss_2f1,
)
from pytest import approx, mark, raises, warns
from . import oracles


# constants
ORDERS = 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 1.75, 2.0, 2.75, 3.0
ARGUMENTS = 1e-6, 1e-3, 0.1, 1.0, 5.0, 29.9, 30.1, 100.0, 700.0


# test functions
def test_bessel_k_half_order():
    assert bessel_k(0.5, 1.0) == approx(sqrt(pi / 2) / e, rel=1e-14)
    assert bessel_k(0.5, 1.0) == approx(0.46106850, rel=1e-8)


@mark.parametrize("nu", ORDERS)
@mark.parametrize("z", ARGUMENTS)
def test_bessel_k_oracle(nu, z):
    assert bessel_k(nu, z) == approx(oracles.besselk(nu, z), rel=1e-12)


def test_bessel_k_integral_representation():
    for nu in np.linspace(0.0, 3.0, 20):
        for z in np.geomspace(0.05, 20.0, 20):
            assert bessel_k(nu, z) == approx(oracles.besselk_integral(nu, z), rel=1e-9)


def test_bessel_k_negative_order():
    assert bessel_k(-1.5, 2.0) == bessel_k(1.5, 2.0)
    assert BesselOrder.of(-0.5).is_half_integer


def test_bessel_k_small_argument():
    assert bessel_k(0, 1e-3) == approx(-log(1e-3), rel=0.05)

    for nu in (0.5, 1.0, 2.0, 2.75):
        z = 1e-4
        limit = gamma(nu) * 2 ** (nu - 1) / z**nu
        assert bessel_k(nu, z) / limit == approx(1.0, rel=1e-3)


def test_bessel_k_decreasing():
    z = np.geomspace(1e-6, 700.0, 500)

    for nu in (0.0, 1.0, 2.75):
        values = [bessel_k(nu, x) for x in z]
        assert all(v > 0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))


def test_bessel_k_recurrence():
    for nu in (1.0, 1.5, 1.75, 2.0):
        for z in np.geomspace(0.1, 50.0, 1000):
            upper = bessel_k(nu + 1, z)
            residual = upper - bessel_k(nu - 1, z) - 2 * nu / z * bessel_k(nu, z)
            assert abs(residual) <= 1e-10 * upper


def test_bessel_ke():
    expected = exp(500.0) * oracles.besselk(1, 500.0)
    assert bessel_ke(1, 500.0) == approx(expected, rel=1e-12)
    assert bessel_ke(0, 2000.0) == approx(sqrt(pi / 4000.0), rel=1e-4)


def test_bessel_k_underflow():
    with warns(BesselUnderflowWarning):
        assert bessel_k(0, 800.0) == 0.0


def test_bessel_k_domain():
    with raises(DomainError):
        bessel_k(1, 0.0)

    with raises(DomainError):
        bessel_k(1, -1.0)


def test_bessel_j():
    assert bessel_j(1.5, pi) == approx(sqrt(2 / pi**2), rel=1e-10)
    assert bessel_j(1.5, pi) == approx(0.45015816, rel=1e-7)
    assert bessel_j(1, 0.0) == 0.0

    for nu in (1.0, 1.5):
        for z in np.linspace(0.0, 200.0, 101):
            expected = oracles.besselj(nu, z)
            assert bessel_j(nu, z) == approx(expected, rel=1e-10, abs=1e-14)


def test_bessel_j_domain():
    with raises(DomainError):
        bessel_j(2, 1.0)

    with raises(DomainError):
        bessel_j(1, -1.0)


@mark.parametrize(
    "x, expected",
    [(0.5, sqrt(pi)), (2.5, 0.75 * sqrt(pi)), (0.25, 3.62560990)],
)
def test_gamma_fn(x, expected):
    assert gamma_fn(x) == approx(expected, rel=1e-8)
    assert gamma_fn(x) == approx(oracles.gamma(x), rel=1e-13)


def test_gamma_fn_domain():
    with raises(DomainError):
        gamma_fn(0.0)


def test_gauss_2f1():
    assert gauss_2f1(0.5, 1.5, 2.5, 0.0) == 1.0
    assert gauss_2f1(0.5, 1.5, 2.5, 1.0) == approx(3 * pi / 4, rel=1e-10)

    for x in (0.1, 0.5, 0.7, 0.9, 0.99):
        expected = oracles.hyp2f1(0.5, 1.5, 2.5, x)
        assert gauss_2f1(0.5, 1.5, 2.5, x) == approx(expected, rel=1e-10)


def test_gauss_2f1_domain():
    with raises(DomainError):
        gauss_2f1(0.5, 1.5, 2.5, 1.5)

    with raises(DivergenceError):
        gauss_2f1(1.0, 1.5, 2.5, 1.0)
