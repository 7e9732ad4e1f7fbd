# standard library
from math import cos, exp, pi, sin, sqrt


# dependencies
from magkern import (
    Displacement,
    DomainError,
    FieldConfig,
    OmegaVector,
    SingularPointError,
    SpinChannel,
    UnsupportedMassError,
    ae_bound_integral,
    ea2_tau_derivative,
    ea2_translation_part,
    ea_bound_integral,
    ea_kernel,
    ea_kernel_bound,
    exp_tea_bound,
    exp_tea_bound_integral,
    exp_tea_derivative_bound,
    exp_tea_derivative_integral,
    exp_tea_kernel,
    free_relativistic_kernel,
    sk_closed_form,
    sk_quadrature,
    u0_offdiag_bound,
    u0_offdiag_integral,
    u0_tau_bound,
    u0_tau_integral,
)
from pytest import approx, mark, raises
from . import oracles


# constants
DIAGONAL = (1.0, 1.0, 1.0)
FIELDS = 0.0, 0.5, 1.0, 5.0


# test functions
def test_displacement():
    d = Displacement.between((1.0, 2.0, 3.0), (1.0, 5.0, 7.0))

    assert d.z == (0.0, 3.0, 4.0)
    assert d.r == 5.0
    assert d.rho2 == 9.0
    assert d.z3sq == 16.0
    assert Displacement.along(2.0, (0.0, 3.0, 4.0)).z == approx((0.0, 1.2, 1.6))

    with raises(DomainError):
        Displacement.along(1.0, (0.0, 0.0, 0.0))

    with raises(DomainError):
        Displacement((1.0, 2.0))


def test_omega_vector():
    ov = OmegaVector.from_position(FieldConfig.from_eb0(2.0), (1.0, 3.0, 0.0))

    assert (ov.omega1, ov.omega2) == (3.0, -1.0)
    assert ov.omega_norm == approx(sqrt(10.0))
    assert ov.component(2) == -1.0

    with raises(DomainError):
        ov.component(3)


def test_tau_derivative_field_free():
    cfg = FieldConfig.from_eb0(0.0, m=0.0)
    value = ea2_tau_derivative(cfg, SpinChannel.UP, 1.0, Displacement.along(2.0))

    assert value == approx(-0.5 * exp(-1) * (4 * pi) ** -1.5, rel=1e-13)
    assert value == approx(-4.12914e-3, rel=1e-5)


def test_tau_derivative_finite_difference():
    cfg = FieldConfig.from_eb0(0.8, m=0.6)
    d = Displacement.along(1.3, DIAGONAL)
    tau, h = 0.7, 1e-5

    for spin in SpinChannel:
        plus = ea2_translation_part(cfg, spin, tau + h, d.z)
        minus = ea2_translation_part(cfg, spin, tau - h, d.z)
        expected = (plus - minus) / (2 * h)
        assert ea2_tau_derivative(cfg, spin, tau, d) == approx(expected, rel=1e-7)


@mark.parametrize("spin", [SpinChannel.UP, SpinChannel.DOWN])
def test_ea_kernel_singularity(spin):
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    r = 0.05
    value = ea_kernel(cfg, spin, Displacement.along(r, DIAGONAL)).value

    assert r**4 * value == approx(-1 / pi**2, rel=0.03)


@mark.parametrize("r", [0.5, 1.0, 2.0])
def test_ea_kernel_field_free(r):
    cfg = FieldConfig.from_eb0(0.0, m=1.0)
    value = ea_kernel(cfg, SpinChannel.UP, Displacement.along(r)).value

    assert value == approx(free_relativistic_kernel(1.0, r), rel=1e-6)


@mark.parametrize("r", [0.5, 1.0, 2.0])
def test_free_relativistic_kernel(r):
    expected = oracles.free_relativistic_radial(1.0, r)
    assert free_relativistic_kernel(1.0, r) == approx(expected, rel=1e-6)
    assert free_relativistic_kernel(1.0, r, scaled=True) == approx(
        exp(r) * free_relativistic_kernel(1.0, r), rel=1e-12
    )


@mark.parametrize("eb0", FIELDS)
def test_ea_kernel_envelope(eb0):
    cfg = FieldConfig.from_eb0(eb0, m=1.0)

    for r in (0.1, 0.5, 2.0, 6.0):
        bound = ea_kernel_bound(cfg, r)

        for spin in SpinChannel:
            value = ea_kernel(cfg, spin, Displacement.along(r, DIAGONAL), 1e-8).value
            assert abs(value) <= bound * (1 + 1e-6)


def test_ea_kernel_domain():
    d = Displacement.along(1.0)

    with raises(UnsupportedMassError):
        ea_kernel(FieldConfig.from_eb0(1.0, m=0.0), SpinChannel.UP, d)

    with raises(SingularPointError):
        ea_kernel(
            FieldConfig.from_eb0(1.0, m=1.0), SpinChannel.UP, Displacement.along(0.0)
        )

    with raises(UnsupportedMassError):
        ea_kernel_bound(FieldConfig.from_eb0(1.0, m=0.0), 1.0)


def test_ea_kernel_bound_small_distance():
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    r = 1e-4

    assert r**4 * ea_kernel_bound(cfg, r) == approx(14 / (2 * pi**2), rel=1e-3)
    assert 14 / (2 * pi**2) == approx(0.70924, rel=1e-4)


@mark.parametrize("eb0", [0.0, 1.0, 5.0])
@mark.parametrize("r", [0.1, 1.0, 5.0])
def test_ea_bound_integral(eb0, r):
    cfg = FieldConfig.from_eb0(eb0, m=0.5)

    assert ea_bound_integral(cfg, r).value == approx(ea_kernel_bound(cfg, r), rel=1e-8)


def test_exp_tea_bound():
    cfg = FieldConfig.from_eb0(0.0, m=1.0)

    expected = oracles.besselk(2, 1.0) / (2 * pi**2)
    assert exp_tea_bound(cfg, 1.0, 0.0) == approx(expected, rel=1e-12)


@mark.parametrize("t, r", [(0.5, 0.0), (1.0, 1.0), (2.0, 0.5)])
def test_exp_tea_kernel_field_free(t, r):
    massive = FieldConfig.from_eb0(0.0, m=1.0)
    massless = FieldConfig.from_eb0(0.0, m=0.0)
    d = Displacement.along(r)
    xi2 = t**2 + r**2

    value = exp_tea_kernel(massive, SpinChannel.UP, t, d).value
    assert value == approx(exp_tea_bound(massive, t, r), rel=1e-8)

    value = exp_tea_kernel(massless, SpinChannel.DOWN, t, d).value
    assert value == approx(t / (pi**2 * xi2**2), rel=1e-8)


@mark.parametrize("eb0", [0.5, 2.0])
def test_exp_tea_kernel_envelope(eb0):
    cfg = FieldConfig.from_eb0(eb0, m=1.0)

    for t, r in [(0.5, 0.5), (1.0, 2.0), (3.0, 0.1)]:
        bound = exp_tea_bound(cfg, t, r)

        for spin in SpinChannel:
            d = Displacement.along(r, DIAGONAL)
            value = exp_tea_kernel(cfg, spin, t, d, 1e-9).value
            assert value <= bound * (1 + 1e-6)


def test_exp_tea_bound_integral():
    for eb0 in (0.0, 1.0):
        cfg = FieldConfig.from_eb0(eb0, m=0.7)

        for t, r in [(0.5, 0.0), (1.0, 1.0), (2.0, 3.0)]:
            expected = exp_tea_bound(cfg, t, r)
            assert exp_tea_bound_integral(cfg, t, r).value == approx(expected, rel=1e-8)


def test_u0_offdiag_bound_small_distance():
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    r = 1e-4

    assert r**3 * u0_offdiag_bound(cfg, r) == approx(2 * sqrt(2) / pi**2, rel=1e-3)
    assert 2 * sqrt(2) / pi**2 == approx(0.28655, rel=1e-4)


@mark.parametrize("eb0", [0.0, 1.0])
@mark.parametrize("r", [0.5, 2.0])
def test_u0_offdiag_integral(eb0, r):
    cfg = FieldConfig.from_eb0(eb0, m=1.0)

    expected = u0_offdiag_bound(cfg, r)
    assert u0_offdiag_integral(cfg, r).value == approx(expected, rel=1e-8)


def test_scaled_envelopes():
    cfg = FieldConfig.from_eb0(1.0, m=2.0)

    for r in (0.5, 3.0):
        for bound in (ea_kernel_bound, u0_offdiag_bound):
            expected = exp(2 * r) * bound(cfg, r)
            assert bound(cfg, r, scaled=True) == approx(expected, rel=1e-12)


@mark.slow
def test_ae_bound_integral():
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    strict = ae_bound_integral(cfg, 1.0)
    relaxed = ae_bound_integral(cfg, 1.0, relaxed=True)

    assert strict.value > 0
    assert relaxed.value >= strict.value * (1 - 1e-5)


def test_sk_massless_limit():
    cfg = FieldConfig.from_eb0(0.0, m=0.0)
    ov = OmegaVector(0.6, 0.8)

    for k in (1, 2):
        expected = pi**2 * 1j * ov.component(k)
        assert sk_closed_form(cfg, k, ov) == approx(expected, rel=1e-10)


@mark.parametrize("omega, k", [((1.0, 0.0), 1), ((0.0, 2.0), 2), ((0.3, -0.4), 1)])
def test_sk_quadrature(omega, k):
    cfg = FieldConfig.from_eb0(0.0, m=1.0)
    ov = OmegaVector(*omega)
    closed = sk_closed_form(cfg, k, ov)
    value = sk_quadrature(cfg, k, ov, 1e-9).value

    assert value == approx(closed, rel=1e-5)
    assert abs(value.real) <= 1e-12 * abs(value)


def test_sk_domain():
    cfg = FieldConfig.from_eb0(0.0, m=1.0)

    with raises(DomainError):
        sk_closed_form(cfg, 1, OmegaVector(0.0, 0.0))

    with raises(DomainError):
        sk_quadrature(cfg, 3, OmegaVector(1.0, 0.0))


@mark.parametrize("eb0", [0.0, 1.0])
def test_ea_kernel_far_field(eb0):
    cfg = FieldConfig.from_eb0(eb0, m=2.0)
    result = ea_kernel(cfg, SpinChannel.UP, Displacement.along(20.0), 1e-10)

    if eb0 == 0.0:
        expected = free_relativistic_kernel(2.0, 20.0)
        assert result.value == approx(expected, rel=1e-8)
        assert result.error_estimate >= abs(result.value - expected)

    assert abs(result.value) <= ea_kernel_bound(cfg, 20.0) * (1 + 1e-6)
    expected = ea_kernel_bound(cfg, 20.0)
    assert ea_bound_integral(cfg, 20.0).value == approx(expected, rel=1e-8)


@mark.parametrize("spin", [SpinChannel.UP, SpinChannel.DOWN])
def test_ea_kernel_even(spin):
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    z = (0.3, -0.7, 0.5)

    forward = ea_kernel(cfg, spin, Displacement(z), 1e-9).value
    backward = ea_kernel(cfg, spin, Displacement(tuple(-c for c in z)), 1e-9).value

    assert forward == backward


@mark.parametrize("angle", [0.4, 2.0, pi])
def test_ea_kernel_axial_symmetry(angle):
    cfg = FieldConfig.from_eb0(1.5, m=1.0)
    x, y, z3 = 0.6, 0.2, -0.4
    rotated = (x * cos(angle) - y * sin(angle), x * sin(angle) + y * cos(angle), -z3)

    for spin in SpinChannel:
        value = ea_kernel(cfg, spin, Displacement((x, y, z3)), 1e-10).value
        turned = ea_kernel(cfg, spin, Displacement(rotated), 1e-10).value
        assert turned == approx(value, rel=1e-9)


@mark.parametrize("tau", [50.0, 80.0, 200.0])
def test_tau_derivative_large_tau(tau):
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    d = Displacement.along(1.0, DIAGONAL)

    for spin in SpinChannel:
        assert abs(ea2_tau_derivative(cfg, spin, tau, d)) <= exp(-tau * cfg.m**2 / 2)


@mark.parametrize("eb0", [0.0, 1.0])
@mark.parametrize("t, r", [(0.5, 0.0), (1.0, 1.0), (2.0, 3.0)])
def test_exp_tea_derivative_integral(eb0, t, r):
    cfg = FieldConfig.from_eb0(eb0, m=0.7)
    bound = exp_tea_derivative_bound(cfg, t, r)

    assert bound > 0
    assert exp_tea_derivative_integral(cfg, t, r).value == approx(bound, rel=1e-8)


def test_exp_tea_derivative_bound_field_free():
    # t = 1, r = 0: (1/pi**2) {3 (m**2/2) K_2(m) + (m**3/2) K_1(m)}
    cfg = FieldConfig.from_eb0(0.0, m=1.0)
    expected = (1.5 * oracles.besselk(2, 1.0) + 0.5 * oracles.besselk(1, 1.0)) / pi**2

    assert exp_tea_derivative_bound(cfg, 1.0, 0.0) == approx(expected, rel=1e-12)

    with raises(DomainError):
        exp_tea_derivative_bound(cfg, 1.0, -1.0)


@mark.parametrize("eb0", [0.0, 1.0])
@mark.parametrize("t, r", [(0.5, 0.5), (1.0, 2.0), (2.0, 1.0)])
def test_u0_tau_integral(eb0, t, r):
    cfg = FieldConfig.from_eb0(eb0, m=1.0)

    assert u0_tau_integral(cfg, t, r).value == approx(u0_tau_bound(cfg, t, r), rel=1e-8)
