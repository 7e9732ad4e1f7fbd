# standard library
from math import exp, pi, sinh


# dependencies
import numpy as np
from magkern import (
    DEFAULT_COUPLING,
    DomainError,
    FieldConfig,
    KernelValue,
    SpinChannel,
    ea2_heat_kernel,
    ea2_translation_part,
    free_heat_kernel,
    gauge_phase,
    longitudinal_kernel,
    mehler_hs_kernel,
    prefactor_bound,
    transverse_kernel,
)
from pytest import approx, mark, raises


# constants
ORIGIN = (0.0, 0.0, 0.0)
FREE_AT_ORIGIN = (4 * pi) ** -1.5
rng = np.random.default_rng(20240101)
POINTS = [tuple(rng.uniform(-2, 2, 3)) for _ in range(10)]


# test functions
def test_field_config():
    cfg = FieldConfig(b0=2.0, m=1.0)

    assert cfg.e == DEFAULT_COUPLING
    assert cfg.e2 == approx(1 / 137.04, rel=1e-14)
    assert cfg.eb0 == approx(2.0 * DEFAULT_COUPLING, rel=1e-15)
    assert FieldConfig.from_eb0(1.0).eb0 == 1.0


@mark.parametrize("kwargs", [dict(b0=-1.0), dict(m=-1.0), dict(e=0.0)])
def test_field_config_domain(kwargs):
    with raises(DomainError):
        FieldConfig(**kwargs)


def test_spin_channel():
    assert SpinChannel(1).s == 1
    assert SpinChannel.DOWN.s == -1

    with raises(ValueError):
        SpinChannel(0)


def test_kernel_value():
    value = KernelValue(2.0 + 0j, 1j)

    assert value.value == 2j
    assert abs(value) == 2.0
    assert value.conjugate().value == -2j

    with raises(ValueError):
        KernelValue(1.0 + 0j, 2.0 + 0j)


def test_mehler_free_limit():
    kernel = mehler_hs_kernel(FieldConfig(), 1.0, ORIGIN, ORIGIN)

    assert kernel.value == approx(FREE_AT_ORIGIN, rel=1e-14)
    assert kernel.value == approx(2.24485e-2, rel=1e-5)
    assert kernel.gauge_phase == 1.0


def test_mehler_at_origin():
    kernel = mehler_hs_kernel(FieldConfig.from_eb0(1.0), 1.0, ORIGIN, ORIGIN)
    expected = (4 * pi) ** -0.5 / (4 * pi * sinh(1.0))

    assert kernel.value == approx(expected, rel=1e-14)
    assert kernel.value == approx(1.91002e-2, rel=1e-5)


def test_mehler_factorization():
    cfg = FieldConfig.from_eb0(0.7)

    for x, xp in zip(POINTS, POINTS[1:]):
        kernel = mehler_hs_kernel(cfg, 0.8, x, xp)
        transverse = transverse_kernel(cfg, 0.8, x, xp)
        product = transverse * longitudinal_kernel(0.8, xp[2] - x[2])
        assert kernel.value == approx(product, rel=1e-13)


def test_mehler_hermitian():
    cfg = FieldConfig.from_eb0(1.3)

    for x, xp in zip(POINTS, POINTS[1:]):
        forward = mehler_hs_kernel(cfg, 0.5, x, xp).value
        backward = mehler_hs_kernel(cfg, 0.5, xp, x).value
        assert forward == approx(backward.conjugate(), rel=1e-14)


def test_mehler_continuity_in_field():
    for x, xp in zip(POINTS, POINTS[1:]):
        free = mehler_hs_kernel(FieldConfig(), 1.0, x, xp).value
        weak = mehler_hs_kernel(FieldConfig(b0=1e-8), 1.0, x, xp).value
        assert abs(weak - free) <= 1e-8 * abs(free)


def test_mehler_small_field_product():
    kernel = mehler_hs_kernel(FieldConfig.from_eb0(1e-6), 1e-2, ORIGIN, ORIGIN)

    assert kernel.value == approx((4 * pi * 1e-2) ** -1.5, rel=1e-12)


def test_gauge_phase():
    cfg = FieldConfig.from_eb0(2.0)
    phase = gauge_phase(cfg, (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))

    assert phase == approx(np.exp(-1j), rel=1e-15)
    assert abs(phase) == approx(1.0, rel=1e-15)


@mark.parametrize("spin", [SpinChannel.UP, SpinChannel.DOWN])
def test_ea2_field_free(spin):
    cfg = FieldConfig.from_eb0(0.0, m=1.0)
    kernel = ea2_heat_kernel(cfg, spin, 1.0, ORIGIN, ORIGIN)

    assert kernel.value == approx(exp(-1) * FREE_AT_ORIGIN, rel=1e-14)
    assert kernel.value == approx(8.25827e-3, rel=1e-5)


def test_ea2_spin_factor():
    cfg = FieldConfig.from_eb0(0.9, m=0.4)
    x, xp = POINTS[0], POINTS[1]
    up = ea2_heat_kernel(cfg, 1, 0.6, x, xp).value
    down = ea2_heat_kernel(cfg, -1, 0.6, x, xp).value
    hs = mehler_hs_kernel(cfg, 0.6, x, xp).value

    assert up == approx(exp(-0.6 * 0.16 + 0.6 * 0.9) * hs, rel=1e-13)
    assert down == approx(exp(-0.6 * 0.16 - 0.6 * 0.9) * hs, rel=1e-13)


def test_ea2_translation_part():
    cfg = FieldConfig.from_eb0(1.0, m=1.0)
    x, xp = POINTS[2], POINTS[3]
    dz = tuple(b - a for a, b in zip(x, xp))
    kernel = ea2_heat_kernel(cfg, 1, 1.0, x, xp)

    expected = kernel.translation_part.real
    assert ea2_translation_part(cfg, 1, 1.0, dz) == approx(expected, rel=1e-14)


def test_free_heat_kernel():
    assert free_heat_kernel(1.0, ORIGIN, ORIGIN) == approx(2.24485e-2, rel=1e-5)
    value = free_heat_kernel(1.0, ORIGIN, (0.0, 0.0, 2.0))
    assert value == approx(FREE_AT_ORIGIN / exp(1), rel=1e-14)
    assert value == approx(8.25827e-3, rel=1e-5)


def test_prefactor_bound():
    cfg = FieldConfig.from_eb0(1.0, m=0.0)

    value = prefactor_bound(cfg, 1.0, ORIGIN, ORIGIN)
    assert value == approx(3 * FREE_AT_ORIGIN, rel=1e-14)
    assert prefactor_bound(cfg, 1.0, ORIGIN, ORIGIN) == approx(6.73456e-2, rel=1e-5)


def test_prefactor_domination():
    for eb0 in (0.0, 0.5, 5.0, 100.0):
        cfg = FieldConfig.from_eb0(eb0, m=0.3)

        for t in (0.01, 0.3, 1.0, 10.0):
            for x, xp in zip(POINTS, POINTS[1:]):
                bound = prefactor_bound(cfg, t, x, xp)

                for spin in SpinChannel:
                    kernel = ea2_heat_kernel(cfg, spin, t, x, xp)
                    assert abs(kernel) <= bound * (1 + 1e-12)


def test_large_field_is_finite():
    cfg = FieldConfig.from_eb0(1e3, m=1.0)
    kernel = ea2_heat_kernel(cfg, SpinChannel.UP, 10.0, ORIGIN, (1.0, 1.0, 1.0))

    assert np.isfinite(abs(kernel))


@mark.parametrize("t", [0.0, -1.0])
def test_time_domain(t):
    with raises(DomainError):
        mehler_hs_kernel(FieldConfig(), t, ORIGIN, ORIGIN)

    with raises(DomainError):
        free_heat_kernel(t, ORIGIN, ORIGIN)


def test_point_domain():
    with raises(DomainError):
        mehler_hs_kernel(FieldConfig(), 1.0, (0.0, 0.0), ORIGIN)


@mark.parametrize("shift", [(3.0, -2.0, 8.0), (-0.5, 0.25, -16.0)])
def test_translation_part_is_translation_invariant(shift):
    cfg = FieldConfig.from_eb0(1.25, m=0.5)
    x, xp = (0.5, -1.25, 2.0), (1.75, 0.25, -0.5)
    x_shifted = tuple(a + b for a, b in zip(x, shift))
    xp_shifted = tuple(a + b for a, b in zip(xp, shift))

    hs = mehler_hs_kernel(cfg, 0.7, x, xp)
    hs_shifted = mehler_hs_kernel(cfg, 0.7, x_shifted, xp_shifted)
    assert hs_shifted.translation_part == hs.translation_part

    for spin in SpinChannel:
        kernel = ea2_heat_kernel(cfg, spin, 0.7, x, xp)
        shifted = ea2_heat_kernel(cfg, spin, 0.7, x_shifted, xp_shifted)
        assert shifted.translation_part == kernel.translation_part
