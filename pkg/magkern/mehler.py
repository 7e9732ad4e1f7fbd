"""Module for the magnetic heat kernels of a constant field.

This module provides the closed-form (Mehler) heat kernel of the
magnetic Schroedinger operator ``H_s = (p - eA)**2`` for a constant
field along ``e3`` in the symmetric gauge ``A = (B0 x x) / 2``,
the spin-resolved heat kernel of ``E_A**2 = H_s - e sigma.B0 + m**2``,
the free heat kernel, and the prefactor bound of the latter.

Kernels are returned as ``KernelValue``: a translation-invariant part
depending only on ``x' - x`` and a unimodular gauge phase.

Examples:
    To evaluate the heat kernel at coincident points::

        cfg = FieldConfig.from_eb0(1.0, m=0.0)
        value = mehler_hs_kernel(cfg, 1.0, (0, 0, 0), (0, 0, 0))
        print(value.value)

        # (0.019100...+0j)

"""
__all__ = [
    "DEFAULT_COUPLING",
    "FieldConfig",
    "KernelValue",
    "SpinChannel",
    "ea2_heat_kernel",
    "ea2_kernel_modulus",
    "ea2_translation_part",
    "free_heat_kernel",
    "free_kernel_array",
    "gauge_phase",
    "hs_kernel_modulus",
    "longitudinal_kernel",
    "mehler_hs_kernel",
    "prefactor_bound",
    "prefactor_bound_array",
    "transverse_kernel",
    "transverse_parameters",
    "x_coth",
    "x_over_sinh",
]


# standard library
from cmath import exp as cexp
from dataclasses import dataclass, field
from enum import IntEnum
from math import isclose, pi, sqrt
from typing import Sequence, Tuple


# dependencies
import numpy as np
from .errors import DomainError
from .typing import Point


# constants
DEFAULT_COUPLING: float = sqrt(1 / 137.04)


@dataclass(frozen=True)
class FieldConfig:
    """Physical parameters in natural units.

    Args:
        b0: Field strength along ``e3`` (>= 0).
        m: Mass (>= 0).
        e: Coupling (> 0). Default is ``sqrt(1/137.04)``.

    """

    b0: float = 0.0
    m: float = 0.0
    e: float = DEFAULT_COUPLING
    eb0: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.b0 >= 0:
            raise DomainError(f"Field strength must be nonnegative: {self.b0}")

        if not self.m >= 0:
            raise DomainError(f"Mass must be nonnegative: {self.m}")

        if not self.e > 0:
            raise DomainError(f"Coupling must be positive: {self.e}")

        object.__setattr__(self, "eb0", self.e * self.b0)

    @classmethod
    def from_eb0(
        cls,
        eb0: float,
        m: float = 0.0,
        e: float = DEFAULT_COUPLING,
    ) -> "FieldConfig":
        """Create an instance from the product ``e * b0`` (kept exact)."""
        if not eb0 >= 0:
            raise DomainError(f"Field strength must be nonnegative: {eb0}")

        cfg = cls(eb0 / e, m, e)
        object.__setattr__(cfg, "eb0", float(eb0))
        return cfg

    @property
    def e2(self) -> float:
        """Squared coupling ``e**2``."""
        return self.e**2


class SpinChannel(IntEnum):
    """Eigenvalue ``s = +1, -1`` of sigma_3 along the field."""

    UP = 1
    DOWN = -1

    @property
    def s(self) -> int:
        return int(self)


@dataclass(frozen=True)
class KernelValue:
    """Value of a two-point kernel with its gauge phase carried separately."""

    translation_part: complex
    gauge_phase: complex

    def __post_init__(self) -> None:
        if not isclose(abs(self.gauge_phase), 1.0, rel_tol=1e-12):
            raise ValueError(f"Gauge phase must be unimodular: {self.gauge_phase}")

    @property
    def value(self) -> complex:
        """Full kernel value (translation part times gauge phase)."""
        return self.translation_part * self.gauge_phase

    def __abs__(self) -> float:
        return abs(self.translation_part)

    def conjugate(self) -> "KernelValue":
        return KernelValue(
            self.translation_part.conjugate(), self.gauge_phase.conjugate()
        )


# main functions
def mehler_hs_kernel(cfg: FieldConfig, t: float, x: Point, xp: Point) -> KernelValue:
    """Heat kernel ``exp(-t H_s)(x, x')`` of the magnetic Schroedinger operator.

    At ``b0 = 0`` the analytic limit ``eB0 / (4 pi sinh(eB0 t)) -> 1 / (4 pi t)``
    is taken, which gives the free heat kernel.

    Args:
        cfg: Field configuration.
        t: Semigroup parameter (> 0).
        x: First point in R^3.
        xp: Second point in R^3.

    Returns:
        Kernel value with its gauge phase.

    """
    _check_time(t)
    x, xp = _as_point(x), _as_point(xp)
    dz = xp - x
    translation = _hs_translation(cfg.eb0, t, dz[0] ** 2 + dz[1] ** 2, dz[2] ** 2)
    return KernelValue(complex(translation), gauge_phase(cfg, x, xp))


def ea2_heat_kernel(
    cfg: FieldConfig,
    spin: SpinChannel,
    t: float,
    x: Point,
    xp: Point,
) -> KernelValue:
    """Spin-resolved heat kernel ``exp(-t E_A**2)(x, x')``.

    The spinor factor ``exp(t e sigma.B0)`` acts on the sigma_3
    eigenstate ``s`` as the scalar ``exp(s t eB0)``.

    """
    _check_time(t)
    x, xp = _as_point(x), _as_point(xp)
    translation = ea2_translation_part(cfg, spin, t, xp - x)
    return KernelValue(complex(translation), gauge_phase(cfg, x, xp))


def ea2_translation_part(
    cfg: FieldConfig,
    spin: SpinChannel,
    t: float,
    dz: Point,
) -> float:
    """Gauge-stripped spin-resolved heat kernel of ``E_A**2`` at ``z' = dz``."""
    _check_time(t)
    dz = _as_point(dz)
    s = SpinChannel(spin).s
    return float(
        _ea2_translation(cfg.eb0, cfg.m, s, t, dz[0] ** 2 + dz[1] ** 2, dz[2] ** 2)
    )


def free_heat_kernel(t: float, x: Point, xp: Point) -> float:
    """Free heat kernel ``(4 pi t)**-3/2 exp(-|x - x'|**2 / 4t)``."""
    _check_time(t)
    x, xp = _as_point(x), _as_point(xp)
    r2 = float(np.sum((xp - x) ** 2))
    return float(free_kernel_array(t, sqrt(r2)))


def prefactor_bound(cfg: FieldConfig, t: float, x: Point, xp: Point) -> float:
    """Bound ``exp(-t m**2) (4 pi t)**-3/2 (1 + 2 eB0 t) exp(-|x - x'|**2 / 4t)``.

    It dominates the spin-resolved heat kernel of ``E_A**2`` for both spins.

    """
    _check_time(t)
    x, xp = _as_point(x), _as_point(xp)
    r = sqrt(float(np.sum((xp - x) ** 2)))
    return float(prefactor_bound_array(cfg.eb0, cfg.m, t, r))


def transverse_kernel(cfg: FieldConfig, t: float, x: Point, xp: Point) -> complex:
    """Transverse factor of the Mehler kernel, gauge phase included."""
    x, xp = _as_point(x), _as_point(xp)
    dz = xp - x
    amplitude, width = transverse_parameters(cfg, t)
    modulus = amplitude * np.exp(-width * (dz[0] ** 2 + dz[1] ** 2))
    return complex(modulus) * gauge_phase(cfg, x, xp)


def longitudinal_kernel(t: float, dz3: float) -> float:
    """Longitudinal (field-direction) factor of the Mehler kernel."""
    _check_time(t)
    return float(np.exp(-(dz3**2) / (4 * t)) / np.sqrt(4 * pi * t))


def gauge_phase(cfg: FieldConfig, x: Point, xp: Point) -> complex:
    """Gauge phase ``exp(-i (eB0/2) (x1 x2' - x2 x1'))``."""
    x, xp = _as_point(x), _as_point(xp)
    return cexp(-0.5j * cfg.eb0 * (x[0] * xp[1] - x[1] * xp[0]))


def transverse_parameters(cfg: FieldConfig, t: float) -> Tuple[float, float]:
    """Amplitude and Gaussian coefficient of the transverse factor.

    The modulus of the transverse factor is ``amplitude * exp(-width * rho**2)``
    with ``amplitude = eB0 / (4 pi sinh(eB0 t))`` and
    ``width = (eB0 / 4) coth(eB0 t)``.

    """
    _check_time(t)
    a = cfg.eb0 * t
    return float(x_over_sinh(a)) / (4 * pi * t), float(x_coth(a)) / (4 * t)


# array functions
def hs_kernel_modulus(eb0, t, rho, z3) -> np.ndarray:
    """Modulus of the Mehler kernel on arrays of (t, rho, z3)."""
    rho, z3 = np.asarray(rho, float), np.asarray(z3, float)
    return _hs_translation(eb0, t, rho**2, z3**2)


def ea2_kernel_modulus(eb0, m, s, t, rho, z3) -> np.ndarray:
    """Modulus of the spin-resolved heat kernel of ``E_A**2`` on arrays."""
    rho, z3 = np.asarray(rho, float), np.asarray(z3, float)
    return _ea2_translation(eb0, m, s, t, rho**2, z3**2)


def free_kernel_array(t, r) -> np.ndarray:
    """Free heat kernel on arrays of (t, r)."""
    t, r = np.asarray(t, float), np.asarray(r, float)
    return (4 * pi * t) ** -1.5 * np.exp(-(r**2) / (4 * t))


def prefactor_bound_array(eb0, m, t, r) -> np.ndarray:
    """Prefactor bound on arrays of (eB0, m, t, r)."""
    eb0, m, t = np.asarray(eb0, float), np.asarray(m, float), np.asarray(t, float)
    return np.exp(-t * m**2) * (1 + 2 * eb0 * t) * free_kernel_array(t, r)


def x_over_sinh(a) -> np.ndarray:
    """``a / sinh(a)`` for ``a >= 0`` with the limit 1 at ``a = 0``."""
    return _landau_factor(a, 0)


def x_coth(a) -> np.ndarray:
    """``a coth(a)`` for ``a >= 0`` with the limit 1 at ``a = 0``."""
    a = np.asarray(a, float)

    with np.errstate(invalid="ignore", divide="ignore"):
        d = -np.expm1(-2 * a)
        value = a * (2 - d) / d

    return np.where(a == 0, 1.0, value)


# helper functions
def _hs_translation(eb0, t, rho2, z3sq) -> np.ndarray:
    """Gauge-stripped Mehler kernel from the squared separations."""
    a = np.asarray(eb0, float) * np.asarray(t, float)
    t = np.asarray(t, float)
    gaussian = np.exp(-x_coth(a) * rho2 / (4 * t))
    transverse = x_over_sinh(a) / (4 * pi * t) * gaussian
    return transverse * np.exp(-z3sq / (4 * t)) / np.sqrt(4 * pi * t)


def _ea2_translation(eb0, m, s, t, rho2, z3sq) -> np.ndarray:
    """Gauge-stripped spin-resolved heat kernel of ``E_A**2``."""
    a = np.asarray(eb0, float) * np.asarray(t, float)
    t = np.asarray(t, float)
    gaussian = np.exp(-x_coth(a) * rho2 / (4 * t))
    transverse = _landau_factor(a, s) / (4 * pi * t) * gaussian
    longitudinal = np.exp(-z3sq / (4 * t)) / np.sqrt(4 * pi * t)
    return np.exp(-t * np.asarray(m, float) ** 2) * transverse * longitudinal


def _landau_factor(a, s) -> np.ndarray:
    """``exp(s a) a / sinh(a)`` for ``a >= 0`` with the limit 1 at ``a = 0``."""
    a = np.asarray(a, float)

    with np.errstate(invalid="ignore", divide="ignore"):
        value = 2 * a * np.exp((np.asarray(s, float) - 1) * a) / -np.expm1(-2 * a)

    return np.where(a == 0, 1.0, value)


def _check_time(t: float) -> None:
    if not t > 0:
        raise DomainError(f"Semigroup parameter must be positive: {t}")


def _as_point(x: Sequence[float]) -> np.ndarray:
    point = np.asarray(x, dtype=float)

    if point.shape != (3,):
        raise DomainError(f"Point must have three coordinates: {x!r}")

    return point
