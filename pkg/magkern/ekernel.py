"""Module for kernels of the pseudorelativistic kinetic energy and their envelopes.

This module provides the gauge-stripped, spin-resolved kernel of
``E_A = sqrt((p - eA)**2 - e sigma.B0 + m**2)`` computed from the
derivative of the heat kernel of ``E_A**2``, together with the
closed-form Bessel envelopes that bound it and related kernels
(``exp(-t E_A)``, the Foldy-Wouthuysen transformation, ``A_E``),
and the oscillatory integrals ``S_k`` of the commutator estimates.

Each closed-form envelope has a quadrature counterpart evaluating
the integral it was derived from, so that the two can be compared.

"""
__all__ = [
    "Displacement",
    "OmegaVector",
    "ae_bound_integral",
    "ea2_tau_derivative",
    "ea_bound_integral",
    "ea_kernel",
    "ea_kernel_bound",
    "exp_tea_bound",
    "exp_tea_bound_integral",
    "exp_tea_derivative_bound",
    "exp_tea_derivative_integral",
    "exp_tea_kernel",
    "free_relativistic_kernel",
    "sk_closed_form",
    "sk_quadrature",
    "u0_offdiag_bound",
    "u0_offdiag_integral",
    "u0_tau_bound",
    "u0_tau_integral",
]


# standard library
from dataclasses import dataclass, field
from logging import getLogger
from math import exp, hypot, pi, sqrt
from typing import Sequence, Tuple


# dependencies
from .errors import DomainError, SingularPointError, UnsupportedMassError
from .mehler import FieldConfig, SpinChannel, ea2_kernel_modulus, x_coth, x_over_sinh
from .quad import (
    Decay,
    IntegrandSpec,
    QuadratureResult,
    integrate_rect2d,
    integrate_semiaxis,
)
from .specfun import bessel_j, bessel_k, bessel_ke, gamma_fn, gauss_2f1


# constants
AE_TOLERANCE: float = 1e-6
SK_AXES = (1, 2)


# module logger
logger = getLogger(__name__)


@dataclass(frozen=True)
class Displacement:
    """Displacement ``z' = x' - x`` between two points."""

    z: Tuple[float, float, float]
    r: float = field(init=False)

    def __post_init__(self) -> None:
        z = tuple(float(c) for c in self.z)

        if len(z) != 3:
            raise DomainError(f"Displacement must have three components: {self.z!r}")

        object.__setattr__(self, "z", z)
        object.__setattr__(self, "r", sqrt(sum(c**2 for c in z)))

    @classmethod
    def between(cls, x: Sequence[float], xp: Sequence[float]) -> "Displacement":
        """Create an instance from two points as ``xp - x``."""
        return cls(tuple(b - a for a, b in zip(x, xp)))

    @classmethod
    def along(
        cls,
        r: float,
        direction: Sequence[float] = (0.0, 0.0, 1.0),
    ) -> "Displacement":
        """Create an instance of length ``r`` along a direction."""
        norm = sqrt(sum(c**2 for c in direction))

        if norm == 0:
            raise DomainError("Direction must be nonzero.")

        return cls(tuple(r * c / norm for c in direction))

    @property
    def rho2(self) -> float:
        """Squared distance transverse to the field."""
        return self.z[0] ** 2 + self.z[1] ** 2

    @property
    def z3sq(self) -> float:
        """Squared distance along the field."""
        return self.z[2] ** 2


@dataclass(frozen=True)
class OmegaVector:
    """Vector ``(omega_1, omega_2, 0)`` of the commutator integrals."""

    omega1: float
    omega2: float

    @classmethod
    def from_position(cls, cfg: FieldConfig, x: Sequence[float]) -> "OmegaVector":
        """Create an instance from ``omega = (eB0/2) (x2, -x1, 0)``."""
        return cls(0.5 * cfg.eb0 * x[1], -0.5 * cfg.eb0 * x[0])

    @property
    def omega_norm(self) -> float:
        return hypot(self.omega1, self.omega2)

    def component(self, k: int) -> float:
        """Return the k-th component (k = 1 or 2)."""
        if k not in SK_AXES:
            raise DomainError(f"Axis must be one of {SK_AXES}: {k}")

        return self.omega1 if k == 1 else self.omega2


# main functions
def ea2_tau_derivative(
    cfg: FieldConfig,
    spin: SpinChannel,
    tau: float,
    d: Displacement,
) -> float:
    """Derivative in ``tau`` of the gauge-stripped heat kernel of ``E_A**2``.

    Args:
        cfg: Field configuration.
        spin: Spin channel.
        tau: Semigroup parameter (> 0).
        d: Displacement between the two points.

    Returns:
        Value of the derivative.

    Raises:
        DomainError: If ``tau <= 0``.

    """
    if not tau > 0:
        raise DomainError(f"Semigroup parameter must be positive: {tau}")

    return _derivative(cfg.eb0, cfg.m, SpinChannel(spin).s, tau, d.rho2, d.z3sq)


def ea_kernel(
    cfg: FieldConfig,
    spin: SpinChannel,
    d: Displacement,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Gauge-stripped, spin-resolved kernel of ``E_A`` at separation ``d``.

    It is computed as ``-(1/sqrt(pi)) int_0^inf dtau/sqrt(tau) dK/dtau``
    where ``K`` is the heat kernel of ``E_A**2``.

    Args:
        cfg: Field configuration (m > 0).
        spin: Spin channel.
        d: Displacement between the two points (r > 0).
        tol: Relative tolerance of the integration.

    Returns:
        Result of the integration (real value).

    Raises:
        UnsupportedMassError: If ``m = 0``.
        SingularPointError: If ``r = 0``.

    """
    _check_mass(cfg)

    if not d.r > 0:
        raise SingularPointError("Kernel of E_A is singular at coincident points.")

    eb0, m, s = cfg.eb0, cfg.m, SpinChannel(spin).s
    rho2, z3sq, r2 = d.rho2, d.z3sq, d.r**2

    def integrand(tau: float) -> float:
        return -_derivative(eb0, m, s, tau, rho2, z3sq) / sqrt(pi * tau)

    def envelope(tau: float) -> float:
        return _derivative_envelope(eb0, m, s, tau, rho2, z3sq) / sqrt(pi * tau)

    spec = IntegrandSpec(
        exponent=-0.5,
        decay=Decay.EXPONENTIAL,
        rate=m**2,
        envelope=envelope,
        breakpoints=(r2 / 16, r2 / 4, r2, 1 / m**2, d.r / (2 * m)),
    )
    return integrate_semiaxis(integrand, spec, tol)


def free_relativistic_kernel(m: float, r: float, scaled: bool = False) -> float:
    """Off-diagonal kernel of ``sqrt(p**2 + m**2)``, ``-m**2 K_2(mr) / (2 pi**2 r**2)``.

    If ``scaled`` is True, the value times ``exp(m r)`` is returned.

    """
    _check_positive(m=m, r=r)
    return -(m**2) * _k(2, m * r, scaled) / (2 * pi**2 * r**2)


def ea_kernel_bound(cfg: FieldConfig, r: float, scaled: bool = False) -> float:
    """Closed-form envelope of the kernel of ``E_A``.

    Args:
        cfg: Field configuration (m > 0).
        r: Separation (> 0).
        scaled: If True, the value times ``exp(m r)`` is returned.

    Returns:
        ``(1/2pi**2) {K_1(mr) [14m/r**3 + (2m**3 + 7m eB0)/r]
        + K_0(mr) [7m**2/r**2 + 2eB0 (m**2 + eB0)]}``.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, r=r)
    k0, k1 = _k(0, m * r, scaled), _k(1, m * r, scaled)
    first = k1 * (14 * m / r**3 + (2 * m**3 + 7 * m * eb0) / r)
    second = k0 * (7 * m**2 / r**2 + 2 * eb0 * (m**2 + eb0))
    return (first + second) / (2 * pi**2)


def ea_bound_integral(
    cfg: FieldConfig,
    r: float,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Quadrature of the ``tau``-integral evaluated by ``ea_kernel_bound``."""
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, r=r)
    r2 = r**2

    def integrand(tau: float) -> float:
        braces = (
            1.5 / tau
            + 5 * eb0
            + m**2
            + eb0 * r2 / (2 * tau)
            + r2 / (4 * tau**2)
            + (m**2 + 2 * eb0) * 2 * eb0 * tau
        )
        return exp(-tau * m**2 - r2 / (4 * tau)) * braces / (8 * pi**2 * tau**2)

    spec = IntegrandSpec(
        rate=m**2,
        envelope=integrand,
        breakpoints=(r2 / 16, r2 / 4, r2, 1 / m**2, r / (2 * m)),
    )
    return integrate_semiaxis(integrand, spec, tol)


def exp_tea_kernel(
    cfg: FieldConfig,
    spin: SpinChannel,
    t: float,
    d: Displacement,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Gauge-stripped, spin-resolved kernel of ``exp(-t E_A)``.

    It is computed by subordination to the heat kernel of ``E_A**2``:
    ``(1/sqrt(pi)) int_0^inf dtau/sqrt(tau) exp(-tau) K(t**2 / 4tau)``.

    """
    if not t > 0:
        raise DomainError(f"Semigroup parameter must be positive: {t}")

    eb0, m, s = cfg.eb0, cfg.m, SpinChannel(spin).s
    rho, z3 = sqrt(d.rho2), sqrt(d.z3sq)

    def integrand(tau: float) -> float:
        heat = ea2_kernel_modulus(eb0, m, s, t**2 / (4 * tau), rho, z3)
        return exp(-tau) * float(heat) / sqrt(pi * tau)

    breakpoints = [t * m / 2]

    if d.r > 0:
        breakpoints.append(t**2 / d.r**2)

    spec = IntegrandSpec(
        exponent=-0.5,
        envelope=integrand,
        breakpoints=tuple(b for b in breakpoints if b > 0),
    )
    return integrate_semiaxis(integrand, spec, tol)


def exp_tea_bound(cfg: FieldConfig, t: float, r: float) -> float:
    """Closed-form envelope of the kernel of ``exp(-t E_A)``.

    Returns:
        ``(m/2pi**2) {(m t/xi**2) K_2(m xi) + eB0 (t/xi) K_1(m xi)}``
        with ``xi = sqrt(t**2 + r**2)``.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)

    if not r >= 0:
        raise DomainError(f"Separation must be nonnegative: {r}")

    xi = hypot(t, r)
    return _tea_terms(m, eb0, t, xi, _ladder(m * xi))


def exp_tea_bound_integral(
    cfg: FieldConfig,
    t: float,
    r: float,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Quadrature of the integral evaluated by ``exp_tea_bound``."""
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)

    def integrand(tau: float) -> float:
        exponent = -tau - (t * m) ** 2 / (4 * tau) - r**2 * tau / t**2
        return tau * exp(exponent) * (1 + eb0 * t**2 / (2 * tau)) / (pi**2 * t**3)

    rate = 1 + r**2 / t**2
    spec = IntegrandSpec(
        rate=rate,
        envelope=integrand,
        breakpoints=(t * m / (2 * sqrt(rate)),),
    )
    return integrate_semiaxis(integrand, spec, tol)


def exp_tea_derivative_bound(cfg: FieldConfig, t: float, r: float) -> float:
    """Closed-form envelope of the kernel of ``d/dt exp(-t E_A)``.

    Returns:
        ``(1/pi**2) {(3 + eB0 r**2) (m**2/2xi**2) K_2 + (5eB0 + m**2) (m/2xi) K_1
        + (m**3/2xi**3) r**2 K_3 + (eB0 m**2/2 + eB0**2) K_0}`` at ``m xi``
        with ``xi = sqrt(t**2 + r**2)``.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)

    if not r >= 0:
        raise DomainError(f"Separation must be nonnegative: {r}")

    xi = hypot(t, r)
    return _tea_derivative_terms(m, eb0, r**2, xi, _ladder(m * xi))


def exp_tea_derivative_integral(
    cfg: FieldConfig,
    t: float,
    r: float,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Quadrature of the integral evaluated by ``exp_tea_derivative_bound``."""
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)
    r2, t2 = r**2, t**2

    def integrand(tau: float) -> float:
        exponent = -tau - (m * t) ** 2 / (4 * tau) - r2 * tau / t2
        brackets = (
            6 * tau / t2
            + 5 * eb0
            + m**2
            + 2 * eb0 * r2 * tau / t2
            + 4 * r2 * tau**2 / t2**2
            + (eb0 * m**2 + 2 * eb0**2) * t2 / (2 * tau)
        )
        return exp(exponent) * brackets / (2 * pi**2 * t2)

    rate = 1 + r2 / t2
    spec = IntegrandSpec(
        rate=rate,
        envelope=integrand,
        breakpoints=(t * m / (2 * sqrt(rate)),),
    )
    return integrate_semiaxis(integrand, spec, tol)


def u0_offdiag_bound(cfg: FieldConfig, r: float, scaled: bool = False) -> float:
    """Closed-form envelope of the off-diagonal Foldy-Wouthuysen kernel.

    Returns:
        ``(sqrt(2)/pi**2) {m**2 K_2(mr)/r + (3/2) eB0 m K_1(mr)
        + (eB0**2/2) r K_0(mr)}``, times ``exp(m r)`` if ``scaled``.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, r=r)
    z = m * r
    total = (
        m**2 * _k(2, z, scaled) / r
        + 1.5 * eb0 * m * _k(1, z, scaled)
        + 0.5 * eb0**2 * r * _k(0, z, scaled)
    )
    return sqrt(2) / pi**2 * total


def u0_offdiag_integral(
    cfg: FieldConfig,
    r: float,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Quadrature of the one-dimensional integral evaluated by ``u0_offdiag_bound``.

    The integrand carries the fractional orders ``K_{11/4}``, ``K_{7/4}``,
    and ``K_{3/4}`` left after the first integration.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, r=r)
    prefactor = 2 / pi**3 * r * 2**-0.75 * gamma_fn(0.25) * m**-0.25

    def integrand(tp: float) -> float:
        a = hypot(tp, r)
        braces = (
            m**3 * bessel_k(2.75, m * a) / a**2.75
            + 1.5 * eb0 * m**2 * bessel_k(1.75, m * a) / a**1.75
            + 0.5 * eb0**2 * m * bessel_k(0.75, m * a) / a**0.75
        )
        return prefactor * sqrt(tp) * braces

    spec = IntegrandSpec(rate=m, envelope=integrand, breakpoints=(r, 1 / m))
    return integrate_semiaxis(integrand, spec, tol)


def u0_tau_bound(cfg: FieldConfig, t: float, r: float) -> float:
    """Closed form of the innermost integral of the Foldy-Wouthuysen kernel bound.

    Returns:
        ``t**4 {m**3 K_3(m xi)/xi**3 + (3/2) eB0 m**2 K_2(m xi)/xi**2
        + (eB0**2/2) m K_1(m xi)/xi}`` with ``xi = sqrt(t**2 + r**2)``.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)

    if not r >= 0:
        raise DomainError(f"Separation must be nonnegative: {r}")

    xi = hypot(t, r)
    _, k1, k2, k3 = _ladder(m * xi)
    braces = (
        m**3 * k3 / xi**3
        + 1.5 * eb0 * m**2 * k2 / xi**2
        + 0.5 * eb0**2 * m * k1 / xi
    )
    return t**4 * braces


def u0_tau_integral(
    cfg: FieldConfig,
    t: float,
    r: float,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Quadrature of the integral evaluated by ``u0_tau_bound``."""
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, t=t)
    t2 = t**2

    def integrand(tau: float) -> float:
        exponent = -tau - r**2 * tau / t2 - t2 * m**2 / (4 * tau)
        braces = 4 * tau**2 / t2 + 3 * eb0 * tau + 0.5 * eb0**2 * t2
        return exp(exponent) * braces

    rate = 1 + r**2 / t2
    spec = IntegrandSpec(
        rate=rate,
        envelope=integrand,
        breakpoints=(t * m / (2 * sqrt(rate)),),
    )
    return integrate_semiaxis(integrand, spec, tol)


def ae_bound_integral(
    cfg: FieldConfig,
    r: float,
    tol: float = AE_TOLERANCE,
    relaxed: bool = False,
) -> QuadratureResult:
    """Double-integral envelope of the kernel of ``sqrt((E_A + m) / E_A)``.

    The integrand is built from the envelopes of ``exp(-t E_A)`` and
    of its derivative at ``t = tau + t'``.

    Args:
        cfg: Field configuration (m > 0).
        r: Separation (> 0).
        tol: Relative tolerance of the double integration.
        relaxed: If True, ``exp(-tau m)`` is replaced by 1 and ``xi`` by
            ``y = sqrt(tau**2 + t'**2 + r**2)`` in the Bessel terms.
            The result is then never smaller than the unrelaxed one.

    Returns:
        Result of the integration.

    """
    m, eb0 = cfg.m, cfg.eb0
    _check_positive(m=m, r=r)
    r2 = r**2

    def integrand(tau: float, tp: float) -> float:
        if relaxed:
            xi = sqrt(tau**2 + tp**2 + r2)
            weight = 1.0
        else:
            xi = sqrt((tau + tp) ** 2 + r2)
            weight = exp(-tau * m)

        ks = _ladder(m * xi)
        derivative = _tea_derivative_terms(m, eb0, r2, xi, ks)
        semigroup = m * _tea_terms(m, eb0, tau + tp, xi, ks)
        return weight * (derivative + semigroup) / (pi * sqrt(tau * tp))

    spec = IntegrandSpec(exponent=-0.5, rate=m, breakpoints=(r, 1 / m))
    result = integrate_rect2d(integrand, spec, spec, tol)
    logger.debug(
        "A_E envelope at r=%g: %g (%d evaluations)",
        r,
        result.value,
        result.evaluations,
    )
    return result


def sk_closed_form(cfg: FieldConfig, k: int, ov: OmegaVector) -> complex:
    """Closed form of the oscillatory integral ``S_k``.

    Returns:
        ``(4 pi i/3) omega_k / sqrt(m**2 + omega**2)
        2F1(1/2, 3/2; 5/2; omega**2 / (m**2 + omega**2))``.

    Raises:
        DomainError: If ``omega = 0`` or ``k`` is not 1 or 2.

    """
    omega = _check_omega(ov)
    omega_k = ov.component(k)
    norm2 = cfg.m**2 + omega**2
    hyper = gauss_2f1(0.5, 1.5, 2.5, omega**2 / norm2)
    return 4j * pi / 3 * omega_k / sqrt(norm2) * hyper


def sk_quadrature(
    cfg: FieldConfig,
    k: int,
    ov: OmegaVector,
    tol: float = 1e-10,
) -> QuadratureResult:
    """Oscillatory-integral evaluation of ``S_k``.

    The integral ``int_0^inf xi**-3/2 exp(-(m/omega) xi) J_{3/2}(xi) dxi``
    is summed panel by panel between the zeros of ``J_{3/2}``.

    """
    omega = _check_omega(ov)
    omega_k = ov.component(k)
    a = cfg.m / omega

    def integrand(xi: float) -> float:
        return xi**-1.5 * exp(-a * xi) * bessel_j(1.5, xi)

    spec = IntegrandSpec(decay=Decay.OSCILLATORY, zeros=_j32_zero)
    result = integrate_semiaxis(integrand, spec, tol)
    factor = (2 * pi) ** 1.5 * 1j * omega_k / omega
    return QuadratureResult(
        factor * result.value,
        abs(factor) * result.error_estimate,
        result.evaluations,
    )


# helper functions
def _derivative(
    eb0: float, m: float, s: int, tau: float, rho2: float, z3sq: float
) -> float:
    """Derivative in ``tau`` of the gauge-stripped heat kernel of ``E_A**2``."""
    heat = ea2_kernel_modulus(eb0, m, s, tau, sqrt(rho2), sqrt(z3sq))
    return sum(_braces(eb0, m, s, tau, rho2, z3sq)) * float(heat)


def _derivative_envelope(
    eb0: float, m: float, s: int, tau: float, rho2: float, z3sq: float
) -> float:
    """Upper bound of the modulus of ``_derivative`` term by term."""
    heat = ea2_kernel_modulus(eb0, m, s, tau, sqrt(rho2), sqrt(z3sq))
    return sum(map(abs, _braces(eb0, m, s, tau, rho2, z3sq))) * float(heat)


def _braces(
    eb0: float, m: float, s: int, tau: float, rho2: float, z3sq: float
) -> Tuple[float, ...]:
    a = eb0 * tau
    return (
        -float(x_coth(a)) / tau,
        -0.5 / tau,
        -(m**2),
        s * eb0,
        z3sq / (4 * tau**2),
        float(x_over_sinh(a)) ** 2 * rho2 / (4 * tau**2),
    )


def _ladder(z: float) -> Tuple[float, float, float, float]:
    """``K_0`` to ``K_3`` at ``z`` by upward recurrence."""
    k0, k1 = bessel_k(0, z), bessel_k(1, z)
    k2 = k0 + 2 / z * k1
    return k0, k1, k2, k1 + 4 / z * k2


def _tea_terms(
    m: float, eb0: float, t: float, xi: float, ks: Tuple[float, ...]
) -> float:
    return m * t / (2 * pi**2) * (m * ks[2] / xi**2 + eb0 * ks[1] / xi)


def _tea_derivative_terms(
    m: float, eb0: float, r2: float, xi: float, ks: Tuple[float, ...]
) -> float:
    k0, k1, k2, k3 = ks
    braces = (
        (3 + eb0 * r2) * m**2 / (2 * xi**2) * k2
        + (5 * eb0 + m**2) * m / (2 * xi) * k1
        + m**3 / (2 * xi**3) * r2 * k3
        + (eb0 * m**2 / 2 + eb0**2) * k0
    )
    return braces / pi**2


def _j32_zero(k: int) -> float:
    """McMahon-type approximation of the k-th positive zero of J_{3/2}."""
    q = (k + 0.5) * pi
    return q - 1 / q - 2 / (3 * q**3)


def _k(order: int, z: float, scaled: bool) -> float:
    return bessel_ke(order, z) if scaled else bessel_k(order, z)


def _check_mass(cfg: FieldConfig) -> None:
    if not cfg.m > 0:
        raise UnsupportedMassError(
            "Mass must be positive: the lowest Landau level "
            "makes the tail algebraic at m = 0."
        )


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            if name == "m":
                raise UnsupportedMassError(f"Mass must be positive: {value}")

            raise DomainError(f"{name} must be positive: {value}")


def _check_omega(ov: OmegaVector) -> float:
    omega = ov.omega_norm

    if not omega > 0:
        raise DomainError("Omega vector must be nonzero.")

    return omega
