"""Module for double-precision special functions.

This module provides the special functions needed by every kernel
and bound of the package:

- ``bessel_k``: Modified Bessel function of the second kind K_nu (nu >= 0).
- ``bessel_ke``: Exponentially scaled K_nu, ``exp(z) K_nu(z)``.
- ``bessel_j``: Bessel function of the first kind J_nu (nu = 1, 3/2).
- ``gamma_fn``: Gamma function on the positive axis.
- ``gauss_2f1``: Gauss hypergeometric function on ``[0, 1]``.

K_nu is computed from closed forms for half-integer orders, from
the integral representation ``int_0^inf exp(-z cosh t) cosh(nu t) dt``
by the exponentially convergent trapezoid rule for ``z <= 30``,
and from its asymptotic expansion beyond.

"""
__all__ = [
    "BesselOrder",
    "bessel_j",
    "bessel_k",
    "bessel_ke",
    "gamma_fn",
    "gauss_2f1",
]


# standard library
import warnings
from dataclasses import dataclass
from logging import getLogger
from math import cos, exp, factorial, floor, isfinite, log, pi, sin, sqrt
from typing import Union


# dependencies
import numpy as np
from .errors import (
    BesselUnderflowWarning,
    ConvergenceError,
    DivergenceError,
    DomainError,
)
from .quad import integrate_smooth_even


# constants
ASYMPTOTIC_THRESHOLD: float = 30.0
BESSEL_J_ORDERS = (1.0, 1.5)
DECADES_BELOW_PEAK: float = 42.0
LANCZOS_G: float = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
SERIES_TERMS: int = 100_000
SMALL_Z_SERIES: float = 1.0


# module logger
logger = getLogger(__name__)


@dataclass(frozen=True)
class BesselOrder:
    """Nonnegative order of a Bessel function.

    Negative orders must be resolved before construction
    by ``BesselOrder.of`` (``K_-nu = K_nu``).

    """

    nu: float

    def __post_init__(self) -> None:
        if not self.nu >= 0:
            raise DomainError(f"Bessel order must be nonnegative: {self.nu}")

    @classmethod
    def of(cls, order: Union["BesselOrder", float]) -> "BesselOrder":
        """Create an instance from an order of any sign."""
        if isinstance(order, cls):
            return order

        return cls(abs(float(order)))

    @property
    def is_half_integer(self) -> bool:
        """Whether the order is n + 1/2 for an integer n >= 0."""
        twice = 2 * self.nu
        return twice == floor(twice) and int(twice) % 2 == 1


OrderLike = Union[BesselOrder, float]


# main functions
def bessel_k(order: OrderLike, z: float) -> float:
    """Modified Bessel function of the second kind K_nu(z).

    Args:
        order: Order nu. Negative orders are folded by ``K_-nu = K_nu``.
        z: Positive argument.

    Returns:
        K_nu(z). If it underflows, zero is returned
        and ``BesselUnderflowWarning`` is issued.

    Raises:
        DomainError: If ``z <= 0``.

    """
    scaled = bessel_ke(order, z)
    exponent = log(scaled) - z

    if exponent < -745.0:
        warnings.warn(
            f"K_{BesselOrder.of(order).nu}({z}) underflows to zero.",
            BesselUnderflowWarning,
        )
        return 0.0

    return exp(exponent)


def bessel_ke(order: OrderLike, z: float) -> float:
    """Exponentially scaled modified Bessel function ``exp(z) K_nu(z)``."""
    nu = BesselOrder.of(order)

    if not z > 0:
        raise DomainError(f"Argument of K_nu must be positive: {z}")

    if nu.is_half_integer:
        return _ke_half_integer(int(nu.nu - 0.5), z)

    if z > ASYMPTOTIC_THRESHOLD:
        return _ke_asymptotic(nu.nu, z)

    return _ke_integral(nu.nu, z)


def bessel_j(order: OrderLike, z: float) -> float:
    """Bessel function of the first kind J_nu(z) for nu = 1 or 3/2.

    Args:
        order: Order nu. Only 1 and 3/2 are supported.
        z: Nonnegative argument.

    Returns:
        J_nu(z).

    Raises:
        DomainError: If the order is not supported or ``z < 0``.

    """
    nu = BesselOrder.of(order).nu

    if nu not in BESSEL_J_ORDERS:
        raise DomainError(f"Order of J_nu must be one of {BESSEL_J_ORDERS}: {nu}")

    if not z >= 0:
        raise DomainError(f"Argument of J_nu must be nonnegative: {z}")

    if z < SMALL_Z_SERIES:
        return _j_series(nu, z)

    if nu == 1.5:
        return sqrt(2 / (pi * z)) * (sin(z) / z - cos(z))

    # periodic trapezoid rule of (1/2pi) int_0^2pi cos(tau - z sin tau)
    n = 2 * int(z) + 64
    tau = 2 * pi * np.arange(n) / n
    return float(np.mean(np.cos(tau - z * np.sin(tau))))


def gamma_fn(x: float) -> float:
    """Gamma function on the positive axis.

    Raises:
        DomainError: If ``x <= 0``.

    """
    if not x > 0:
        raise DomainError(f"Argument of Gamma must be positive: {x}")

    return _gamma(x)


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; x) for ``0 <= x <= 1``.

    The series is summed directly for ``x <= 1/2``. Above, the linear
    transformation to ``1 - x`` is used when ``c - a - b`` is not an integer.
    At ``x = 1`` the Gauss summation theorem is used.

    Raises:
        DomainError: If ``x`` is outside ``[0, 1]``.
        DivergenceError: If ``x = 1`` and ``c <= a + b``.

    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"Argument of 2F1 must be in [0, 1]: {x}")

    if c <= 0 and c == floor(c):
        raise DomainError(f"Parameter c of 2F1 must not be a nonpositive integer: {c}")

    d = c - a - b

    if x == 1.0:
        if d <= 0:
            raise DivergenceError(f"2F1 diverges at x = 1 for c - a - b = {d} <= 0.")

        return _gamma(c) * _gamma(d) * _rgamma(c - a) * _rgamma(c - b)

    if x <= 0.5 or d == floor(d):
        return _hypergeometric_series(a, b, c, x)

    y = 1.0 - x
    first = _gamma(c) * _gamma(d) * _rgamma(c - a) * _rgamma(c - b)
    second = _gamma(c) * _gamma(-d) * _rgamma(a) * _rgamma(b)
    near = _hypergeometric_series(a, b, 1 - d, y)
    far = _hypergeometric_series(c - a, c - b, 1 + d, y)
    return first * near + second * y**d * far


# helper functions
def _ke_half_integer(n: int, z: float) -> float:
    """Closed form of ``exp(z) K_{n+1/2}(z)``."""
    total = sum(
        factorial(n + k) / (factorial(k) * factorial(n - k)) / (2 * z) ** k
        for k in range(n + 1)
    )
    return sqrt(pi / (2 * z)) * total


def _ke_asymptotic(nu: float, z: float) -> float:
    """Asymptotic expansion of ``exp(z) K_nu(z)`` for large ``z``."""
    mu = 4 * nu**2
    term, total = 1.0, 1.0

    for k in range(1, int(2 * z)):
        following = term * (mu - (2 * k - 1) ** 2) / (8 * k * z)

        if abs(following) > abs(term):
            break

        term = following
        total += term

        if abs(term) <= 1e-17 * abs(total):
            break

    return sqrt(pi / (2 * z)) * total


def _ke_integral(nu: float, z: float) -> float:
    """Trapezoid rule of ``int_0^inf exp(-z (cosh t - 1)) cosh(nu t) dt``."""

    def log_integrand(t: np.ndarray) -> np.ndarray:
        # cosh(t) - 1 = 2 sinh(t/2)**2 without cancellation
        return nu * t - 2 * z * np.sinh(t / 2) ** 2

    def integrand(t: np.ndarray) -> np.ndarray:
        reflected = np.exp(-nu * t - 2 * z * np.sinh(t / 2) ** 2)
        return 0.5 * (np.exp(log_integrand(t)) + reflected)

    coarse = np.arange(0.0, 60.0, 0.25)
    levels = log_integrand(coarse)
    peak = int(np.argmax(levels))
    beyond = np.nonzero(levels[peak:] < levels[peak] - DECADES_BELOW_PEAK)[0]
    upper = coarse[peak + beyond[0]] if beyond.size else coarse[-1]

    result = integrate_smooth_even(integrand, upper, tol=1e-14)
    return result.value


def _j_series(nu: float, z: float) -> float:
    """Power series of J_nu(z) for small ``z``."""
    half = z / 2
    term = half**nu * _rgamma(nu + 1)
    total = term

    for k in range(1, 40):
        term *= -(half**2) / (k * (k + nu))
        total += term

        if abs(term) <= 1e-17 * abs(total):
            break

    return total


def _gamma(x: float) -> float:
    """Lanczos approximation of Gamma for any real non-pole argument."""
    if x < 0.5:
        if x == floor(x):
            raise DomainError(f"Gamma has a pole at {x}")

        return pi / (sin(pi * x) * _gamma(1 - x))

    x -= 1
    t = x + LANCZOS_G + 0.5
    series = LANCZOS_COEFFICIENTS[0]

    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], 1):
        series += coefficient / (x + i)

    try:
        return sqrt(2 * pi) * exp((x + 0.5) * log(t) - t) * series
    except OverflowError:
        return float("inf")


def _rgamma(x: float) -> float:
    """Reciprocal Gamma function, zero at the poles."""
    if x <= 0 and x == floor(x):
        return 0.0

    return 1.0 / _gamma(x)


def _hypergeometric_series(a: float, b: float, c: float, x: float) -> float:
    """Direct summation of the hypergeometric series."""
    term, total = 1.0, 1.0

    for n in range(SERIES_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term

        if term == 0.0 or (n > 2 and abs(term) <= 1e-17 * abs(total)):
            return total

    if not isfinite(total):
        raise DivergenceError(f"2F1({a}, {b}; {c}; {x}) series diverged.")

    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {x}) series did not converge in {SERIES_TERMS} terms.",
        best=total,
    )
