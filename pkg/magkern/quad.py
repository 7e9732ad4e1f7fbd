"""Module for adaptive integration on the half line and on rectangles.

Every integral representation used by the package has the shape
``int_0^inf dt t^a g(t)`` with an endpoint power ``-1 < a <= 0`` and
either exponential, algebraic, or oscillating-and-decaying tails.
This module integrates such integrands in three steps:

- a power substitution ``t = u**(1 / (1 + a))`` removes the endpoint power,
- the half line is cut where the declared envelope falls below
  ``ENVELOPE_FLOOR`` (exponential decay) or split into a finite part and
  a QUADPACK tail (algebraic decay) or into panels between consecutive
  zeros whose partial sums are accelerated (oscillating decay),
- each panel is integrated by ``scipy.integrate.quad``.

Panels are always summed in the same order so that results are
independent of how they were computed.

"""
__all__ = [
    "Decay",
    "IntegrandSpec",
    "QuadratureResult",
    "integrate_finite2d",
    "integrate_interval",
    "integrate_rect2d",
    "integrate_semiaxis",
    "integrate_smooth_even",
    "wynn_epsilon",
]


# standard library
from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from math import inf, isfinite, log, pi
from typing import Callable, List, Optional, Sequence, Tuple


# dependencies
import numpy as np
from scipy.integrate import quad
from .errors import ConvergenceError, DomainError
from .typing import Integrand, Integrand2D, Number


# constants
ENVELOPE_FLOOR: float = 1e-18
EVALUATION_BUDGET: int = 1_000_000
MIN_EPSREL: float = 2e-14
PANEL_DECADES: int = 10
PANEL_LIMIT: int = 200
OSCILLATION_PANELS: int = 2000
OSCILLATION_MIN_PANELS: int = 8
CUTOFF_STEPS: int = 400


# module logger
logger = getLogger(__name__)


class Decay(str, Enum):
    """Kind of decay of an integrand at infinity."""

    EXPONENTIAL = "exponential"
    ALGEBRAIC = "algebraic"
    OSCILLATORY = "oscillatory"


@dataclass(frozen=True)
class QuadratureResult:
    """Value, error estimate, and evaluation count of an integration."""

    value: Number
    error_estimate: float
    evaluations: int

    def __post_init__(self) -> None:
        if not self.error_estimate >= 0:
            raise ValueError(f"Error estimate must be >= 0: {self.error_estimate}")

        if self.evaluations <= 0:
            raise ValueError(f"Evaluations must be > 0: {self.evaluations}")


@dataclass(frozen=True)
class IntegrandSpec:
    """Declared behaviour of an integrand on the half line.

    Args:
        exponent: Power of ``t`` as ``t -> 0``. Must be in ``(-1, 0]``.
        decay: Kind of decay at infinity.
        rate: Rate of exponential decay (``exp(-rate * t)``).
        power: Power of algebraic decay (``t**-power``).
        period: Spacing of sign changes of an oscillating integrand.
            It is used when ``zeros`` is not given.
        zeros: Function returning the k-th positive zero (k >= 1)
            of an oscillating integrand.
        cutoff: Explicit truncation point of an exponentially
            decaying integrand. It overrides ``rate`` and ``envelope``.
        envelope: Envelope of an exponentially decaying integrand.
            The half line is cut where it falls below ``ENVELOPE_FLOOR``
            times its running peak.
        breakpoints: Points of the original variable where the
            integrand changes scale (e.g. a Gaussian width).

    """

    exponent: float = 0.0
    decay: Decay = Decay.EXPONENTIAL
    rate: float = 1.0
    power: float = 2.0
    period: float = pi
    zeros: Optional[Callable[[int], float]] = None
    cutoff: Optional[float] = None
    envelope: Optional[Callable[[float], float]] = None
    breakpoints: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not -1.0 < self.exponent <= 0.0:
            raise DomainError(f"Endpoint exponent must be in (-1, 0]: {self.exponent}")

        if self.rate <= 0:
            raise DomainError(f"Decay rate must be positive: {self.rate}")

        if self.decay == Decay.ALGEBRAIC and self.power <= 1:
            raise DomainError(f"Algebraic decay must be faster than 1/t: {self.power}")

        if self.period <= 0:
            raise DomainError(f"Oscillation period must be positive: {self.period}")

    @property
    def substitution_power(self) -> float:
        """Power ``p`` of the substitution ``t = u**p``."""
        return 1.0 / (1.0 + self.exponent)

    def zero(self, k: int) -> float:
        """Return the k-th positive zero of an oscillating integrand."""
        if self.zeros is not None:
            return self.zeros(k)

        return k * self.period


# main functions
def integrate_semiaxis(
    f: Integrand,
    spec: IntegrandSpec = IntegrandSpec(),
    tol: float = 1e-10,
    tol_abs: float = 0.0,
    complex_func: bool = False,
) -> QuadratureResult:
    """Integrate a function on the half line ``(0, inf)``.

    Args:
        f: Integrand. It must be finite on ``(0, inf)`` and consistent
            with ``spec``; it is never evaluated at ``t = 0``.
        spec: Declared endpoint power and decay of the integrand.
        tol: Relative tolerance.
        tol_abs: Absolute tolerance.
        complex_func: If True, real and imaginary parts are integrated
            separately and a complex value is returned.

    Returns:
        Result of the integration.

    Raises:
        ConvergenceError: If the tolerance is not reached within
            ``EVALUATION_BUDGET`` evaluations. The best estimate is
            attached as ``best``.

    """
    if complex_func:
        return _complex(integrate_semiaxis, f, spec, tol, tol_abs)

    tally = _Tally()
    p = spec.substitution_power
    g = _substituted(f, p)

    if spec.decay == Decay.OSCILLATORY:
        return _oscillatory(f, g, spec, tol, tol_abs, tally)

    if spec.decay == Decay.EXPONENTIAL:
        t_cut = _cutoff(spec)
        edges = _edges(t_cut, spec.breakpoints, p)
        logger.debug("semi-axis cut at t=%g with %d panels", t_cut, len(edges) - 1)
        tally.panels(g, edges, tol, tol_abs)
    else:
        t_cut = 1e2 * max((1.0,) + tuple(spec.breakpoints))
        edges = _edges(t_cut, spec.breakpoints, p)
        tally.panels(g, edges + [inf], tol, tol_abs)

    return tally.result(tol, tol_abs)


def integrate_rect2d(
    f: Integrand2D,
    spec_x: IntegrandSpec = IntegrandSpec(),
    spec_y: IntegrandSpec = IntegrandSpec(),
    tol: float = 1e-8,
    complex_func: bool = False,
) -> QuadratureResult:
    """Integrate a function on the quadrant ``(0, inf)**2``.

    The integral is computed iteratively by ``integrate_semiaxis``;
    the inner integration over ``y`` uses a tenth of ``tol``.
    Inner error estimates and evaluations enter the combined result
    and the evaluation budget applies to their total.

    Args:
        f: Integrand ``f(x, y)``.
        spec_x: Declared behaviour along the outer axis.
        spec_y: Declared behaviour along the inner axis.
        tol: Relative tolerance of the combined result.
        complex_func: If True, a complex value is returned.

    Returns:
        Result of the integration.

    Raises:
        ConvergenceError: If an inner or the outer integration fails,
            or if the combined error is out of tolerance.

    """
    if complex_func:
        return _complex2d(integrate_rect2d, f, spec_x, spec_y, tol)

    nested = _Nested(tol)
    width = _cutoff(spec_x) if spec_x.decay == Decay.EXPONENTIAL else inf

    def outer(x: float) -> float:
        return nested.inner(integrate_semiaxis, lambda y: f(x, y), spec_y)

    return nested.result(integrate_semiaxis(outer, spec_x, tol), width)


def integrate_finite2d(
    f: Integrand2D,
    domain: Tuple[float, float, float, float],
    tol: float = 1e-8,
    complex_func: bool = False,
) -> QuadratureResult:
    """Integrate a function on a finite rectangle.

    Args:
        f: Integrand ``f(x, y)``.
        domain: Rectangle as ``(x_min, x_max, y_min, y_max)``.
        tol: Relative tolerance of the combined result.
        complex_func: If True, a complex value is returned.

    Returns:
        Result of the integration.

    Raises:
        ConvergenceError: As ``integrate_rect2d``.

    """
    x0, x1, y0, y1 = domain

    if not (x0 < x1 and y0 < y1):
        raise DomainError(f"Invalid rectangle: {domain!r}")

    if complex_func:
        return _complex2d(integrate_finite2d, f, domain, tol)

    nested = _Nested(tol)

    def outer(x: float) -> float:
        return nested.inner(integrate_interval, lambda y: f(x, y), y0, y1)

    return nested.result(integrate_interval(outer, x0, x1, tol), x1 - x0)


def integrate_interval(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-10,
    tol_abs: float = 0.0,
    complex_func: bool = False,
) -> QuadratureResult:
    """Integrate a smooth function on a finite interval ``[a, b]``."""
    if not a < b:
        raise DomainError(f"Invalid interval: [{a}, {b}]")

    if complex_func:
        return _complex(
            lambda g, *args: integrate_interval(g, a, b, *args), f, tol, tol_abs
        )

    tally = _Tally()
    tally.panels(f, [a, b], tol, tol_abs, limit=5 * PANEL_LIMIT)
    return tally.result(tol, tol_abs)


def integrate_smooth_even(
    f: Callable[[np.ndarray], np.ndarray],
    upper: float,
    tol: float = 1e-14,
    step: float = 0.5,
) -> QuadratureResult:
    """Integrate an even analytic function on ``(0, inf)`` by the trapezoid rule.

    For integrands analytic in a strip around the real axis the
    trapezoid rule converges exponentially; the step is halved until
    two successive estimates agree within ``tol``.

    Args:
        f: Vectorized integrand. It must be negligible beyond ``upper``.
        upper: Point beyond which the integrand is negligible.
        tol: Relative tolerance.
        step: Initial step of the rule.

    Returns:
        Result of the integration.

    """
    h = step
    t = np.arange(0.0, upper + h, h)
    values = f(t)
    total = values.sum() - 0.5 * values[0]
    estimate = h * total
    evaluations = t.size

    while evaluations < EVALUATION_BUDGET:
        midpoints = np.arange(0.5 * h, upper + h, h)
        total += f(midpoints).sum()
        evaluations += midpoints.size
        h /= 2

        previous, estimate = estimate, h * total
        error = abs(estimate - previous)

        if h <= step / 2 and error <= tol * abs(estimate):
            return QuadratureResult(estimate, error, evaluations)

    raise ConvergenceError(
        "Trapezoid rule did not converge within the evaluation budget.",
        best=QuadratureResult(estimate, abs(estimate - previous), evaluations),
        recoverable=False,
    )


def wynn_epsilon(partial_sums: Sequence[float]) -> float:
    """Extrapolate the limit of a sequence by Wynn's epsilon algorithm.

    Args:
        partial_sums: Partial sums of a (typically alternating) series.

    Returns:
        Estimate of the limit from the highest even column.

    """
    current = [float(s) for s in partial_sums]

    if len(current) < 3:
        return current[-1]

    previous = [0.0] * (len(current) + 1)
    best = current[-1]
    column = 0

    while len(current) > 1:
        following = []

        for j in range(len(current) - 1):
            diff = current[j + 1] - current[j]

            if diff == 0.0:
                return current[j + 1] if column % 2 == 0 else best

            following.append(previous[j + 1] + 1.0 / diff)

        previous, current = current, following
        column += 1

        if column % 2 == 0 and current:
            best = current[-1]

    return best


# helper functions
class _Tally:
    """Running sums of panel values, errors, and evaluations."""

    def __init__(self) -> None:
        self.values: List[float] = []
        self.errors: List[float] = []
        self.evaluations = 0

    @property
    def value(self) -> float:
        return float(sum(self.values))

    @property
    def error(self) -> float:
        return float(sum(self.errors))

    def panel(
        self,
        g: Integrand,
        a: float,
        b: float,
        tol: float,
        tol_abs: float,
        limit: int = PANEL_LIMIT,
    ) -> float:
        """Integrate one panel and record the result."""
        out = quad(
            g,
            a,
            b,
            epsabs=tol_abs,
            epsrel=max(tol, MIN_EPSREL),
            limit=limit,
            full_output=1,
        )
        value, error, info = out[:3]

        if len(out) > 3:
            logger.debug("panel [%g, %g]: %s", a, b, out[3])

        self.values.append(value)
        self.errors.append(error)
        self.evaluations += info["neval"]

        if self.evaluations > EVALUATION_BUDGET:
            raise ConvergenceError(
                f"Evaluation budget of {EVALUATION_BUDGET} exceeded.",
                best=self.result_unchecked(),
                recoverable=False,
            )

        return value

    def panels(
        self,
        g: Integrand,
        edges: Sequence[float],
        tol: float,
        tol_abs: float,
        limit: int = PANEL_LIMIT,
    ) -> None:
        """Integrate consecutive panels between edges."""
        for a, b in zip(edges[:-1], edges[1:]):
            self.panel(g, a, b, tol, tol_abs, limit)

    def result_unchecked(
        self,
        extra_error: float = 0.0,
        value: Optional[float] = None,
    ) -> QuadratureResult:
        value = self.value if value is None else value
        error = self.error + extra_error
        return QuadratureResult(value, error, max(self.evaluations, 1))

    def result(
        self,
        tol: float,
        tol_abs: float,
        extra_error: float = 0.0,
        value: Optional[float] = None,
    ) -> QuadratureResult:
        """Return the result or raise if its error is out of tolerance."""
        result = self.result_unchecked(extra_error, value)
        allowed = max(10 * tol * abs(result.value), tol_abs)

        if not isfinite(result.value) or result.error_estimate > allowed:
            raise ConvergenceError(
                f"Integration did not converge: error {result.error_estimate:.3g} "
                f"exceeds {allowed:.3g}.",
                best=result,
            )

        return result


class _Nested:
    """Inner integrals of an iterated two-dimensional integration."""

    def __init__(self, tol: float) -> None:
        self.outer_tol = tol
        self.tol = tol / 10
        self.calls = 0
        self.evaluations = 0
        self.ratio = 0.0
        self.missed = 0.0

    def inner(self, integrator: Callable, g: Integrand, *args) -> float:
        """Integrate along the inner axis and record the result.

        An inner integral missing only its relative tolerance (a value
        vanishing by symmetry) is kept with its absolute error.

        """
        try:
            result = integrator(g, *args, self.tol)
        except ConvergenceError as error:
            if not error.recoverable or not isinstance(error.best, QuadratureResult):
                raise

            result = error.best
            self.missed = max(self.missed, result.error_estimate)
        else:
            if result.value != 0:
                ratio = result.error_estimate / abs(result.value)
                self.ratio = max(self.ratio, ratio)

        self.calls += 1
        self.evaluations += result.evaluations

        if self.calls + self.evaluations > EVALUATION_BUDGET:
            raise ConvergenceError(
                f"Evaluation budget of {EVALUATION_BUDGET} exceeded.",
                recoverable=False,
            )

        return result.value

    def result(self, outer: QuadratureResult, width: float) -> QuadratureResult:
        """Combine the outer result with the inner errors and evaluations."""
        value = outer.value
        error = outer.error_estimate + self.ratio * abs(value)

        if self.missed > 0:
            error += self.missed * width

        result = QuadratureResult(value, error, outer.evaluations + self.evaluations)

        if not isfinite(value) or not error <= 10 * self.outer_tol * abs(value):
            raise ConvergenceError(
                f"Iterated integration did not converge: error {error:.3g}.",
                best=result,
            )

        return result


def _substituted(f: Integrand, p: float) -> Integrand:
    """Return ``g(u) = p u**(p-1) f(u**p)`` for the substitution ``t = u**p``."""
    if p == 1.0:
        return f

    def g(u: float) -> float:
        return p * u ** (p - 1.0) * f(u**p)

    return g


def _cutoff(spec: IntegrandSpec) -> float:
    """Return the truncation point of an exponentially decaying integrand."""
    if spec.cutoff is not None:
        return spec.cutoff

    t_cut = log(1.0 / ENVELOPE_FLOOR) / spec.rate

    if spec.envelope is None:
        return t_cut

    t, peak = 1.0 / spec.rate, 0.0

    for _ in range(CUTOFF_STEPS):
        level = spec.envelope(t)
        peak = max(peak, level)

        if level < ENVELOPE_FLOOR * peak and t >= t_cut:
            return t

        t *= 1.25

    return t


def _edges(t_cut: float, breakpoints: Sequence[float], p: float) -> List[float]:
    """Return panel edges in the substituted variable ``u``."""
    u_cut = t_cut ** (1.0 / p)
    edges = {0.0, u_cut}
    edges.update(u_cut * 10.0**-k for k in range(1, PANEL_DECADES + 1))
    edges.update(t ** (1.0 / p) for t in breakpoints if 0.0 < t < t_cut)
    return sorted(edges)


def _oscillatory(
    f: Integrand,
    g: Integrand,
    spec: IntegrandSpec,
    tol: float,
    tol_abs: float,
    tally: _Tally,
) -> QuadratureResult:
    """Integrate an oscillating integrand panel by panel between zeros."""
    p = spec.substitution_power
    first = spec.zero(1)
    partial_sums = [tally.panel(g, 0.0, first ** (1.0 / p), tol, tol_abs)]
    estimates: List[float] = []
    span = 2 * OSCILLATION_MIN_PANELS + 1

    for k in range(1, OSCILLATION_PANELS):
        panel = tally.panel(f, spec.zero(k), spec.zero(k + 1), tol, tol_abs)
        partial_sums.append(partial_sums[-1] + panel)

        if k < OSCILLATION_MIN_PANELS:
            continue

        total = partial_sums[-1]

        if abs(panel) <= 1e-3 * tol * abs(total):
            logger.debug("oscillatory sum converged directly after %d panels", k)
            return tally.result(tol, tol_abs, abs(panel), total)

        estimates.append(wynn_epsilon(partial_sums[-span:]))

        if len(estimates) >= 3:
            last, previous, older = estimates[-1], estimates[-2], estimates[-3]
            change = max(abs(last - previous), abs(previous - older))

            if change <= tol * abs(estimates[-1]):
                logger.debug("oscillatory sum extrapolated after %d panels", k)
                return tally.result(tol, tol_abs, change, estimates[-1])

    raise ConvergenceError(
        f"Oscillatory integral did not converge within {OSCILLATION_PANELS} panels.",
        best=tally.result_unchecked(value=estimates[-1] if estimates else None),
        partial_sums=partial_sums,
        recoverable=False,
    )


def _complex(integrator: Callable, f: Integrand, *args) -> QuadratureResult:
    """Integrate real and imaginary parts of a complex integrand."""
    re = _relaxed(integrator, lambda t: complex(f(t)).real, *args)
    im = _relaxed(integrator, lambda t: complex(f(t)).imag, *args)
    return _combined(re, im, args[-2])


def _complex2d(integrator: Callable, f: Integrand2D, *args) -> QuadratureResult:
    """Integrate real and imaginary parts of a complex 2D integrand."""
    re = _relaxed(integrator, lambda x, y: complex(f(x, y)).real, *args)
    im = _relaxed(integrator, lambda x, y: complex(f(x, y)).imag, *args)
    return _combined(re, im, args[-1])


def _relaxed(integrator: Callable, g: Callable, *args) -> QuadratureResult:
    """Integrate one part and keep the best estimate if it misses its tolerance.

    A part that vanishes by symmetry cannot reach a relative tolerance
    on its own; the tolerance is enforced on the complex value instead.

    """
    try:
        return integrator(g, *args)
    except ConvergenceError as error:
        if error.recoverable and isinstance(error.best, QuadratureResult):
            return error.best

        raise


def _combined(
    re: QuadratureResult,
    im: QuadratureResult,
    tol: float,
) -> QuadratureResult:
    """Combine real and imaginary results and check the complex tolerance."""
    value = complex(re.value, im.value)
    error = float(np.hypot(re.error_estimate, im.error_estimate))
    result = QuadratureResult(value, error, re.evaluations + im.evaluations)

    if error > 10 * tol * abs(value):
        raise ConvergenceError(
            f"Complex integration did not converge: error {error:.3g}.",
            best=result,
        )

    return result
