"""Module for grid certification of kernel inequalities and integral identities.

Each ``certify_*`` function evaluates both sides of an inequality
``|lhs| <= rhs`` on every point of a grid and returns a
``BoundCertificate`` with the worst ratio ``|lhs| / rhs``, the point
where it is attained, and every violation. Identities are certified
as inequalities ``|quadrature - closed form| <= tol * |closed form|``.

Constants the analysis leaves symbolic are reported as empirical
suprema over the grid (``empirical_constant``), never asserted.

- certify_hyperbolic: Inequalities of hyperbolic functions.
- certify_diamagnetic: Domination of magnetic heat kernels.
- certify_ea_envelope: Closed-form envelope of the kernel of E_A.
- certify_semigroup: Semigroup identity of the heat kernels.
- certify_free_limit: Kernel of E_A without field.
- certify_singularity: Short-distance law of the kernel of E_A.
- certify_decay: Exponential decay of the closed-form envelopes.
- certify_oscillatory: Closed form of the oscillatory integrals.
- certify_coupling: Scalar bounds of the spectral constants.
- verify_identities: Integral identities behind the envelopes.
- coupling_constants: Closed-form spectral constants.
- default_suite: Every certificate with its default grid.

"""
__all__ = [
    "BoundCertificate",
    "CouplingConstants",
    "Violation",
    "certify_coupling",
    "certify_decay",
    "certify_diamagnetic",
    "certify_ea_envelope",
    "certify_free_limit",
    "certify_hyperbolic",
    "certify_oscillatory",
    "certify_semigroup",
    "certify_singularity",
    "coupling_constants",
    "default_suite",
    "verify_identities",
]


# standard library
from cmath import exp as cexp
from dataclasses import dataclass, field
from logging import getLogger
from math import cos, exp, hypot, inf, pi, sin, sqrt
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple


# dependencies
import numpy as np
from .ekernel import (
    Displacement,
    OmegaVector,
    ae_bound_integral,
    ea_bound_integral,
    ea_kernel,
    ea_kernel_bound,
    exp_tea_bound,
    exp_tea_bound_integral,
    exp_tea_derivative_bound,
    exp_tea_derivative_integral,
    free_relativistic_kernel,
    sk_closed_form,
    sk_quadrature,
    u0_offdiag_bound,
    u0_offdiag_integral,
    u0_tau_bound,
    u0_tau_integral,
)
from .errors import ConvergenceError, DomainError
from .grids import Axis, GridSpec, Spacing
from .mehler import (
    DEFAULT_COUPLING,
    FieldConfig,
    ea2_heat_kernel,
    ea2_kernel_modulus,
    free_kernel_array,
    hs_kernel_modulus,
    longitudinal_kernel,
    mehler_hs_kernel,
    prefactor_bound_array,
    transverse_parameters,
)
from .quad import (
    IntegrandSpec,
    integrate_finite2d,
    integrate_interval,
    integrate_semiaxis,
)
from .specfun import bessel_j, bessel_k, gamma_fn
from .utils import parallel_map


# constants
CLOSED_FORM_SLACK: float = 1e-12
QUADRATURE_SLACK: float = 1e-6
ENVELOPE_DIRECTION = (1 / sqrt(3), 1 / sqrt(3), 1 / sqrt(3))
GAUSSIAN_TAIL: float = 41.45
SINGULARITY_TOLERANCE: float = 0.03
DECAY_FACTOR: float = 10.0
AE_DECAY_R = (5.0, 10.0, 20.0)


# module logger
logger = getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """Grid point where an inequality fails, with both sides."""

    point: Dict[str, Any]
    lhs: float
    rhs: float

    def to_dict(self) -> Dict[str, Any]:
        return {"point": self.point, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class BoundCertificate:
    """Result of certifying an inequality on a grid.

    Args:
        name: Identifier of the certificate.
        grid: Grid the inequality was evaluated on.
        worst_ratio: Maximum of ``|lhs| / rhs`` over the grid.
        worst_point: Coordinates where the maximum is attained.
        slack: Tolerance of the pass criterion.
        empirical_constant: Empirical supremum of a symbolic constant.
        violations: Points with ``|lhs| / rhs > 1 + slack``.
        incomplete: Whether some points could not be evaluated.
        failed_points: Points that could not be evaluated.
        details: Per-check or per-slice results.

    """

    name: str
    grid: GridSpec
    worst_ratio: float
    worst_point: Dict[str, Any]
    slack: float
    empirical_constant: Optional[float] = None
    violations: List[Violation] = field(default_factory=list)
    incomplete: bool = False
    failed_points: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Whether the worst ratio is within ``1 + slack``."""
        return self.worst_ratio <= 1 + self.slack

    @property
    def ok(self) -> bool:
        """Whether the certificate passed on every grid point."""
        return self.passed and not self.incomplete

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready representation of the certificate."""
        return {
            "name": self.name,
            "grid": self.grid.describe(),
            "worst_ratio": self.worst_ratio,
            "worst_point": self.worst_point,
            "pass": self.passed,
            "slack": self.slack,
            "empirical_constant": self.empirical_constant,
            "violations": [v.to_dict() for v in self.violations],
            "incomplete": self.incomplete,
            "failed_points": self.failed_points,
            "details": self.details,
        }


@dataclass(frozen=True)
class CouplingConstants:
    """Closed-form spectral constants of a field configuration.

    Args:
        gamma: Coulomb coupling ``Z e**2``.
        gamma_c: Critical coupling ``2/pi - e**2``.
        c1_of_b0: ``pi (gamma + e**2) sqrt(eB0)``.
        delta_m_lower: Lower bound ``m**2 / (m**2 + eB0)`` of delta_m.
        form_bound: ``(gamma + e**2) pi / 2``, smaller than one iff subcritical.
        supercritical: Whether ``gamma >= gamma_c``.

    """

    gamma: float
    gamma_c: float
    c1_of_b0: float
    delta_m_lower: float
    form_bound: float
    supercritical: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": self.gamma,
            "gamma_c": self.gamma_c,
            "c1_of_b0": self.c1_of_b0,
            "delta_m_lower": self.delta_m_lower,
            "form_bound": self.form_bound,
            "supercritical": self.supercritical,
        }


# main functions
def coupling_constants(cfg: FieldConfig, gamma: float) -> CouplingConstants:
    """Closed-form spectral constants.

    Args:
        cfg: Field configuration.
        gamma: Coulomb coupling ``Z e**2`` (>= 0).

    Returns:
        Constants of the configuration.

    Raises:
        DomainError: If ``gamma < 0``.

    """
    if not gamma >= 0:
        raise DomainError(f"Coulomb coupling must be nonnegative: {gamma}")

    e2, eb0, m = cfg.e2, cfg.eb0, cfg.m
    gamma_c = 2 / pi - e2

    if eb0 == 0:
        delta = 1.0
    elif m == 0:
        logger.warning("delta_m lower bound degenerates to 0 at m = 0 and B0 > 0.")
        delta = 0.0
    else:
        delta = m**2 / (m**2 + eb0)

    return CouplingConstants(
        gamma=gamma,
        gamma_c=gamma_c,
        c1_of_b0=pi * (gamma + e2) * sqrt(eb0),
        delta_m_lower=delta,
        form_bound=(gamma + e2) * pi / 2,
        supercritical=gamma >= gamma_c,
    )


def certify_hyperbolic(
    grid: Optional[GridSpec] = None,
    slack: float = CLOSED_FORM_SLACK,
) -> BoundCertificate:
    """Certify the inequalities of hyperbolic functions for ``z > 0``.

    The inequalities are ``z coth z <= 1 + z``, ``sinh z >= z``,
    ``z coth z >= 1``, and ``z exp(z) / sinh z <= 1 + 2z``.

    Args:
        grid: Grid with a ``z`` axis. Default is 10**4 log points in [1e-6, 50].
        slack: Tolerance of the pass criterion.

    Returns:
        Certificate of the four inequalities.

    """
    if grid is None:
        grid = GridSpec.of(Axis("z", 1e-6, 50.0, 10_000, Spacing.LOG))

    z = grid.meshgrid()["z"]

    if not np.all(z > 0):
        raise DomainError("Hyperbolic inequalities require z > 0.")

    x_coth = z / np.tanh(z)
    checks = {
        "coth_upper": (x_coth, 1 + z),
        "sinh_lower": (z, np.sinh(z)),
        "coth_lower": (np.ones_like(z), x_coth),
        "landau_upper": (z * np.exp(z) / np.sinh(z), 1 + 2 * z),
    }
    return _certificate_from_checks("hyperbolic", grid, checks, slack)


def certify_diamagnetic(
    grid: Optional[GridSpec] = None,
    m: float = 0.0,
    slack: float = CLOSED_FORM_SLACK,
) -> BoundCertificate:
    """Certify the domination of the magnetic heat kernels.

    Both ``|exp(-t H_s)| <= exp(-t p**2)`` and
    ``|exp(-t E_A**2)| <= prefactor_bound`` (for each spin) are checked.
    Directions of the displacements are drawn with the grid seed.

    Args:
        grid: Grid with axes ``t``, ``r``, ``eb0``, ``spin``.
            Missing axes are taken from the default grid
            (t in [0.01, 10] log 40, r in [0, 10] lin 25,
            eb0 in [0, 100] lin 5, spin in {+1, -1}).
        m: Mass of the spin-resolved kernel.
        slack: Tolerance of the pass criterion.

    Returns:
        Certificate of both inequalities.

    """
    default = GridSpec.of(
        Axis("t", 0.01, 10.0, 40, Spacing.LOG),
        Axis("r", 0.0, 10.0, 25),
        Axis("eb0", 0.0, 100.0, 5),
        spin=(1, -1),
    )
    grid = _with_defaults(grid, default)
    mesh = grid.meshgrid()
    t, r, eb0, s = mesh["t"], mesh["r"], mesh["eb0"], mesh["spin"]

    directions = grid.rng().normal(size=t.shape + (3,))
    directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
    rho = r * np.hypot(directions[..., 0], directions[..., 1])
    z3 = r * np.abs(directions[..., 2])

    checks = {
        "free_domination": (
            hs_kernel_modulus(eb0, t, rho, z3),
            free_kernel_array(t, r),
        ),
        "prefactor_domination": (
            ea2_kernel_modulus(eb0, m, s, t, rho, z3),
            prefactor_bound_array(eb0, m, t, r),
        ),
    }
    extra = {
        "dir1": directions[..., 0],
        "dir2": directions[..., 1],
        "dir3": directions[..., 2],
    }
    return _certificate_from_checks("diamagnetic", grid, checks, slack, extra)


def certify_ea_envelope(
    grid: Optional[GridSpec] = None,
    tol: float = 1e-8,
    direction: Sequence[float] = ENVELOPE_DIRECTION,
    jobs: int = 1,
) -> BoundCertificate:
    """Certify the closed-form envelope of the kernel of E_A.

    The empirical constant is ``sup |E_A| r**4 exp((m - eps) r)``
    with ``eps = m / 2``; its value per (m, eB0) slice, its trend in
    eB0, and a quadratic fit in eB0 are reported in ``details``.

    Args:
        grid: Grid with axes ``r``, ``m``, ``eb0``, ``spin``.
            Missing axes are taken from the default grid
            (r in [0.05, 10] log 60, m in {0.5, 1, 2},
            eb0 in {0, 0.5, 1, 5}, spin in {+1, -1}).
        tol: Relative tolerance of each kernel evaluation.
        direction: Direction of the displacements.
        jobs: Number of worker processes.

    Returns:
        Certificate of the envelope.

    Raises:
        DomainError: If any grid point has ``m <= 0``.

    """
    default = GridSpec.of(
        Axis("r", 0.05, 10.0, 60, Spacing.LOG),
        m=(0.5, 1.0, 2.0),
        eb0=(0.0, 0.5, 1.0, 5.0),
        spin=(1, -1),
    )
    grid = _with_defaults(grid, default)

    if not np.all(grid.coords()["m"] > 0):
        raise DomainError("Envelope certification requires m > 0 on every grid point.")

    points = list(grid.points())
    tasks = [
        (p["m"], p["eb0"], int(p["spin"]), p["r"], tuple(direction), tol)
        for p in points
    ]
    results = parallel_map(_ea_envelope_point, tasks, jobs)

    lhs, rhs, errors, failed = [], [], [], []

    for point, (value, error, bound) in zip(points, results):
        if value is None:
            failed.append(point)
            lhs.append(np.nan)
        else:
            lhs.append(value)
            errors.append(error / bound)

        rhs.append(bound)

    lhs, rhs = np.array(lhs), np.array(rhs)
    slack = QUADRATURE_SLACK * (1 + max(errors, default=0.0))
    certificate = _certificate("ea_envelope", grid, points, lhs, rhs, slack, failed)

    r, m = np.array([p["r"] for p in points]), np.array([p["m"] for p in points])
    weighted = np.abs(lhs) * r**4 * np.exp(0.5 * m * r)
    certificate.empirical_constant = float(np.nanmax(weighted))
    certificate.details = _envelope_trend(points, weighted)
    return certificate


def certify_semigroup(
    grid: Optional[GridSpec] = None,
    m: float = 1.0,
    tol: float = 1e-6,
) -> BoundCertificate:
    """Certify the semigroup identity of the heat kernels.

    The convolution ``int K_t(x, y) K_s(y, x') dy`` is compared with
    ``K_{t+s}(x, x')`` for the Mehler kernel (``channel = 0``) and the
    spin-resolved kernels (``channel = +1, -1``). The convolution along
    the field is done analytically and the transverse one numerically.
    Point pairs are the origin and one pair drawn with the grid seed.
    Hermitian symmetry at the same pairs is reported in ``details``.

    Args:
        grid: Grid with axes ``t``, ``s``, ``eb0``, ``channel``.
            Missing axes are taken from the default grid
            (t in {0.5, 1}, s in {0.5, 2}, eb0 in {0, 1}, channel in {0, 1, -1}).
        m: Mass of the spin-resolved kernels.
        tol: Relative tolerance of the identity.

    Returns:
        Certificate of the identity.

    """
    default = GridSpec.of(
        t=(0.5, 1.0), s=(0.5, 2.0), eb0=(0.0, 1.0), channel=(0, 1, -1)
    )
    grid = _with_defaults(grid, default)
    pair = grid.rng().uniform(-1.0, 1.0, size=(2, 3))
    pairs = [(np.zeros(3), np.zeros(3)), (pair[0], pair[1])]

    cache: Dict[Tuple[float, float, float, int], complex] = {}
    points, lhs, rhs, failed = [], [], [], []
    hermitian = 0.0

    for point in grid.points():
        t, s, eb0, channel = point["t"], point["s"], point["eb0"], int(point["channel"])
        cfg = FieldConfig.from_eb0(eb0, m)

        for index, (x, xp) in enumerate(pairs):
            key = (t, s, eb0, index)
            labelled = dict(point, pair=float(index))
            points.append(labelled)

            try:
                if key not in cache:
                    cache[key] = _transverse_convolution(cfg, t, s, x, xp, tol / 100)
            except ConvergenceError:
                failed.append(labelled)
                lhs.append(np.nan)
                rhs.append(1.0)
                continue

            convolution = cache[key] * longitudinal_kernel(t + s, xp[2] - x[2])

            if channel == 0:
                exact = mehler_hs_kernel(cfg, t + s, x, xp)
            else:
                spin = _spin_factor(cfg, channel, t) * _spin_factor(cfg, channel, s)
                convolution *= spin
                exact = ea2_heat_kernel(cfg, channel, t + s, x, xp)

            lhs.append(abs(convolution - exact.value))
            rhs.append(tol * abs(exact.value))

            if channel == 0:
                reverse = mehler_hs_kernel(cfg, t, xp, x).value.conjugate()
                forward = mehler_hs_kernel(cfg, t, x, xp).value
                hermitian = max(hermitian, abs(forward - reverse))

    certificate = _certificate(
        "semigroup", grid, points, np.array(lhs), np.array(rhs), 0.0, failed
    )
    certificate.details = {
        "hermitian_max_error": hermitian,
        "pairs": [[a.tolist() for a in p] for p in pairs],
    }
    return certificate


def certify_free_limit(
    grid: Optional[GridSpec] = None,
    m: float = 1.0,
    tol: float = 1e-6,
) -> BoundCertificate:
    """Certify the kernel of E_A without field against the kernel of sqrt(p**2 + m**2).

    Args:
        grid: Grid with axes ``r`` and ``spin``. Default is r in {0.5, 1, 2}.
        m: Mass (> 0).
        tol: Relative tolerance of the agreement.

    """
    grid = _with_defaults(grid, GridSpec.of(r=(0.5, 1.0, 2.0), spin=(1, -1)))
    cfg = FieldConfig.from_eb0(0.0, m)
    points, lhs, rhs, failed = [], [], [], []

    for point in grid.points():
        points.append(point)
        exact = free_relativistic_kernel(m, point["r"])

        try:
            d = Displacement.along(point["r"])
            value = ea_kernel(cfg, int(point["spin"]), d, tol / 100).value
        except ConvergenceError:
            failed.append(point)
            value = np.nan

        lhs.append(abs(value - exact))
        rhs.append(tol * abs(exact))

    return _certificate(
        "free_limit", grid, points, np.array(lhs), np.array(rhs), 0.0, failed
    )


def certify_singularity(
    r: float = 0.05,
    m: float = 1.0,
    eb0: float = 1.0,
    tol: float = SINGULARITY_TOLERANCE,
) -> BoundCertificate:
    """Certify the short-distance law ``r**4 E_A -> -1/pi**2`` for both spins."""
    grid = GridSpec.of(r=(r,), spin=(1, -1))
    cfg = FieldConfig.from_eb0(eb0, m)
    points, lhs = list(grid.points()), []
    d = Displacement.along(r, ENVELOPE_DIRECTION)

    for point in points:
        value = ea_kernel(cfg, int(point["spin"]), d).value
        lhs.append(abs(r**4 * value + 1 / pi**2))

    rhs = np.full(len(points), tol / pi**2)
    certificate = _certificate("singularity", grid, points, np.array(lhs), rhs, 0.0)
    certificate.details = {"limit": -1 / pi**2, "m": m, "eb0": eb0}
    return certificate


def certify_decay(
    grid: Optional[GridSpec] = None,
    factor: float = DECAY_FACTOR,
    ae_r: Sequence[float] = AE_DECAY_R,
) -> BoundCertificate:
    """Certify the exponential decay of the kernel envelopes.

    For the envelope of E_A (power p = 4) and of the Foldy-Wouthuysen
    kernel (p = 3), ``value(r) r**p exp((m - eps) r)`` with ``eps = m / 2``
    must stay below ``factor`` times its value at ``r = 1``.
    The double-integral envelope of A_E (p = 3) is checked the same way
    on ``ae_r`` relative to its first point, for every (m, eB0) of the grid.
    The largest normalized value is reported as the empirical constant.

    Args:
        grid: Grid with axes ``r``, ``m``, ``eb0``. Missing axes are
            taken from the default grid (r in [1, 30] log 30,
            m in {1, 2}, eb0 in {0, 1}).
        factor: Allowed growth relative to the reference point.
        ae_r: Separations of the double-integral envelope. It is
            skipped if empty.

    """
    default = GridSpec.of(
        Axis("r", 1.0, 30.0, 30, Spacing.LOG), m=(1.0, 2.0), eb0=(0.0, 1.0)
    )
    grid = _with_defaults(grid, default)
    envelopes = {
        "ea_kernel_bound": (ea_kernel_bound, 4),
        "u0_offdiag_bound": (u0_offdiag_bound, 3),
    }
    checks = {}

    for name, (bound, power) in envelopes.items():
        lhs, rhs = [], []

        for point in grid.points():
            cfg = FieldConfig.from_eb0(point["eb0"], point["m"])
            # exp(m r) is carried by the scaled envelope
            weighted = bound(cfg, point["r"], scaled=True) * point["r"] ** power
            reference = bound(cfg, 1.0, scaled=True)
            lhs.append(weighted * exp(-0.5 * point["m"] * point["r"]))
            rhs.append(factor * reference * exp(-0.5 * point["m"]))

        checks[name] = (
            np.array(lhs).reshape(grid.shape),
            np.array(rhs).reshape(grid.shape),
        )

    certificate = _certificate_from_checks("decay", grid, checks, 0.0)
    coords = grid.coords()

    if ae_r:
        ae_grid = GridSpec.of(
            r=tuple(map(float, ae_r)),
            m=tuple(map(float, coords["m"])),
            eb0=tuple(map(float, coords["eb0"])),
        )
        _merge(certificate, _ae_decay(ae_grid, factor), "ae_bound_integral")

    certificate.empirical_constant = certificate.worst_ratio * factor
    return certificate


def certify_oscillatory(
    grid: Optional[GridSpec] = None,
    angle: float = 0.7,
    tol: float = 1e-5,
) -> BoundCertificate:
    """Certify the closed form of the oscillatory integrals against quadrature.

    Args:
        grid: Grid with axes ``m``, ``omega``, ``k``. Missing axes are
            taken from the default grid (m in {0, 0.5, 1, 2, 4},
            omega in {0.25, 0.5, 1, 2, 4}, k in {1, 2}).
        angle: Direction of the omega vector in the (1, 2) plane.
        tol: Relative tolerance of the agreement.

    """
    default = GridSpec.of(
        m=(0.0, 0.5, 1.0, 2.0, 4.0),
        omega=(0.25, 0.5, 1.0, 2.0, 4.0),
        k=(1, 2),
    )
    grid = _with_defaults(grid, default)
    points, lhs, rhs, failed = [], [], [], []
    massless = 0.0

    for point in grid.points():
        points.append(point)
        cfg = FieldConfig.from_eb0(0.0, point["m"])
        omega, k = point["omega"], int(point["k"])
        ov = OmegaVector(omega * np.cos(angle), omega * np.sin(angle))
        closed = sk_closed_form(cfg, k, ov)

        try:
            value = sk_quadrature(cfg, k, ov, tol / 1e3).value
        except ConvergenceError:
            failed.append(point)
            value = np.nan

        lhs.append(abs(value - closed))
        rhs.append(tol * abs(closed))

        if point["m"] == 0:
            limit = pi**2 * 1j * ov.component(k) / omega
            massless = max(massless, abs(closed - limit) / abs(limit))

    certificate = _certificate(
        "oscillatory", grid, points, np.array(lhs), np.array(rhs), 0.0, failed
    )
    certificate.details = {"massless_limit_max_error": massless, "angle": angle}
    return certificate


def certify_coupling(
    grid: Optional[GridSpec] = None,
    e2: float = DEFAULT_COUPLING**2,
) -> BoundCertificate:
    """Certify the scalar bounds of the spectral constants.

    Checked are ``0 < delta_m_lower <= 1`` with equality iff ``B0 = 0``
    and ``eB0 / (m**2 + eB0) < 1`` for every sampled ``m > 0``.

    Args:
        grid: Grid with axes ``m`` and ``eb0``. Missing axes are taken
            from the default grid (m in [0.1, 10] log 20,
            eb0 in [0, 100] lin 21).
        e2: Squared coupling.

    """
    default = GridSpec.of(
        Axis("m", 0.1, 10.0, 20, Spacing.LOG), Axis("eb0", 0.0, 100.0, 21)
    )
    grid = _with_defaults(grid, default)
    mesh = grid.meshgrid()
    m, eb0 = mesh["m"], mesh["eb0"]

    if not np.all(m > 0):
        raise DomainError("Coupling certification requires m > 0.")

    e = sqrt(e2)
    delta = np.array(
        [
            coupling_constants(FieldConfig.from_eb0(b, a, e), 0.0).delta_m_lower
            for a, b in zip(m.ravel(), eb0.ravel())
        ]
    ).reshape(m.shape)
    contraction = eb0 / (m**2 + eb0)

    checks = {
        "delta_range": (delta, np.ones_like(delta)),
        "scalar_contraction": (contraction, np.ones_like(contraction)),
    }
    certificate = _certificate_from_checks("coupling", grid, checks, 0.0)
    identity = bool(np.all((delta == 1.0) == (eb0 == 0)))
    strict = bool(np.all(delta > 0) and np.all(contraction < 1))
    certificate.details.update(delta_is_one_iff_zero_field=identity, strict=strict)

    if not (identity and strict):
        certificate.worst_ratio = inf

    return certificate


def verify_identities(tol: float = 1e-8) -> List[BoundCertificate]:
    """Verify the integral identities behind the kernels and envelopes.

    Each identity is checked by quadrature against its closed form
    with relative tolerance ``tol``, except the integral of
    ``xi**-3/2 J_{3/2}(xi)`` which is checked at ``1e-6``.

    Returns:
        One certificate per identity.

    """
    certificates = [
        _verify_laplace(tol),
        _verify_sonine(tol),
        _verify_angular_j1(tol),
        _verify_angular_j32(tol),
        _verify_j32_integral(max(tol, 1e-6)),
        _verify_reduction(
            "ea_bound_reduction",
            GridSpec.of(m=(0.5, 1.0, 2.0), eb0=(0.0, 1.0, 5.0), r=(0.1, 1.0, 5.0)),
            lambda p, q: ea_bound_integral(_cfg(p), p["r"], q).value,
            lambda p: ea_kernel_bound(_cfg(p), p["r"]),
            tol,
        ),
        _verify_reduction(
            "u0_reduction",
            GridSpec.of(m=(0.5, 1.0), eb0=(0.0, 1.0), r=(0.5, 2.0)),
            lambda p, q: u0_offdiag_integral(_cfg(p), p["r"], q).value,
            lambda p: u0_offdiag_bound(_cfg(p), p["r"]),
            tol,
        ),
        _verify_reduction(
            "exp_tea_reduction",
            GridSpec.of(m=(0.5, 1.0), eb0=(0.0, 1.0), t=(0.5, 2.0), r=(0.0, 1.0)),
            lambda p, q: exp_tea_bound_integral(_cfg(p), p["t"], p["r"], q).value,
            lambda p: exp_tea_bound(_cfg(p), p["t"], p["r"]),
            tol,
        ),
        _verify_reduction(
            "exp_tea_derivative_reduction",
            GridSpec.of(m=(0.5, 1.0), eb0=(0.0, 1.0), t=(0.5, 2.0), r=(0.0, 1.0)),
            lambda p, q: exp_tea_derivative_integral(_cfg(p), p["t"], p["r"], q).value,
            lambda p: exp_tea_derivative_bound(_cfg(p), p["t"], p["r"]),
            tol,
        ),
        _verify_reduction(
            "u0_tau_reduction",
            GridSpec.of(m=(0.5, 1.0), eb0=(0.0, 1.0), t=(0.5, 2.0), r=(0.5, 2.0)),
            lambda p, q: u0_tau_integral(_cfg(p), p["t"], p["r"], q).value,
            lambda p: u0_tau_bound(_cfg(p), p["t"], p["r"]),
            tol,
        ),
        _verify_recurrence(),
    ]
    return certificates


def default_suite(jobs: int = 1) -> List[BoundCertificate]:
    """Run every certificate with its default grid."""
    suite: List[Callable[[], Any]] = [
        certify_hyperbolic,
        certify_diamagnetic,
        lambda: certify_ea_envelope(jobs=jobs),
        certify_semigroup,
        certify_free_limit,
        certify_singularity,
        certify_decay,
        certify_oscillatory,
        certify_coupling,
    ]
    certificates = [run() for run in suite]
    certificates.extend(verify_identities())
    return certificates


# helper functions
def _certificate(
    name: str,
    grid: GridSpec,
    points: List[Dict[str, float]],
    lhs: np.ndarray,
    rhs: np.ndarray,
    slack: float,
    failed: Optional[List[Dict[str, float]]] = None,
) -> BoundCertificate:
    """Create a certificate from both sides listed per point."""
    failed = list(failed or [])
    ratios = _ratios(np.abs(lhs), rhs)
    evaluated = np.where(np.isnan(ratios), -inf, ratios)

    if evaluated.size and np.any(evaluated > -inf):
        worst = int(np.argmax(evaluated))
        worst_ratio, worst_point = float(evaluated[worst]), points[worst]
    else:
        worst_ratio, worst_point = 0.0, {}

    violations = [
        Violation(points[i], float(lhs[i]), float(rhs[i]))
        for i in np.flatnonzero(evaluated > 1 + slack)
    ]
    certificate = BoundCertificate(
        name=name,
        grid=grid,
        worst_ratio=max(worst_ratio, 0.0),
        worst_point=worst_point,
        slack=slack,
        violations=violations,
        incomplete=bool(failed),
        failed_points=failed,
    )

    if failed:
        logger.warning(
            "certificate %s is incomplete: %d failed points", name, len(failed)
        )

    logger.info(
        "certificate %s: worst ratio %.6g, pass=%s",
        name,
        certificate.worst_ratio,
        certificate.passed,
    )
    return certificate


def _certificate_from_checks(
    name: str,
    grid: GridSpec,
    checks: Dict[str, Tuple[np.ndarray, np.ndarray]],
    slack: float,
    extra: Optional[Dict[str, np.ndarray]] = None,
) -> BoundCertificate:
    """Create a certificate from several inequalities on the same grid."""
    mesh = grid.meshgrid()
    extra = extra or {}
    points, lhs, rhs, details = [], [], [], {}

    for check, (left, right) in checks.items():
        left, right = np.broadcast_arrays(left, right)
        details[check] = float(np.max(_ratios(np.abs(left), right)))

        for index in np.ndindex(left.shape):
            point = {key: float(values[index]) for key, values in mesh.items()}
            point.update({key: float(values[index]) for key, values in extra.items()})
            point["check"] = check
            points.append(point)

        lhs.append(left.ravel())
        rhs.append(right.ravel())

    certificate = _certificate(
        name, grid, points, np.concatenate(lhs), np.concatenate(rhs), slack
    )
    certificate.details = details
    return certificate


def _ratios(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Return ``lhs / rhs`` with ``0 / 0 = 0`` and ``x / 0 = inf``."""
    lhs, rhs = np.asarray(lhs, float), np.asarray(rhs, float)

    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = lhs / rhs

    ratios = np.where((rhs == 0) & (lhs == 0), 0.0, ratios)
    return np.where((rhs == 0) & (lhs > 0), inf, ratios)


def _with_defaults(grid: Optional[GridSpec], default: GridSpec) -> GridSpec:
    """Complete a grid with the axes of a default grid it does not name."""
    if grid is None:
        return default

    axes = list(grid.axes)
    extra = dict(grid.extra)

    for axis in default.axes:
        if axis.name not in grid.names:
            axes.append(axis)

    for name, values in default.extra.items():
        if name not in grid.names:
            extra[name] = values

    return GridSpec(tuple(axes), grid.seed, extra)


def _ea_envelope_point(task: Tuple) -> Tuple[Optional[float], float, float]:
    """Evaluate the kernel of E_A and its envelope at one grid point."""
    m, eb0, spin, r, direction, tol = task
    cfg = FieldConfig.from_eb0(eb0, m)
    bound = ea_kernel_bound(cfg, r)

    try:
        result = ea_kernel(cfg, spin, Displacement.along(r, direction), tol)
    except ConvergenceError as error:
        logger.warning(
            "kernel of E_A failed at m=%g, eb0=%g, r=%g: %s", m, eb0, r, error
        )
        return None, 0.0, bound

    return float(result.value), float(result.error_estimate), bound


def _envelope_trend(
    points: List[Dict[str, float]],
    weighted: np.ndarray,
) -> Dict[str, Any]:
    """Empirical constants per (m, eB0) slice with their trend in eB0."""
    constants: Dict[float, Dict[float, float]] = {}

    for point, value in zip(points, weighted):
        if np.isnan(value):
            continue

        slice_ = constants.setdefault(point["m"], {})
        slice_[point["eb0"]] = max(slice_.get(point["eb0"], 0.0), float(value))

    details: Dict[str, Any] = {
        "constants": {},
        "nondecreasing": {},
        "quadratic_fit": {},
    }

    for m, by_field in sorted(constants.items()):
        fields = sorted(by_field)
        values = [by_field[eb0] for eb0 in fields]
        details["constants"][repr(m)] = {repr(eb0): by_field[eb0] for eb0 in fields}
        details["nondecreasing"][repr(m)] = bool(np.all(np.diff(values) >= 0))

        if len(fields) >= 3:
            fit = np.polyfit(fields, values, 2)
            details["quadratic_fit"][repr(m)] = [float(c) for c in fit]

    return details


def _ae_decay(grid: GridSpec, factor: float) -> BoundCertificate:
    """Decay of the double-integral envelope of A_E relative to its first separation."""
    reference_r = float(grid.coords()["r"][0])
    references: Dict[Tuple[float, float], Optional[float]] = {}
    points, lhs, rhs, failed = [], [], [], []

    for point in grid.points():
        m, eb0, r = point["m"], point["eb0"], point["r"]
        points.append(point)

        try:
            weighted = ae_bound_integral(FieldConfig.from_eb0(eb0, m), r).value * r**3
        except ConvergenceError:
            failed.append(point)
            weighted = np.nan

        weighted *= exp(0.5 * m * r)

        if r == reference_r:
            references[(m, eb0)] = weighted

        lhs.append(weighted)
        rhs.append(factor * references.get((m, eb0), np.nan))

    return _certificate(
        "ae_decay", grid, points, np.array(lhs), np.array(rhs), 0.0, failed
    )


def _merge(certificate: BoundCertificate, other: BoundCertificate, check: str) -> None:
    """Add the points of another certificate under a check name."""
    certificate.details[check] = other.worst_ratio

    if other.worst_ratio > certificate.worst_ratio:
        certificate.worst_ratio = other.worst_ratio
        certificate.worst_point = dict(other.worst_point, check=check)

    certificate.violations.extend(
        Violation(dict(v.point, check=check), v.lhs, v.rhs) for v in other.violations
    )
    certificate.failed_points.extend(dict(p, check=check) for p in other.failed_points)
    certificate.incomplete = certificate.incomplete or other.incomplete


def _transverse_convolution(
    cfg: FieldConfig,
    t: float,
    s: float,
    x: np.ndarray,
    xp: np.ndarray,
    tol: float,
) -> complex:
    """Numerical convolution of two transverse factors of the Mehler kernel."""
    amp_t, width_t = transverse_parameters(cfg, t)
    amp_s, width_s = transverse_parameters(cfg, s)
    half_eb0 = 0.5 * cfg.eb0
    x1, x2, y1, y2 = x[0], x[1], xp[0], xp[1]

    def integrand(u: float, v: float) -> complex:
        near = (u - x1) ** 2 + (v - x2) ** 2
        far = (y1 - u) ** 2 + (y2 - v) ** 2
        gaussian = exp(-width_t * near - width_s * far)
        phase = cexp(-1j * half_eb0 * ((x1 * v - x2 * u) + (u * y2 - v * y1)))
        return amp_t * amp_s * gaussian * phase

    half = sqrt(GAUSSIAN_TAIL / min(width_t, width_s))
    half += max(hypot(x1, x2), hypot(y1, y2))
    domain = (-half, half, -half, half)
    return integrate_finite2d(integrand, domain, tol, complex_func=True).value


def _spin_factor(cfg: FieldConfig, s: int, t: float) -> float:
    return exp(-t * cfg.m**2 + s * t * cfg.eb0)


def _cfg(p: Dict[str, float]) -> FieldConfig:
    return FieldConfig.from_eb0(p["eb0"], p["m"])


def _verify_reduction(
    name: str,
    grid: GridSpec,
    integral: Callable[[Dict[str, float], float], float],
    closed: Callable[[Dict[str, float]], float],
    tol: float,
) -> BoundCertificate:
    """Compare a quadrature with its closed form on every grid point."""
    points, lhs, rhs, failed = [], [], [], []

    for point in grid.points():
        points.append(point)
        exact = closed(point)

        try:
            value = integral(point, tol / 100)
        except ConvergenceError:
            failed.append(point)
            value = np.nan

        lhs.append(abs(value - exact))
        rhs.append(tol * abs(exact))

    return _certificate(name, grid, points, np.array(lhs), np.array(rhs), 0.0, failed)


def _verify_laplace(tol: float) -> BoundCertificate:
    """Laplace-type integral of a power.

    ``int t**nu exp(-gamma t - beta/t)
    = 2 (beta/gamma)**((nu+1)/2) K_{nu+1}(2 sqrt(beta gamma))``.

    """
    grid = GridSpec.of(
        nu=(-0.5, 0.0, 1.0, 2.0), beta=(0.5, 1.0, 2.0), gamma=(0.5, 1.0, 2.0)
    )

    def integral(p: Dict[str, float], q: float) -> float:
        nu, beta, gamma = p["nu"], p["beta"], p["gamma"]
        spec = IntegrandSpec(rate=gamma, breakpoints=(sqrt(beta / gamma),))
        f = lambda t: t**nu * exp(-gamma * t - beta / t)  # noqa: E731
        return integrate_semiaxis(f, spec, q).value

    def closed(p: Dict[str, float]) -> float:
        nu, beta, gamma = p["nu"], p["beta"], p["gamma"]
        prefactor = 2 * (beta / gamma) ** ((nu + 1) / 2)
        return prefactor * bessel_k(nu + 1, 2 * sqrt(beta * gamma))

    return _verify_reduction("laplace_integral", grid, integral, closed, tol)


def _verify_sonine(tol: float) -> BoundCertificate:
    """Sonine-type integral with ``w = sqrt(t**2 + a**2)``.

    ``int t**(2mu+1) K_nu(alpha w) / w**nu
    = 2**mu Gamma(mu+1) K_{nu-mu-1}(alpha a) / (alpha**(mu+1) a**(nu-mu-1))``.

    """
    grid = GridSpec.of(case=(0, 1, 2), alpha=(0.5, 1.0, 2.0), a=(0.5, 1.0, 2.0))
    orders = ((0.0, 1.0), (0.5, 1.5), (0.5, 2.75))

    def integral(p: Dict[str, float], q: float) -> float:
        mu, nu = orders[int(p["case"])]
        alpha, a = p["alpha"], p["a"]

        def f(t: float) -> float:
            w = hypot(t, a)
            return t ** (2 * mu + 1) * bessel_k(nu, alpha * w) / w**nu

        spec = IntegrandSpec(rate=alpha, breakpoints=(a,))
        return integrate_semiaxis(f, spec, q).value

    def closed(p: Dict[str, float]) -> float:
        mu, nu = orders[int(p["case"])]
        alpha, a = p["alpha"], p["a"]
        prefactor = 2**mu * gamma_fn(mu + 1)
        prefactor /= alpha ** (mu + 1) * a ** (nu - mu - 1)
        return prefactor * bessel_k(nu - mu - 1, alpha * a)

    certificate = _verify_reduction("sonine_integral", grid, integral, closed, tol)
    certificate.details = {"orders": [list(o) for o in orders]}
    return certificate


def _verify_angular_j1(tol: float) -> BoundCertificate:
    """``int_0^2pi cos(phi) exp(i x sin(phi + alpha)) = 2 pi i sin(alpha) J_1(x)``."""
    samples = [(0.5 + k, 0.3 + 0.61 * k) for k in range(10)]
    grid = GridSpec.of(sample=tuple(range(len(samples))))
    points, lhs, rhs, failed = [], [], [], []

    for point in grid.points():
        x, alpha = samples[int(point["sample"])]
        points.append(dict(point, x=x, alpha=alpha))
        j1 = bessel_j(1, x)

        def f(phi: float) -> complex:
            return cos(phi) * cexp(1j * x * sin(phi + alpha))

        try:
            value = integrate_interval(
                f, 0.0, 2 * pi, tol / 100, tol_abs=tol * 1e-3, complex_func=True
            ).value
        except ConvergenceError:
            failed.append(points[-1])
            value = np.nan

        lhs.append(abs(value - 2j * pi * sin(alpha) * j1))
        rhs.append(tol * 2 * pi * abs(j1))

    return _certificate(
        "angular_j1", grid, points, np.array(lhs), np.array(rhs), 0.0, failed
    )


def _verify_angular_j32(tol: float) -> BoundCertificate:
    """``2 int_0^pi/2 sin(theta)**2 J_1(x sin theta) = sqrt(2 pi / x) J_{3/2}(x)``."""
    grid = GridSpec.of(x=tuple(0.3 + 0.95 * k for k in range(10)))

    def integral(p: Dict[str, float], q: float) -> float:
        x = p["x"]
        def f(theta: float) -> float:
            return 2 * sin(theta) ** 2 * bessel_j(1, x * sin(theta))

        return integrate_interval(f, 0.0, pi / 2, q).value

    def closed(p: Dict[str, float]) -> float:
        return sqrt(2 * pi / p["x"]) * bessel_j(1.5, p["x"])

    return _verify_reduction("angular_j32", grid, integral, closed, tol)


def _verify_j32_integral(tol: float) -> BoundCertificate:
    """``int_0^inf xi**-3/2 J_{3/2}(xi) = sqrt(pi) / (2 sqrt(2))``."""
    grid = GridSpec.of(m=(0.0,))
    ov = OmegaVector(1.0, 0.0)
    factor = (2 * pi) ** 1.5

    def integral(p: Dict[str, float], q: float) -> float:
        cfg = FieldConfig.from_eb0(0.0, p["m"])
        return (sk_quadrature(cfg, 1, ov, q).value / (1j * factor)).real

    def closed(p: Dict[str, float]) -> float:
        return sqrt(pi) / (2 * sqrt(2))

    return _verify_reduction("j32_integral", grid, integral, closed, tol)


def _verify_recurrence(tol: float = 1e-10) -> BoundCertificate:
    """``K_{nu+1}(z) = K_{nu-1}(z) + (2 nu / z) K_nu(z)``."""
    grid = GridSpec.of(
        Axis("z", 0.1, 50.0, 50, Spacing.LOG), nu=(1.0, 1.5, 1.75, 2.0)
    )
    points, lhs, rhs = [], [], []

    for point in grid.points():
        nu, z = point["nu"], point["z"]
        points.append(point)
        upper = bessel_k(nu + 1, z)
        lhs.append(abs(upper - bessel_k(nu - 1, z) - 2 * nu / z * bessel_k(nu, z)))
        rhs.append(tol * upper)

    return _certificate(
        "bessel_recurrence", grid, points, np.array(lhs), np.array(rhs), 0.0
    )
