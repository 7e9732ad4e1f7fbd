"""Extended-precision oracles of the tests."""


# dependencies
import mpmath as mp


# constants
mp.mp.dps = 30


# oracle functions
def besselk(nu: float, z: float) -> float:
    return float(mp.besselk(nu, z))


def besselj(nu: float, z: float) -> float:
    return float(mp.besselj(nu, z))


def gamma(x: float) -> float:
    return float(mp.gamma(x))


def hyp2f1(a: float, b: float, c: float, x: float) -> float:
    return float(mp.hyp2f1(a, b, c, x))


def besselk_integral(nu: float, z: float) -> float:
    """K_nu(z) from ``int_0^inf exp(-z cosh t) cosh(nu t) dt``."""
    f = lambda t: mp.exp(-z * mp.cosh(t)) * mp.cosh(nu * t)  # noqa: E731
    return float(mp.quad(f, [0, 1, 5, mp.inf]))


def free_relativistic_radial(m: float, r: float) -> float:
    """Kernel of ``sqrt(p**2 + m**2)`` at ``r`` by its Fourier-Bessel integral.

    The regularized radial integral ``(1/2pi**2 r) int p sin(pr) sqrt(p**2 + m**2) dp``
    is evaluated with ``p`` and ``m**2 / 2 sqrt(p**2 + m**2)`` removed
    from the square root and their Abel limits added back.

    """
    m, r = mp.mpf(m), mp.mpf(r)

    def f(p):
        energy = mp.sqrt(p**2 + m**2)
        return p * (energy - p - m**2 / (2 * energy))

    g = lambda p: f(p) * mp.sin(p * r)  # noqa: E731
    body = mp.quadosc(g, [0, mp.inf], omega=r)
    # int p sin(pr) m**2 / (2 sqrt(p**2 + m**2)) dp = (m**3/2) K_1(m r)
    tail = m**3 / 2 * mp.besselk(1, m * r)
    # int p**2 sin(pr) dp = -2/r**3
    counterterm = -2 / r**3
    return float((body + tail + counterterm) / (2 * mp.pi**2 * r))
