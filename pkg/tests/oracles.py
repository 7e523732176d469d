"""Independent reference values built from mpmath and brute-force sums.

Nothing here calls the package's theta kernel.
"""

import cmath
import math

import mpmath as mp
import numpy as np

mp.mp.dps = 30


def _nome(tau):
    return mp.exp(1j * mp.pi * mp.mpc(tau))


def theta_mp(z, tau):
    """Odd theta through mpmath's jtheta(1, .)."""
    return complex(-mp.jtheta(1, mp.pi * mp.mpc(z), _nome(tau)))


def theta_brute(z, tau, terms=60):
    """Direct symmetric sum over k in [-terms, terms)."""
    s = 0j
    for k in range(-terms, terms):
        h = k + 0.5
        s += cmath.exp(1j * math.pi * tau * h * h + 2j * math.pi * (z + 0.5) * h)
    return s


def theta_derivative_mp(z, tau, order):
    f = lambda x: -mp.jtheta(1, mp.pi * x, _nome(tau))
    return complex(mp.diff(f, mp.mpc(z), order))


def e1_mp(z, tau):
    return theta_derivative_mp(z, tau, 1) / theta_mp(z, tau)


def e2_mp(z, tau):
    f = lambda x: mp.diff(lambda y: mp.log(-mp.jtheta(1, mp.pi * y, _nome(tau))), x)
    return complex(-mp.diff(f, mp.mpc(z)))


def _sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def invariants(tau, terms=80):
    """``(g2, g3)`` from the q-expansions of the Eisenstein series G_4, G_6."""
    q = mp.exp(2j * mp.pi * mp.mpc(tau))
    s3 = mp.fsum(_sigma(n, 3) * q ** n for n in range(1, terms))
    s5 = mp.fsum(_sigma(n, 5) * q ** n for n in range(1, terms))
    g4 = mp.pi ** 4 / 45 * (1 + 240 * s3)
    g6 = 2 * mp.pi ** 6 / 945 * (1 - 504 * s5)
    return complex(60 * g4), complex(140 * g6)


def wp_qseries(z, tau, terms=60):
    """Weierstrass wp from its q-series in u = exp(2 pi i z)."""
    z, tau = mp.mpc(z), mp.mpc(tau)
    q = mp.exp(2j * mp.pi * tau)
    u = mp.exp(2j * mp.pi * z)
    s = mp.fsum(q ** n * u / (1 - q ** n * u) ** 2 for n in range(-terms, terms + 1))
    c = mp.fsum(q ** n / (1 - q ** n) ** 2 for n in range(1, terms))
    return (2j * mp.pi) ** 2 * (s + mp.mpf(1) / 12 - 2 * c)


def wp_prime_qseries(z, tau):
    return complex(mp.diff(lambda x: wp_qseries(x, tau), mp.mpc(z)))


def finite_difference(f, x, h=1e-4):
    """Fourth-order central difference."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def wp_lattice(z, tau, cut=40):
    """Truncated Weierstrass lattice sum; good to a few digits only."""
    m = np.arange(-cut, cut + 1)
    w = (m[:, None] + tau * m[None, :]).ravel()
    w = w[w != 0]
    return complex(1 / z ** 2 + np.sum(1 / (z - w) ** 2 - 1 / w ** 2))
