"""Pure-Python theta series kernel (fallback when the compiled one is absent)."""

import cmath
import math

_TWO_PI_I = 2j * math.pi
_RTOL = 1e-18
_MAX_TERMS = 400


def theta_series(z, tau):
    """Return (th, th', th'', th''') of the odd theta series at ``z``.

    Terms are exp(pi i tau (k+1/2)^2 + 2 pi i (z+1/2)(k+1/2)); derivatives are
    taken term by term.  Summation starts at the dominant term and walks
    outwards until three consecutive terms on each side drop below
    ``_RTOL`` times the largest weighted term seen.
    """
    z = complex(z)
    tau = complex(tau)
    center = math.floor(-z.imag / tau.imag + 0.5)
    s0 = s1 = s2 = s3 = 0j
    scale = 0.0
    for step in (1, -1):
        k = center if step == 1 else center - 1
        small = 0
        count = 0
        while small < 3 and count < _MAX_TERMS:
            h = k + 0.5
            t = cmath.exp(1j * math.pi * tau * h * h + _TWO_PI_I * (z + 0.5) * h)
            w = _TWO_PI_I * h
            t1 = t * w
            t2 = t1 * w
            t3 = t2 * w
            s0 += t
            s1 += t1
            s2 += t2
            s3 += t3
            mag = abs(t) * max(1.0, abs(w)) ** 3
            if mag > scale:
                scale = mag
            small = small + 1 if mag < _RTOL * scale else 0
            k += step
            count += 1
    return s0, s1, s2, s3
