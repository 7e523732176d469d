# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled theta series kernel; same contract as ``_theta_py.theta_series``."""

cdef extern from "<complex.h>" nogil:
    double complex cexp(double complex)
    double cabs(double complex)

from libc.math cimport M_PI, floor

cdef double _RTOL = 1e-18
cdef int _MAX_TERMS = 400


def theta_series(z, tau):
    cdef double complex zc = z
    cdef double complex tc = tau
    cdef double complex I = 1j
    cdef double complex s0 = 0, s1 = 0, s2 = 0, s3 = 0
    cdef double complex t, w, t1, t2, t3
    cdef double scale = 0.0, mag, aw, h
    cdef int center, k, step, small, count, side
    center = <int>floor(-zc.imag / tc.imag + 0.5)
    for side in range(2):
        step = 1 if side == 0 else -1
        k = center if side == 0 else center - 1
        small = 0
        count = 0
        while small < 3 and count < _MAX_TERMS:
            h = k + 0.5
            t = cexp(I * M_PI * tc * h * h + 2.0 * I * M_PI * (zc + 0.5) * h)
            w = 2.0 * I * M_PI * h
            t1 = t * w
            t2 = t1 * w
            t3 = t2 * w
            s0 += t
            s1 += t1
            s2 += t2
            s3 += t3
            aw = cabs(w)
            if aw < 1.0:
                aw = 1.0
            mag = cabs(t) * aw * aw * aw
            if mag > scale:
                scale = mag
            if mag < _RTOL * scale:
                small += 1
            else:
                small = 0
            k += step
            count += 1
    return s0, s1, s2, s3
