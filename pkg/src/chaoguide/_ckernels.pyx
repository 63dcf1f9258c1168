# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled map kernels. Must stay bit-compatible with ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, log, sqrt, isfinite

cnp.import_array()

DEF LOZI = 0
DEF HENON = 1
DEF ESCAPE = 1e6
DEF TINY = 1e-300


cdef inline bint _escaped(double x, double y) nogil:
    return not (isfinite(x) and isfinite(y)) or fabs(x) > ESCAPE or fabs(y) > ESCAPE


def iterate_orbit(int kind, double a, double b, double x0, double y0, Py_ssize_t n):
    """Return ``(states, diverged_at)``; ``diverged_at`` is -1 when the orbit stayed bounded."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 2), dtype=np.float64)
    cdef double[:, ::1] s = out
    cdef double x = x0, y = y0, xn
    cdef Py_ssize_t i
    cdef Py_ssize_t bad = -1
    s[0, 0] = x
    s[0, 1] = y
    with nogil:
        for i in range(1, n):
            if kind == LOZI:
                xn = 1.0 - a * fabs(x) + y
            else:
                xn = 1.0 - a * x * x + y
            y = b * x
            x = xn
            if _escaped(x, y):
                bad = i
                break
            s[i, 0] = x
            s[i, 1] = y
    return out, bad


def lyapunov_jacobian(int kind, double a, double b, double x0, double y0,
                      Py_ssize_t iters, Py_ssize_t transient):
    """Benettin estimate with per-step renormalisation.

    Returns ``(lle, status, index)`` with status 0 ok, 1 diverged, 2 degenerate tangent.
    """
    cdef double x = x0, y = y0, xn, j11, ux, uy, wx, wy, nrm
    cdef double acc = 0.0
    cdef Py_ssize_t i
    cdef int status = 0
    cdef Py_ssize_t where = -1
    ux = 0.7071067811865476
    uy = 0.7071067811865476
    with nogil:
        for i in range(1, transient + iters + 1):
            if i > transient:
                if kind == LOZI:
                    j11 = -a if x >= 0.0 else a
                else:
                    j11 = -2.0 * a * x
                wx = j11 * ux + uy
                wy = b * ux
                nrm = sqrt(wx * wx + wy * wy)
                if not (nrm > TINY) or not isfinite(nrm):
                    status = 2
                    where = i
                    break
                acc += log(nrm)
                ux = wx / nrm
                uy = wy / nrm
            if kind == LOZI:
                xn = 1.0 - a * fabs(x) + y
            else:
                xn = 1.0 - a * x * x + y
            y = b * x
            x = xn
            if _escaped(x, y):
                status = 1
                where = i
                break
    if status != 0:
        return float("nan"), status, where
    return acc / iters, 0, -1
