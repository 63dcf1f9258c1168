"""Pure-Python twins of the compiled kernels in ``_ckernels.pyx``.

Evaluation order matches the C code operation for operation so both
backends produce bit-identical orbits.
"""

import math

import numpy as np

LOZI = 0
HENON = 1
ESCAPE = 1e6
TINY = 1e-300


def _escaped(x, y):
    return not (math.isfinite(x) and math.isfinite(y)) or abs(x) > ESCAPE or abs(y) > ESCAPE


def iterate_orbit(kind, a, b, x0, y0, n):
    out = np.empty((n, 2), dtype=np.float64)
    x, y = float(x0), float(y0)
    bad = -1
    rows = [(x, y)]
    for i in range(1, n):
        if kind == LOZI:
            xn = 1.0 - a * abs(x) + y
        else:
            xn = 1.0 - a * x * x + y
        y = b * x
        x = xn
        if _escaped(x, y):
            bad = i
            break
        rows.append((x, y))
    out[: len(rows)] = rows
    return out, bad


def lyapunov_jacobian(kind, a, b, x0, y0, iters, transient):
    x, y = float(x0), float(y0)
    ux = uy = 0.7071067811865476
    acc = 0.0
    for i in range(1, transient + iters + 1):
        if i > transient:
            if kind == LOZI:
                j11 = -a if x >= 0.0 else a
            else:
                j11 = -2.0 * a * x
            wx = j11 * ux + uy
            wy = b * ux
            nrm = math.sqrt(wx * wx + wy * wy)
            if not (nrm > TINY) or not math.isfinite(nrm):
                return float("nan"), 2, i
            acc += math.log(nrm)
            ux = wx / nrm
            uy = wy / nrm
        if kind == LOZI:
            xn = 1.0 - a * abs(x) + y
        else:
            xn = 1.0 - a * x * x + y
        y = b * x
        x = xn
        if _escaped(x, y):
            return float("nan"), 1, i
    return acc / iters, 0, -1
