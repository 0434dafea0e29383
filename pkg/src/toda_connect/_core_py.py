"""Pure-Python Dormand-Prince 5(4) kernel for the radial Toda system.

Mirrors ``_core.pyx`` line for line; used when the compiled extension is
unavailable.  The state is (w, v) with w' = v and
v' = -v/x + 2 exp(-2w) - 2 exp(4w).
"""
from __future__ import annotations

import math

import numpy as np

# Dormand-Prince tableau
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40

SAFETY = 0.9
BETA = 0.04
ALPHA = 0.2 - 0.75 * BETA
FAC_MIN, FAC_MAX = 0.2, 10.0
MAX_STEPS = 2_000_000

OK, UNDERFLOW, NONFINITE, TOO_MANY = 0, 1, 2, 3


def rhs(x, w, v):
    return -v / x + 2.0 * math.exp(-2.0 * w) - 2.0 * math.exp(4.0 * w)


def rhs_dot(x, w, v, f):
    """d/dx of rhs along the solution."""
    return v / (x * x) - f / x - (4.0 * math.exp(-2.0 * w) + 8.0 * math.exp(4.0 * w)) * v


def _hermite5(s, h, y0, d0, dd0, y1, d1, dd1):
    s2 = s * s
    s3 = s2 * s
    s4 = s3 * s
    s5 = s4 * s
    h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5
    h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5
    h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5)
    h3 = 0.5 * (s3 - 2.0 * s4 + s5)
    h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5
    h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5
    return h0 * y0 + h1 * h * d0 + h2 * h * h * dd0 + h3 * h * h * dd1 + h4 * h * d1 + h5 * y1


def integrate(x0, w0, v0, x_end, rtol, atol, dense_from, dense_step, n_dense, h_init):
    """Integrate from x0 to x_end, sampling n_dense points from dense_from.

    Returns (xs, ws, vs, steps, rejections, status).
    """
    xs = np.empty(n_dense)
    ws = np.empty(n_dense)
    vs = np.empty(n_dense)
    x, w, v = x0, w0, v0
    fw, fv = v, rhs(x, w, v)
    h = h_init
    err_prev = 1e-4
    steps = rejections = 0
    j = 0
    status = OK

    while x < x_end:
        if steps + rejections >= MAX_STEPS:
            status = TOO_MANY
            break
        if h < 1e-13 * x:
            status = UNDERFLOW
            break
        last = x + h >= x_end
        if last:
            h = x_end - x

        k1w, k1v = fw, fv
        yw = w + h * A21 * k1w
        yv = v + h * A21 * k1v
        k2w, k2v = yv, rhs(x + C2 * h, yw, yv)
        yw = w + h * (A31 * k1w + A32 * k2w)
        yv = v + h * (A31 * k1v + A32 * k2v)
        k3w, k3v = yv, rhs(x + C3 * h, yw, yv)
        yw = w + h * (A41 * k1w + A42 * k2w + A43 * k3w)
        yv = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
        k4w, k4v = yv, rhs(x + C4 * h, yw, yv)
        yw = w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w)
        yv = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
        k5w, k5v = yv, rhs(x + C5 * h, yw, yv)
        yw = w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w)
        yv = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
        k6w, k6v = yv, rhs(x + h, yw, yv)
        nw = w + h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w)
        nv = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
        xn = x + h
        k7w, k7v = nv, rhs(xn, nw, nv)

        ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
        sw = atol + rtol * max(abs(w), abs(nw))
        sv = atol + rtol * max(abs(v), abs(nv))
        err = max(abs(ew) / sw, abs(ev) / sv)

        if not math.isfinite(err) or not (math.isfinite(nw) and math.isfinite(nv)):
            if not (math.isfinite(w) and math.isfinite(v)):
                status = NONFINITE
                break
            rejections += 1
            h *= FAC_MIN
            continue

        if err <= 1.0:
            # dense samples inside (x, xn]
            if j < n_dense and dense_from + j * dense_step <= xn:
                dv0 = rhs_dot(x, w, v, fv)
                dv1 = rhs_dot(xn, nw, nv, k7v)
                while j < n_dense:
                    xj = dense_from + j * dense_step
                    if xj > xn:
                        break
                    s = (xj - x) / h
                    xs[j] = xj
                    ws[j] = _hermite5(s, h, w, v, fv, nw, nv, k7v)
                    vs[j] = _hermite5(s, h, v, fv, dv0, nv, k7v, dv1)
                    j += 1
            x, w, v = xn, nw, nv
            fw, fv = k7w, k7v
            steps += 1
            fac = SAFETY * max(err, 1e-10) ** -ALPHA * err_prev**BETA
            fac = min(FAC_MAX, max(FAC_MIN, fac))
            err_prev = max(err, 1e-4)
            if last:
                break
            h *= fac
        else:
            rejections += 1
            h *= max(FAC_MIN, SAFETY * err**-ALPHA)

    return xs[:j], ws[:j], vs[:j], steps, rejections, status
