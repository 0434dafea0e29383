# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dormand-Prince 5(4) kernel for the radial Toda system.

Same algorithm and constants as ``_core_py``; see that module for details.
"""
import numpy as np
from libc.math cimport exp, fabs, isfinite, pow

cdef double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9
cdef double A21 = 1.0 / 5
cdef double A31 = 3.0 / 40, A32 = 9.0 / 40
cdef double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9
cdef double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729
cdef double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176, A65 = -5103.0 / 18656
cdef double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84
cdef double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200
cdef double E6 = 22.0 / 525, E7 = -1.0 / 40

cdef double SAFETY = 0.9
cdef double BETA = 0.04
cdef double ALPHA = 0.2 - 0.75 * 0.04
cdef double FAC_MIN = 0.2, FAC_MAX = 10.0
cdef long MAX_STEPS = 2000000

OK, UNDERFLOW, NONFINITE, TOO_MANY = 0, 1, 2, 3


cdef inline double rhs(double x, double w, double v) nogil:
    return -v / x + 2.0 * exp(-2.0 * w) - 2.0 * exp(4.0 * w)


cdef inline double rhs_dot(double x, double w, double v, double f) nogil:
    return v / (x * x) - f / x - (4.0 * exp(-2.0 * w) + 8.0 * exp(4.0 * w)) * v


cdef inline double hermite5(double s, double h, double y0, double d0, double dd0,
                            double y1, double d1, double dd1) nogil:
    cdef double s2 = s * s
    cdef double s3 = s2 * s
    cdef double s4 = s3 * s
    cdef double s5 = s4 * s
    cdef double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5
    cdef double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5
    cdef double h2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5)
    cdef double h3 = 0.5 * (s3 - 2.0 * s4 + s5)
    cdef double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5
    cdef double h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5
    return h0 * y0 + h1 * h * d0 + h2 * h * h * dd0 + h3 * h * h * dd1 + h4 * h * d1 + h5 * y1


def integrate(double x0, double w0, double v0, double x_end, double rtol, double atol,
              double dense_from, double dense_step, long n_dense, double h_init):
    """Integrate from x0 to x_end, sampling n_dense points from dense_from.

    Returns (xs, ws, vs, steps, rejections, status).
    """
    xs_arr = np.empty(n_dense)
    ws_arr = np.empty(n_dense)
    vs_arr = np.empty(n_dense)
    cdef double[::1] xs = xs_arr
    cdef double[::1] ws = ws_arr
    cdef double[::1] vs = vs_arr
    cdef double x = x0, w = w0, v = v0
    cdef double fw = v, fv = rhs(x, w, v)
    cdef double h = h_init, err_prev = 1e-4
    cdef long steps = 0, rejections = 0, j = 0
    cdef int status = 0
    cdef bint last
    cdef double k1w, k1v, k2w, k2v, k3w, k3v, k4w, k4v, k5w, k5v, k6w, k6v, k7w, k7v
    cdef double yw, yv, nw, nv, xn, ew, ev, sw, sv, err, fac, dv0, dv1, xj, s

    with nogil:
        while x < x_end:
            if steps + rejections >= MAX_STEPS:
                status = 3
                break
            if h < 1e-13 * x:
                status = 1
                break
            last = x + h >= x_end
            if last:
                h = x_end - x

            k1w = fw
            k1v = fv
            yw = w + h * A21 * k1w
            yv = v + h * A21 * k1v
            k2w = yv
            k2v = rhs(x + C2 * h, yw, yv)
            yw = w + h * (A31 * k1w + A32 * k2w)
            yv = v + h * (A31 * k1v + A32 * k2v)
            k3w = yv
            k3v = rhs(x + C3 * h, yw, yv)
            yw = w + h * (A41 * k1w + A42 * k2w + A43 * k3w)
            yv = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
            k4w = yv
            k4v = rhs(x + C4 * h, yw, yv)
            yw = w + h * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w)
            yv = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
            k5w = yv
            k5v = rhs(x + C5 * h, yw, yv)
            yw = w + h * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w)
            yv = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
            k6w = yv
            k6v = rhs(x + h, yw, yv)
            nw = w + h * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w)
            nv = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
            xn = x + h
            k7w = nv
            k7v = rhs(xn, nw, nv)

            ew = h * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
            ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
            sw = atol + rtol * max(fabs(w), fabs(nw))
            sv = atol + rtol * max(fabs(v), fabs(nv))
            err = max(fabs(ew) / sw, fabs(ev) / sv)

            if not isfinite(err) or not (isfinite(nw) and isfinite(nv)):
                if not (isfinite(w) and isfinite(v)):
                    status = 2
                    break
                rejections += 1
                h *= FAC_MIN
                continue

            if err <= 1.0:
                if j < n_dense and dense_from + j * dense_step <= xn:
                    dv0 = rhs_dot(x, w, v, fv)
                    dv1 = rhs_dot(xn, nw, nv, k7v)
                    while j < n_dense:
                        xj = dense_from + j * dense_step
                        if xj > xn:
                            break
                        s = (xj - x) / h
                        xs[j] = xj
                        ws[j] = hermite5(s, h, w, v, fv, nw, nv, k7v)
                        vs[j] = hermite5(s, h, v, fv, dv0, nv, k7v, dv1)
                        j += 1
                x = xn
                w = nw
                v = nv
                fw = k7w
                fv = k7v
                steps += 1
                fac = SAFETY * pow(max(err, 1e-10), -ALPHA) * pow(err_prev, BETA)
                fac = min(FAC_MAX, max(FAC_MIN, fac))
                err_prev = max(err, 1e-4)
                if last:
                    break
                h *= fac
            else:
                rejections += 1
                h *= max(FAC_MIN, SAFETY * pow(err, -ALPHA))

    return xs_arr[:j], ws_arr[:j], vs_arr[:j], steps, rejections, status
