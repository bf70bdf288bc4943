# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernel for the mean-field equations of motion.

Same contract as omitlab._rk4_py.integrate_rk4; selected at import when the
extension built.
"""

from libc.math cimport cos, sin, fabs

import numpy as np


cdef inline void _deriv(
    double t,
    double r1, double i1, double r2, double i2, double q, double p,
    double k1c, double k2c, double dc, double dd, double g0, double inv_m,
    double mw2, double hg, double gm, double ec, double ed, double ep,
    double dlt, double* out,
) nogil:
    cdef double d1 = dc - g0 * q
    cdef double d2 = dd + g0 * q
    out[0] = -k1c * r1 + d1 * i1 + ec + ep * cos(dlt * t)
    out[1] = -k1c * i1 - d1 * r1 - ep * sin(dlt * t)
    out[2] = -k2c * r2 + d2 * i2 + ed
    out[3] = -k2c * i2 - d2 * r2
    out[4] = p * inv_m
    out[5] = -gm * p - mw2 * q + hg * (r1 * r1 + i1 * i1 - r2 * r2 - i2 * i2)


def integrate_rk4(
    double kappa1,
    double kappa2,
    double delta_c,
    double delta_d,
    double g0,
    double m,
    double hbar,
    double omega_m,
    double gamma_m,
    double eps_c,
    double eps_d,
    double eps_p,
    double delta,
    y0,
    double t0,
    double dt,
    long n_steps,
    double cap,
):
    """Fixed-step RK4; returns (status, r1, i1, r2, i2, q, p)."""
    cdef long n = n_steps + 1
    r1a = np.empty(n)
    i1a = np.empty(n)
    r2a = np.empty(n)
    i2a = np.empty(n)
    qa = np.empty(n)
    pa = np.empty(n)
    cdef double[::1] r1v = r1a
    cdef double[::1] i1v = i1a
    cdef double[::1] r2v = r2a
    cdef double[::1] i2v = i2a
    cdef double[::1] qv = qa
    cdef double[::1] pv = pa

    cdef double r1 = y0[0], i1 = y0[1], r2 = y0[2], i2 = y0[3]
    cdef double q = y0[4], p = y0[5]
    cdef double mw2 = m * omega_m * omega_m
    cdef double hg = hbar * g0
    cdef double inv_m = 1.0 / m
    cdef double a[6]
    cdef double b[6]
    cdef double c[6]
    cdef double d[6]
    cdef double t, s
    cdef double h = dt
    cdef long k
    cdef long status = -1

    r1v[0] = r1; i1v[0] = i1; r2v[0] = r2; i2v[0] = i2; qv[0] = q; pv[0] = p

    with nogil:
        for k in range(1, n):
            t = t0 + (k - 1) * h
            _deriv(t, r1, i1, r2, i2, q, p,
                   kappa1, kappa2, delta_c, delta_d, g0, inv_m, mw2, hg,
                   gamma_m, eps_c, eps_d, eps_p, delta, a)
            _deriv(t + 0.5 * h,
                   r1 + 0.5 * h * a[0], i1 + 0.5 * h * a[1],
                   r2 + 0.5 * h * a[2], i2 + 0.5 * h * a[3],
                   q + 0.5 * h * a[4], p + 0.5 * h * a[5],
                   kappa1, kappa2, delta_c, delta_d, g0, inv_m, mw2, hg,
                   gamma_m, eps_c, eps_d, eps_p, delta, b)
            _deriv(t + 0.5 * h,
                   r1 + 0.5 * h * b[0], i1 + 0.5 * h * b[1],
                   r2 + 0.5 * h * b[2], i2 + 0.5 * h * b[3],
                   q + 0.5 * h * b[4], p + 0.5 * h * b[5],
                   kappa1, kappa2, delta_c, delta_d, g0, inv_m, mw2, hg,
                   gamma_m, eps_c, eps_d, eps_p, delta, c)
            _deriv(t + h,
                   r1 + h * c[0], i1 + h * c[1],
                   r2 + h * c[2], i2 + h * c[3],
                   q + h * c[4], p + h * c[5],
                   kappa1, kappa2, delta_c, delta_d, g0, inv_m, mw2, hg,
                   gamma_m, eps_c, eps_d, eps_p, delta, d)
            s = h / 6.0
            r1 += s * (a[0] + 2.0 * (b[0] + c[0]) + d[0])
            i1 += s * (a[1] + 2.0 * (b[1] + c[1]) + d[1])
            r2 += s * (a[2] + 2.0 * (b[2] + c[2]) + d[2])
            i2 += s * (a[3] + 2.0 * (b[3] + c[3]) + d[3])
            q += s * (a[4] + 2.0 * (b[4] + c[4]) + d[4])
            p += s * (a[5] + 2.0 * (b[5] + c[5]) + d[5])
            r1v[k] = r1; i1v[k] = i1; r2v[k] = r2; i2v[k] = i2
            qv[k] = q; pv[k] = p
            if not (fabs(r1) <= cap and fabs(i1) <= cap and fabs(r2) <= cap
                    and fabs(i2) <= cap and fabs(q) <= cap and fabs(p) <= cap):
                status = k
                break

    return status, r1a, i1a, r2a, i2a, qa, pa
