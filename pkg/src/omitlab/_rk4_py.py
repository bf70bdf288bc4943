"""Pure-Python RK4 kernel for the mean-field equations of motion.

Fallback used when the compiled extension is unavailable; same contract as
``omitlab._rk4_cy.integrate_rk4``.  The state is (Re a1, Im a1, Re a2,
Im a2, q, p); the probe enters cavity 1 as eps_p * exp(-i*delta*t).
"""

from math import cos, sin

import numpy as np


def integrate_rk4(
    kappa1,
    kappa2,
    delta_c,
    delta_d,
    g0,
    m,
    hbar,
    omega_m,
    gamma_m,
    eps_c,
    eps_d,
    eps_p,
    delta,
    y0,
    t0,
    dt,
    n_steps,
    cap,
):
    """Fixed-step RK4; returns (status, r1, i1, r2, i2, q, p).

    status is -1 on success, else the sample index at which a state
    magnitude first exceeded ``cap``.
    """
    n = n_steps + 1
    out = np.empty((6, n))
    r1, i1, r2, i2, q, p = (float(v) for v in y0)
    out[0, 0] = r1
    out[1, 0] = i1
    out[2, 0] = r2
    out[3, 0] = i2
    out[4, 0] = q
    out[5, 0] = p

    k1c, k2c = float(kappa1), float(kappa2)
    mw2 = float(m) * float(omega_m) ** 2
    hg = float(hbar) * float(g0)
    inv_m = 1.0 / float(m)
    g0f = float(g0)
    gm = float(gamma_m)
    dc, dd = float(delta_c), float(delta_d)
    ec, ed, ep = float(eps_c), float(eps_d), float(eps_p)
    dlt = float(delta)
    t0 = float(t0)
    h = float(dt)
    cap = float(cap)

    def deriv(t, r1, i1, r2, i2, q, p):
        d1 = dc - g0f * q
        d2 = dd + g0f * q
        pr = ep * cos(dlt * t)
        pi = -ep * sin(dlt * t)
        return (
            -k1c * r1 + d1 * i1 + ec + pr,
            -k1c * i1 - d1 * r1 + pi,
            -k2c * r2 + d2 * i2 + ed,
            -k2c * i2 - d2 * r2,
            p * inv_m,
            -gm * p - mw2 * q + hg * (r1 * r1 + i1 * i1 - r2 * r2 - i2 * i2),
        )

    status = -1
    for k in range(1, n):
        t = t0 + (k - 1) * h
        a = deriv(t, r1, i1, r2, i2, q, p)
        b = deriv(
            t + 0.5 * h,
            r1 + 0.5 * h * a[0],
            i1 + 0.5 * h * a[1],
            r2 + 0.5 * h * a[2],
            i2 + 0.5 * h * a[3],
            q + 0.5 * h * a[4],
            p + 0.5 * h * a[5],
        )
        c = deriv(
            t + 0.5 * h,
            r1 + 0.5 * h * b[0],
            i1 + 0.5 * h * b[1],
            r2 + 0.5 * h * b[2],
            i2 + 0.5 * h * b[3],
            q + 0.5 * h * b[4],
            p + 0.5 * h * b[5],
        )
        d = deriv(
            t + h,
            r1 + h * c[0],
            i1 + h * c[1],
            r2 + h * c[2],
            i2 + h * c[3],
            q + h * c[4],
            p + h * c[5],
        )
        s = h / 6.0
        r1 += s * (a[0] + 2.0 * (b[0] + c[0]) + d[0])
        i1 += s * (a[1] + 2.0 * (b[1] + c[1]) + d[1])
        r2 += s * (a[2] + 2.0 * (b[2] + c[2]) + d[2])
        i2 += s * (a[3] + 2.0 * (b[3] + c[3]) + d[3])
        q += s * (a[4] + 2.0 * (b[4] + c[4]) + d[4])
        p += s * (a[5] + 2.0 * (b[5] + c[5]) + d[5])
        out[0, k] = r1
        out[1, k] = i1
        out[2, k] = r2
        out[3, k] = i2
        out[4, k] = q
        out[5, k] = p
        if not (
            abs(r1) <= cap
            and abs(i1) <= cap
            and abs(r2) <= cap
            and abs(i2) <= cap
            and abs(q) <= cap
            and abs(p) <= cap
        ):
            status = k
            break

    return status, out[0], out[1], out[2], out[3], out[4], out[5]
