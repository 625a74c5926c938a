"""Pure-Python reference kernels for the hot inner loops.

The compiled twin in ``_kernels_cy.pyx`` implements the same three routines
with identical arithmetic (same operation order, no FP contraction), so the
two backends are interchangeable. Keep any change here in lockstep with the
.pyx file.
"""

from math import log

RESCALE_LIMIT = 1e250


def kummer_series(a_re, a_im, b_re, b_im, x, max_terms, rtol):
    """Power series of the confluent hypergeometric 1F1(a; b; x), complex a, b.

    Kahan-compensated summation; stops after two consecutive terms below
    rtol * |sum|. Returns (re, im, terms_used); terms_used is -1 when the
    term budget is exhausted before convergence.
    """
    s_re = 1.0
    s_im = 0.0
    c_re = 0.0
    c_im = 0.0
    t_re = 1.0
    t_im = 0.0
    small_count = 0
    for k in range(max_terms):
        fk = float(k)
        # t *= (a + k) / (b + k)
        nr = a_re + fk
        ni = a_im
        dr = b_re + fk
        di = b_im
        den = dr * dr + di * di
        u_re = (nr * dr + ni * di) / den
        u_im = (ni * dr - nr * di) / den
        w_re = t_re * u_re - t_im * u_im
        w_im = t_re * u_im + t_im * u_re
        # t *= x / (k + 1)
        f = x / (fk + 1.0)
        t_re = w_re * f
        t_im = w_im * f
        # Kahan add, real and imaginary lanes
        y = t_re - c_re
        tmp = s_re + y
        c_re = (tmp - s_re) - y
        s_re = tmp
        y = t_im - c_im
        tmp = s_im + y
        c_im = (tmp - s_im) - y
        s_im = tmp
        if abs(t_re) + abs(t_im) <= rtol * (abs(s_re) + abs(s_im)):
            small_count += 1
            if small_count >= 2:
                return s_re, s_im, k + 1
        else:
            small_count = 0
    return s_re, s_im, -1


def whittaker_sweep(kappa1, nu, x_start, w, dw, x_end, n_steps):
    """Fixed-step RK4 for w'' = (1/4 - kappa1/x - (1/4 + nu^2)/x^2) w.

    Integrates from x_start to x_end (either direction); returns (w, dw)
    at x_end.
    """
    q = 0.25 + nu * nu
    h = (x_end - x_start) / n_steps
    for i in range(n_steps):
        x = x_start + i * h
        k1w = dw
        k1d = (0.25 - kappa1 / x - q / (x * x)) * w
        xm = x + 0.5 * h
        cm = 0.25 - kappa1 / xm - q / (xm * xm)
        k2w = dw + 0.5 * h * k1d
        k2d = cm * (w + 0.5 * h * k1w)
        k3w = dw + 0.5 * h * k2d
        k3d = cm * (w + 0.5 * h * k2w)
        xe = x + h
        ce = 0.25 - kappa1 / xe - q / (xe * xe)
        k4w = dw + h * k3d
        k4d = ce * (w + h * k3w)
        w = w + (h / 6.0) * (k1w + 2.0 * (k2w + k3w) + k4w)
        dw = dw + (h / 6.0) * (k1d + 2.0 * (k2d + k3d) + k4d)
    return w, dw


def radial_sweep(nu2, delta, tau2, r_start, r_end, n_steps, g, dg, out_vals, out_exps):
    """Inward RK4 sweep of g'' + g'/r + (nu2/r^2 - delta/r - tau2) g = 0.

    Marches from r_start down to r_end on a uniform grid, storing g and the
    running rescale exponent at every node (out_vals[i], out_exps[i] at
    r_start + i*h). The state is divided out whenever |g| or |dg| exceeds
    RESCALE_LIMIT; true g = stored value * exp(stored exponent + returned
    base offset is NOT included - exponents are relative to the seed scale).
    Returns (g, dg, exp) at r_end.
    """
    h = (r_end - r_start) / n_steps
    ex = 0.0
    out_vals[0] = g
    out_exps[0] = ex
    for i in range(n_steps):
        r = r_start + i * h
        c0 = -nu2 / (r * r) + delta / r + tau2
        k1g = dg
        k1d = -dg / r + c0 * g
        rm = r + 0.5 * h
        cm = -nu2 / (rm * rm) + delta / rm + tau2
        w2g = g + 0.5 * h * k1g
        w2d = dg + 0.5 * h * k1d
        k2g = w2d
        k2d = -w2d / rm + cm * w2g
        w3g = g + 0.5 * h * k2g
        w3d = dg + 0.5 * h * k2d
        k3g = w3d
        k3d = -w3d / rm + cm * w3g
        re_ = r + h
        ce = -nu2 / (re_ * re_) + delta / re_ + tau2
        w4g = g + h * k3g
        w4d = dg + h * k3d
        k4g = w4d
        k4d = -w4d / re_ + ce * w4g
        g = g + (h / 6.0) * (k1g + 2.0 * (k2g + k3g) + k4g)
        dg = dg + (h / 6.0) * (k1d + 2.0 * (k2d + k3d) + k4d)
        ag = abs(g)
        ad = abs(dg)
        m = ag if ag > ad else ad
        if m > RESCALE_LIMIT:
            g = g / m
            dg = dg / m
            ex = ex + log(m)
        out_vals[i + 1] = g
        out_exps[i + 1] = ex
    return g, dg, ex
