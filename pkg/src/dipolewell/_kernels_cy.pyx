# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py. Same arithmetic, same operation order;
built with -ffp-contract=off so both backends agree to the last ulp."""

from libc.math cimport log, fabs

RESCALE_LIMIT = 1e250
cdef double _RESCALE_LIMIT = 1e250


def kummer_series(double a_re, double a_im, double b_re, double b_im,
                  double x, int max_terms, double rtol):
    cdef double s_re = 1.0, s_im = 0.0, c_re = 0.0, c_im = 0.0
    cdef double t_re = 1.0, t_im = 0.0
    cdef double fk, nr, ni, dr, di, den, u_re, u_im, w_re, w_im, f, y, tmp
    cdef int small_count = 0
    cdef int k
    for k in range(max_terms):
        fk = <double> k
        nr = a_re + fk
        ni = a_im
        dr = b_re + fk
        di = b_im
        den = dr * dr + di * di
        u_re = (nr * dr + ni * di) / den
        u_im = (ni * dr - nr * di) / den
        w_re = t_re * u_re - t_im * u_im
        w_im = t_re * u_im + t_im * u_re
        f = x / (fk + 1.0)
        t_re = w_re * f
        t_im = w_im * f
        y = t_re - c_re
        tmp = s_re + y
        c_re = (tmp - s_re) - y
        s_re = tmp
        y = t_im - c_im
        tmp = s_im + y
        c_im = (tmp - s_im) - y
        s_im = tmp
        if fabs(t_re) + fabs(t_im) <= rtol * (fabs(s_re) + fabs(s_im)):
            small_count += 1
            if small_count >= 2:
                return s_re, s_im, k + 1
        else:
            small_count = 0
    return s_re, s_im, -1


def whittaker_sweep(double kappa1, double nu, double x_start, double w,
                    double dw, double x_end, int n_steps):
    cdef double q = 0.25 + nu * nu
    cdef double h = (x_end - x_start) / n_steps
    cdef double x, xm, xe, cm, ce
    cdef double k1w, k1d, k2w, k2d, k3w, k3d, k4w, k4d
    cdef int i
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


def radial_sweep(double nu2, double delta, double tau2, double r_start,
                 double r_end, int n_steps, double g, double dg,
                 double[::1] out_vals, double[::1] out_exps):
    cdef double h = (r_end - r_start) / n_steps
    cdef double ex = 0.0
    cdef double r, rm, re_, c0, cm, ce
    cdef double k1g, k1d, k2g, k2d, k3g, k3d, k4g, k4d
    cdef double w2g, w2d, w3g, w3d, w4g, w4d
    cdef double ag, ad, m
    cdef int i
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
        ag = fabs(g)
        ad = fabs(dg)
        m = ag if ag > ad else ad
        if m > _RESCALE_LIMIT:
            g = g / m
            dg = dg / m
            ex = ex + log(m)
        out_vals[i + 1] = g
        out_exps[i + 1] = ex
    return g, dg, ex
