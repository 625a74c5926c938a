"""Special-function core: complex log-gamma, the Kummer confluent
hypergeometric series, and Whittaker functions whose second index is purely
imaginary (order i*nu). These are the building blocks of the radial solution
regular at infinity.

W_{kappa, i nu}(x) is real for real kappa, x and oscillates like
cos(nu ln x) near the origin. It is evaluated by three routes:

* small x (boundary 10 for kappa >= 0, lower for negative kappa): the
  standard combination of two conjugate first-kind functions,
  W = G(-2 i nu)/G(1/2 - i nu - kappa) M_{kappa, i nu}
    + G(+2 i nu)/G(1/2 + i nu - kappa) M_{kappa, -i nu},
  with gamma prefactors kept in log form so tiny/huge magnitudes stay exact.
* x > x*(kappa, nu) ~ 50 and up: the truncated asymptotic expansion
  (smallest-term cutoff), whose error is below ~1e-12 by the choice of x*.
* in between: inward RK4 integration of the Whittaker equation seeded from
  the asymptotic expansion at x* + 10. The decaying solution is stable in
  this direction; the M-combination would lose ~e^x x^(-2 kappa) in
  cancellation here, which double precision cannot absorb.

Scaled results are returned as (mantissa, exponent) pairs meaning
mantissa * exp(exponent), since physical paths reach |W| ~ exp(-10^6).
"""

import cmath
import math
from dataclasses import dataclass

from dipolewell import _backend
from dipolewell.errors import AccuracyError, ConditioningError, GammaPoleError

LN_SQRT_2PI = 0.9189385332046727417803297

# Lanczos g = 7 with 9 coefficients; uniform ~1e-13 over the right half-plane.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SERIES_X_MAX = 10.0
KUMMER_MAX_TERMS = 500
NU_MIN = 1e-3


def _logsinpi(z: complex) -> complex:
    # stable for Im z >= 0: sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) * i/2
    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log(0.5j) + cmath.log(1.0 - w)


def lngamma_complex(z: complex) -> complex:
    """log Gamma(z) via Lanczos approximation plus reflection for Re z < 0.5.

    exp(lngamma_complex(z)) reproduces Gamma(z) to ~1e-13 relative for
    |z| <= 50; the result may differ from the principal branch by a multiple
    of 2 pi i deep in the reflected region.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise GammaPoleError(f"log-gamma pole at nonpositive integer z = {z.real}")
    if z.imag < 0.0:
        return lngamma_complex(z.conjugate()).conjugate()
    if z.real < 0.5:
        return math.log(math.pi) - _logsinpi(z) - lngamma_complex(1.0 - z)
    zz = z - 1.0
    s = complex(_LANCZOS[0], 0.0)
    for i in range(1, len(_LANCZOS)):
        s += _LANCZOS[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return LN_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(s)


def kummer_m(a: complex, b: complex, x: float) -> complex:
    """Confluent hypergeometric 1F1(a; b; x) by compensated power series.

    Raises GammaPoleError when b is a nonpositive integer and AccuracyError
    when the series does not converge within the term budget (x too large
    for double-precision summation).
    """
    a = complex(a)
    b = complex(b)
    if b.imag == 0.0 and b.real <= 0.0 and b.real == math.floor(b.real):
        raise GammaPoleError(f"1F1 undefined at nonpositive integer b = {b.real}")
    if x == 0.0:
        return complex(1.0, 0.0)
    re, im, n = _backend.kummer_series(a.real, a.imag, b.real, b.imag, float(x), KUMMER_MAX_TERMS, 1e-16)
    if n < 0 or not (math.isfinite(re) and math.isfinite(im)):
        raise AccuracyError(
            f"1F1 series did not converge within {KUMMER_MAX_TERMS} terms "
            f"for a={a}, b={b}, x={x}"
        )
    return complex(re, im)


@dataclass(frozen=True)
class WhittakerArgs:
    """First index kappa (real), magnitude nu > 0 of the imaginary second
    index (order = i nu), and argument x > 0."""

    kappa: float
    nu: float
    x: float

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if not self.x > 0:
            raise ValueError(f"x must be positive, got {self.x}")


def whittaker_m_imag(args: WhittakerArgs) -> complex:
    """First-kind Whittaker function M_{kappa, i nu}(x) (complex valued)."""
    k, nu, x = args.kappa, args.nu, args.x
    a = complex(0.5 - k, nu)
    b = complex(1.0, 2.0 * nu)
    f = kummer_m(a, b, x)
    lnx = math.log(x)
    pref = math.exp(-0.5 * x) * math.sqrt(x)
    return pref * complex(math.cos(nu * lnx), math.sin(nu * lnx)) * f


def _whittaker_m_general(kappa: float, mu: float, x: float) -> float:
    # real-order path, kept for regression against closed forms only
    f = kummer_m(complex(0.5 + mu - kappa), complex(1.0 + 2.0 * mu), x)
    return math.exp(-0.5 * x) * x ** (0.5 + mu) * f.real


def _m_imag_with_deriv(k: float, nu: float, x: float) -> tuple[complex, complex]:
    # M and dM/dx from the series, for ODE seeding and engine checks
    a = complex(0.5 - k, nu)
    b = complex(1.0, 2.0 * nu)
    f = kummer_m(a, b, x)
    f2 = kummer_m(a + 1.0, b + 1.0, x)
    lnx = math.log(x)
    pref = math.exp(-0.5 * x) * math.sqrt(x) * complex(math.cos(nu * lnx), math.sin(nu * lnx))
    m = pref * f
    dm = m * (-0.5 + complex(0.5, nu) / x) + pref * (a / b) * f2
    return m, dm


def _w_gamma_logs(k: float, nu: float) -> tuple[complex, complex]:
    lg_p = lngamma_complex(complex(0.0, -2.0 * nu)) - lngamma_complex(complex(0.5 - k, -nu))
    lg_m = lngamma_complex(complex(0.0, 2.0 * nu)) - lngamma_complex(complex(0.5 - k, nu))
    return lg_p, lg_m


def _w_series_scaled(k: float, nu: float, x: float) -> tuple[float, float]:
    a = complex(0.5 - k, nu)
    b = complex(1.0, 2.0 * nu)
    s_p = kummer_m(a, b, x)
    s_m = kummer_m(a.conjugate(), b.conjugate(), x)
    lg_p, lg_m = _w_gamma_logs(k, nu)
    lnx = math.log(x)
    l_p = lg_p + complex(-0.5 * x + 0.5 * lnx, nu * lnx)
    l_m = lg_m + complex(-0.5 * x + 0.5 * lnx, -nu * lnx)
    ex = l_p.real
    t_p = cmath.exp(complex(0.0, l_p.imag)) * s_p
    t_m = cmath.exp(complex(l_m.real - ex, l_m.imag)) * s_m
    total = t_p + t_m
    scale = max(abs(t_p), abs(t_m))
    if scale > 0.0 and abs(total.imag) > 1e-10 * scale:
        raise AccuracyError(
            "conjugate-pair symmetry violated: imaginary residue "
            f"{abs(total.imag) / scale:.3e} at kappa={k}, nu={nu}, x={x}"
        )
    return total.real, ex


def _w_series_with_deriv(k: float, nu: float, x: float) -> tuple[float, float]:
    # unscaled W and dW/dx on the series zone (x small enough to represent)
    m_p, dm_p = _m_imag_with_deriv(k, nu, x)
    lg_p, lg_m = _w_gamma_logs(k, nu)
    c_p = cmath.exp(lg_p)
    c_m = cmath.exp(lg_m)
    w = c_p * m_p + c_m * m_p.conjugate()
    dw = c_p * dm_p + c_m * dm_p.conjugate()
    return w.real, dw.real


def series_switch(kappa: float) -> float:
    """Upper argument limit for the M-combination route.

    The combination cancels like e^x x^(-2 kappa) for kappa < 0, so the
    boundary solves x + 2 |kappa| ln x = 10, keeping the amplification of
    summation/gamma roundoff below ~e^10 on the series side. For kappa >= 0
    the boundary stays at x = 10.
    """
    a = 2.0 * max(0.0, -kappa)
    if a == 0.0:
        return SERIES_X_MAX
    lo, hi = 1.5, SERIES_X_MAX
    if lo + a * math.log(lo) - 10.0 >= 0.0:
        return lo
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid + a * math.log(mid) - 10.0 >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def asym_switch(kappa: float, nu: float) -> float:
    """Crossover argument above which the asymptotic expansion of W is used.

    Chosen so the expansion's smallest term sits below ~1e-12: negative
    first index inflates the divergent tail (the factors become
    (j + 1/2 + |kappa|)^2 + nu^2), hence the extra allowance on that side.
    """
    return max(50.0, 2.0 * (kappa * kappa + nu * nu) + 10.0 * max(0.0, -kappa))


def _w_asym_scaled(k: float, nu: float, x: float) -> tuple[float, float, float]:
    # returns (S, dS/dx, exponent) with W = e^exponent * S; truncation at the
    # smallest term of the divergent expansion
    term = 1.0
    s = 1.0
    ds = 0.0
    prev = 1.0
    nu2 = nu * nu
    for j in range(160):
        term = term * (((j + 0.5 - k) ** 2 + nu2) / ((j + 1.0) * (-x)))
        if abs(term) >= prev:
            if prev > 1e-10 * abs(s):
                raise AccuracyError(
                    f"asymptotic expansion of W stalls at relative {prev / abs(s):.3e} "
                    f"for kappa={k}, nu={nu}, x={x}"
                )
            break
        s += term
        ds += term * (-(j + 1.0) / x)
        prev = abs(term)
    return s, ds, -0.5 * x + k * math.log(x)


BRIDGE_STEPS_PER_UNIT = 512


def _w_bridge_scaled(k: float, nu: float, x: float) -> tuple[float, float]:
    xs = asym_switch(k, nu) + 10.0
    s, ds, ex = _w_asym_scaled(k, nu, xs)
    w = s
    dw = (-0.5 + k / xs) * s + ds
    n = max(64, int(math.ceil((xs - x) * BRIDGE_STEPS_PER_UNIT)))
    w_end, _ = _backend.whittaker_sweep(k, nu, xs, w, dw, x, n)
    return w_end, ex


def whittaker_w_imag_scaled(kappa: float, nu: float, x: float) -> tuple[float, float]:
    """Second-kind Whittaker function of imaginary order, scaled.

    Returns (mantissa, exponent) with W_{kappa, i nu}(x) = mantissa *
    exp(exponent), usable far beyond double-precision range (the physical
    small-x path reaches |W| ~ exp(-10^6)).
    """
    if not nu > 0 or not x > 0:
        raise ValueError(f"need nu > 0 and x > 0, got nu={nu}, x={x}")
    if nu < NU_MIN:
        raise ConditioningError(
            f"nu = {nu} below {NU_MIN}: gamma(+-2 i nu) blows up and the "
            "conjugate combination loses all significance"
        )
    if x <= series_switch(kappa):
        return _w_series_scaled(kappa, nu, x)
    x_star = asym_switch(kappa, nu)
    if x > x_star:
        s, _, ex = _w_asym_scaled(kappa, nu, x)
        return s, ex
    if x_star > 500.0:
        # only reachable by direct calls with strongly negative kappa at
        # moderate x; no double-precision route is accurate there and the
        # physical paths never enter this corner
        raise AccuracyError(
            f"no accurate double-precision route for kappa={kappa}, nu={nu}, "
            f"x={x} (middle zone extends to {x_star:.0f})"
        )
    return _w_bridge_scaled(kappa, nu, x)


def whittaker_w_imag(args: WhittakerArgs) -> float:
    """Second-kind Whittaker function W_{kappa, i nu}(x); real valued.

    Raises AccuracyError when the value's exponent leaves double range;
    whittaker_w_imag_scaled has no such limit.
    """
    man, ex = whittaker_w_imag_scaled(args.kappa, args.nu, args.x)
    if abs(ex) > 700.0:
        raise AccuracyError(
            f"W exponent {ex:.1f} outside double-precision range at "
            f"kappa={args.kappa}, nu={args.nu}, x={args.x}; use the scaled form"
        )
    return man * math.exp(ex)


def smallx_parts(kappa: float, nu: float, x: float) -> tuple[float, float]:
    """(log-amplitude, phase) of the small-argument closed form of
    W_{-kappa, i nu}, i.e. value = exp(log_amplitude) * cos(phase).

    The amplitude requires beta = 1/2 + kappa > 0; the phase additionally
    requires beta * x > 0.
    """
    beta = 0.5 + kappa
    if beta <= 0.0:
        raise ValueError(f"amplitude undefined for beta = 1/2 + kappa = {beta} <= 0")
    if x <= 0.0:
        raise ValueError(f"x must be positive, got {x}")
    ln_amp = (
        -nu * math.pi
        + beta
        - 0.5 * math.log(2.0 * nu)
        - (beta - 0.5) * math.log(beta)
        + math.log(2.0)
        + 0.5 * math.log(x)
    )
    phase = 2.0 * nu + nu * math.log(beta * x / (4.0 * nu * nu)) + 0.25 * math.pi
    return ln_amp, phase


def whittaker_w_smallx(kappa: float, nu: float, x: float) -> float:
    """Small-argument approximation of W_{-kappa, i nu}(x) for x << 1:
    2 A sqrt(x) cos(2 nu + nu ln(beta x / (4 nu^2)) + pi/4) with
    beta = 1/2 + kappa and A = exp(-nu pi + beta) / (sqrt(2 nu) beta^(beta - 1/2)).

    kappa here is the positive Coulomb-coupling index (the function
    approximates W with first index -kappa). Values may underflow to 0.0
    for large kappa; smallx_parts exposes the log-amplitude and phase.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    ln_amp, phase = smallx_parts(kappa, nu, x)
    if ln_amp > 700.0:
        raise AccuracyError(f"small-x amplitude overflows: exp({ln_amp:.1f})")
    return math.exp(max(ln_amp, -745.0)) * math.cos(phase)
