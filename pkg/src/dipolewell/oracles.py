"""Independent verification oracles, deliberately disjoint from the
evaluation routes they check: modified Bessel function of imaginary order by
adaptive quadrature, gamma identity grids, and the agreement of the Whittaker
evaluation routes at their hand-off points."""

import cmath
import math
from dataclasses import dataclass

from scipy.integrate import quad

from dipolewell import specfun


def bessel_k_imag(nu: float, z: float) -> float:
    """K_{i nu}(z) as the integral of exp(-z cosh t) cos(nu t) over t >= 0,
    by adaptive quadrature with a decay-based upper cutoff."""
    if not z > 0:
        raise ValueError(f"z must be positive, got {z}")
    t_max = math.acosh(745.0 / z) if z < 745.0 else 1.0
    val, _ = quad(
        lambda t: math.exp(-z * math.cosh(t)) * math.cos(nu * t),
        0.0,
        t_max,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=300,
    )
    return val


GAMMA_GRID_RE = (-12.3, -3.7, -0.4, 0.3, 1.5, 8.0, 25.0, 49.0)
GAMMA_GRID_IM = (-30.0, -4.2, -0.1, 0.0, 0.1, 4.2, 30.0)


def gamma_recurrence_error() -> float:
    """max over a complex grid of |Gamma(z+1) - z Gamma(z)| / |Gamma(z+1)|."""
    worst = 0.0
    for re in GAMMA_GRID_RE:
        for im in GAMMA_GRID_IM:
            if im == 0.0 and re < 0.0:
                continue
            z = complex(re, im)
            g1 = cmath.exp(specfun.lngamma_complex(z + 1.0))
            g0 = cmath.exp(specfun.lngamma_complex(z))
            worst = max(worst, abs(g1 - z * g0) / abs(g1))
    return worst


def gamma_reflection_error() -> float:
    """max over a complex grid of |Gamma(z) Gamma(1-z) sin(pi z)/pi - 1|."""
    worst = 0.0
    for re in GAMMA_GRID_RE:
        for im in GAMMA_GRID_IM:
            if im == 0.0 and (re == math.floor(re) or abs(re) > 20.0):
                continue
            z = complex(re, im)
            lhs = cmath.exp(
                specfun.lngamma_complex(z) + specfun.lngamma_complex(1.0 - z)
            ) * cmath.sin(math.pi * z) / math.pi
            worst = max(worst, abs(lhs - 1.0))
    return worst


def bessel_identity_error(nus=(0.5, 1.0, 2.0), zs=(0.1, 0.5, 1.0, 2.0, 5.0)) -> float:
    """max relative deviation of W_{0, i nu}(2z) from sqrt(2z/pi) K_{i nu}(z)."""
    worst = 0.0
    for nu in nus:
        for z in zs:
            w = specfun.whittaker_w_imag(specfun.WhittakerArgs(kappa=0.0, nu=nu, x=2.0 * z))
            ref = math.sqrt(2.0 * z / math.pi) * bessel_k_imag(nu, z)
            worst = max(worst, abs(w - ref) / abs(ref))
    return worst


@dataclass(frozen=True)
class RouteHandoff:
    kappa: float
    nu: float
    x: float
    left_route: str
    right_route: str
    rel_deviation: float


def route_consistency(kappas=(-2.0, 0.0, 1.5), nus=(0.8, 1.0, 2.0)) -> list[RouteHandoff]:
    """Relative deviation between adjacent evaluation routes of W at both
    hand-off arguments (series/bridge and bridge/asymptotic)."""
    out = []
    for k in kappas:
        for nu in nus:
            x1 = specfun.series_switch(k)
            m_lo, e_lo = specfun._w_series_scaled(k, nu, x1)
            m_hi, e_hi = specfun._w_bridge_scaled(k, nu, x1)
            dev = abs(m_lo * math.exp(e_lo) - m_hi * math.exp(e_hi)) / abs(m_hi * math.exp(e_hi))
            out.append(RouteHandoff(k, nu, x1, "series", "bridge", dev))
            x2 = specfun.asym_switch(k, nu)
            m_lo, e_lo = specfun._w_bridge_scaled(k, nu, x2)
            s, _, e_hi = specfun._w_asym_scaled(k, nu, x2)
            dev = abs(m_lo * math.exp(e_lo) - s * math.exp(e_hi)) / abs(s * math.exp(e_hi))
            out.append(RouteHandoff(k, nu, x2, "bridge", "asymptotic", dev))
    return out
