"""Physical model: a neutral polarizable particle outside the inner radius r0
of a charged non-conductive cylinder, in natural units (hbar = c = 1).

The induced-dipole interaction V = -alpha E^2 produces an attractive
inverse-square term, a repulsive Coulomb-type term and a constant offset.
The region r < r0 is excluded by a hard wall.
"""

from dataclasses import dataclass
from math import sqrt

from dipolewell.errors import ForbiddenRegionError, ImaginaryTauError


@dataclass(frozen=True)
class SystemParams:
    """Physical inputs: mass, polarizability, charge-density scale, wall radius,
    angular momentum quantum number."""

    m: float
    alpha: float
    rho0: float
    r0: float
    ell: int

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if not self.alpha > 0:
            raise ValueError(f"polarizability must be positive, got {self.alpha}")
        if not self.r0 > 0:
            raise ValueError(f"wall radius must be positive, got {self.r0}")
        if self.rho0 == 0:
            raise ValueError("charge-density scale must be nonzero")
        if not isinstance(self.ell, int):
            raise ValueError(f"angular momentum must be an integer, got {self.ell!r}")


@dataclass(frozen=True)
class DerivedQuantities:
    """Scalar coefficients of the radial equation.

    nu2 = 2 m alpha rho0^2 r0^4 - ell^2 (strength of the 1/r^2 attraction net
    of the centrifugal barrier), delta = 4 m alpha rho0^2 r0^3 (Coulomb-type
    coefficient), v_inf = alpha rho0^2 r0^2 (asymptotic well depth). nu is
    defined only in the oscillatory regime nu2 > 0.
    """

    nu2: float
    nu: float | None
    delta: float
    v_inf: float
    bound_regime: bool


@dataclass(frozen=True)
class EnergyTau:
    """Energy below -v_inf together with its decay rate tau, coupling
    kappa = delta/(2 tau) and wall argument x0 = 2 tau r0."""

    energy: float
    tau: float
    kappa: float
    x0: float


def electric_field(params: SystemParams, r: float) -> float:
    """Radial field magnitude rho0 r0 - rho0 r0^2 / r, defined for r >= r0."""
    if r < params.r0:
        raise ForbiddenRegionError(
            f"r = {r} is inside the hard wall at r0 = {params.r0}; "
            "the interior is forbidden for the particle"
        )
    return params.rho0 * params.r0 - params.rho0 * params.r0**2 / r


def potential_energy(params: SystemParams, r: float) -> float:
    """Induced-dipole potential -alpha E(r)^2, expanded into its three terms."""
    if r < params.r0:
        raise ForbiddenRegionError(
            f"r = {r} is inside the hard wall at r0 = {params.r0}; "
            "the interior is forbidden for the particle"
        )
    a, p, r0 = params.alpha, params.rho0, params.r0
    s = a * p * p
    return -s * r0**4 / r**2 + 2.0 * s * r0**3 / r - s * r0**2


def derived(params: SystemParams) -> DerivedQuantities:
    """Radial-equation coefficients for a parameter set.

    bound_regime is a flag, not an error: parameter sets with
    ell^2 >= 2 m alpha rho0^2 r0^4 are reported as outside the oscillatory
    regime and rejected by the spectral operations downstream.
    """
    m, a, p, r0, ell = params.m, params.alpha, params.rho0, params.r0, params.ell
    strength = 2.0 * m * a * p * p * r0**4
    nu2 = strength - float(ell * ell)
    bound = nu2 > 0.0
    return DerivedQuantities(
        nu2=nu2,
        nu=sqrt(nu2) if bound else None,
        delta=4.0 * m * a * p * p * r0**3,
        v_inf=a * p * p * r0**2,
        bound_regime=bound,
    )


def energy_tau(params: SystemParams, energy: float) -> EnergyTau:
    """Decay rate tau = sqrt(-2 m energy - 2 m v_inf) and derived kappa, x0.

    Only energies strictly below -v_inf have a real tau; anything else is a
    scattering energy and raises ImaginaryTauError.
    """
    d = derived(params)
    tau2 = -2.0 * params.m * energy - 2.0 * params.m * d.v_inf
    if tau2 <= 0.0:
        raise ImaginaryTauError(
            f"energy {energy} is not below the asymptotic depth -{d.v_inf}; "
            "tau would be imaginary (scattering regime)"
        )
    tau = sqrt(tau2)
    return EnergyTau(energy=energy, tau=tau, kappa=d.delta / (2.0 * tau), x0=2.0 * tau * params.r0)
