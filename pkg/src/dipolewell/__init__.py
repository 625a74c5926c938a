"""Bound-state analysis of the modified attractive inverse-square well that a
charged non-conductive cylinder induces on a neutral polarizable particle.

The closed-form spectral results live in dipolewell.spectrum, the Whittaker
special-function core in dipolewell.specfun, and the two independent
numerical eigensolvers (exact wall-condition roots and radial shooting) in
dipolewell.eigensolver. The hot kernels run compiled when the extension is
available; dipolewell.backend_name() reports which backend is active.
"""

from dipolewell._backend import backend_name
from dipolewell.model import (
    DerivedQuantities,
    EnergyTau,
    SystemParams,
    derived,
    electric_field,
    energy_tau,
    potential_energy,
)
from dipolewell.spectrum import (
    EnergyLevel,
    accumulation_energy,
    cutoff_scan,
    energy_level,
    smallx_radial,
    solve_quantization,
    spectrum,
    swave_bounds,
)
from dipolewell.eigensolver import (
    ComparisonReport,
    RadialSolution,
    compare,
    integrator_selfcheck,
    normalize,
    shoot,
    shooting_eigenvalues,
    wroot_eigenvalues,
)
from dipolewell.specfun import (
    WhittakerArgs,
    kummer_m,
    lngamma_complex,
    whittaker_m_imag,
    whittaker_w_imag,
    whittaker_w_imag_scaled,
    whittaker_w_smallx,
)

__version__ = "0.1.0"

__all__ = [
    "SystemParams",
    "DerivedQuantities",
    "EnergyTau",
    "electric_field",
    "potential_energy",
    "derived",
    "energy_tau",
    "EnergyLevel",
    "solve_quantization",
    "energy_level",
    "spectrum",
    "accumulation_energy",
    "swave_bounds",
    "cutoff_scan",
    "smallx_radial",
    "WhittakerArgs",
    "lngamma_complex",
    "kummer_m",
    "whittaker_m_imag",
    "whittaker_w_imag",
    "whittaker_w_imag_scaled",
    "whittaker_w_smallx",
    "RadialSolution",
    "ComparisonReport",
    "shoot",
    "normalize",
    "wroot_eigenvalues",
    "shooting_eigenvalues",
    "integrator_selfcheck",
    "compare",
    "backend_name",
    "__version__",
]
