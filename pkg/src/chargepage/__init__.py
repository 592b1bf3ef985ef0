"""Typical entanglement entropy of fixed-charge sectors.

Three routes to the same quantity, built to cross-validate each other:
exact big-integer sector dimensions with the digamma formula,
thermodynamic-limit asymptotics, and Monte Carlo over Haar-random
fixed-charge states.
"""

from .models import (
    ChargeModel, GroupKind, SystemGeometry,
    catalog, catalog_names, load_model, weight_multiplicities,
)
from .sectors import (
    BlockTable, SectorTable, block_table, realizable_charges,
    sector_dims, weight_counts,
)
from .thermo import (
    ChargeDistribution, ThermoPoint, catalog_closed_forms, density_interval,
    gibbs, infinite_temperature_density, solve_beta_star, thermo_point,
)
from .asymptotics import (
    EntropyEstimate, LaplaceProblem, Regime, SubsystemChargeDistribution,
    VarianceAsymptotics, asymptotic_log_dim, average_entropy_asymptotic,
    charge_density_moments, entropy_term_breakdown, laplace_discontinuous,
    laplace_smooth, subsystem_charge_distribution, variance_asymptotic,
)
from .exactavg import ExactAverage, digamma, exact_average_entropy
from .montecarlo import McConfig, McRun, run, sample_entropy

__version__ = "0.1.0"

__all__ = [
    "ChargeModel", "GroupKind", "SystemGeometry", "catalog", "catalog_names",
    "load_model", "weight_multiplicities",
    "BlockTable", "SectorTable", "block_table", "realizable_charges",
    "sector_dims", "weight_counts",
    "ChargeDistribution", "ThermoPoint", "catalog_closed_forms",
    "density_interval", "gibbs", "infinite_temperature_density",
    "solve_beta_star", "thermo_point",
    "EntropyEstimate", "LaplaceProblem", "Regime",
    "SubsystemChargeDistribution", "VarianceAsymptotics",
    "asymptotic_log_dim", "average_entropy_asymptotic",
    "charge_density_moments", "entropy_term_breakdown",
    "laplace_discontinuous", "laplace_smooth",
    "subsystem_charge_distribution", "variance_asymptotic",
    "ExactAverage", "digamma", "exact_average_entropy",
    "McConfig", "McRun", "run", "sample_entropy",
    "__version__",
]
