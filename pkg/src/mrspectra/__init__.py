"""Bound-state spectra of the Manning-Rosen and Hulthen potentials."""

from .closedform import (EnergyResult, QuantumNumbers, energy_hulthen, energy_hulthen_swave,
                         energy_manning_rosen, energy_swave, lambda_coefficients, zeta)
from .errors import (BracketError, ConfigError, ConvergenceError, DegenerateDeterminantError,
                     DomainError, MRSpectraError, ParameterRangeError, ResourceError, SearchError,
                     UnsupportedSchemeError)
from .potentials import (ATOMIC, CentrifugalScheme, PhysicalConstants, PotentialParams,
                         centrifugal_term, effective_potential, hulthen_value, manning_rosen_value)

__version__ = "0.1.0"

__all__ = [
    "ATOMIC", "BracketError", "CentrifugalScheme", "ConfigError", "ConvergenceError",
    "DegenerateDeterminantError", "DomainError", "EnergyResult", "MRSpectraError",
    "ParameterRangeError", "PhysicalConstants", "PotentialParams", "QuantumNumbers",
    "ResourceError", "SearchError", "UnsupportedSchemeError", "centrifugal_term",
    "effective_potential", "energy_hulthen", "energy_hulthen_swave", "energy_manning_rosen",
    "energy_swave", "hulthen_value", "lambda_coefficients", "manning_rosen_value", "zeta",
]
