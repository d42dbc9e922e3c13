"""Asymptotic iteration method: symbolic layer, generic engine, Manning-Rosen driver."""

from .engine import (AimConfig, AimRoot, CoefficientPair, SolvableForm, determinant, determinant_at,
                     find_roots, iterate, match_solvable_form, quantization_delta,
                     solve_eigenvalues)
from .manning_rosen import (MRLevel, MRSystem, aim_energies, aim_energy, classify_root, default_x0,
                            mr_system, mr_to_aim)
from .symbolic import BiPoly, SymbolicRational

__all__ = [
    "AimConfig", "AimRoot", "BiPoly", "CoefficientPair", "MRLevel", "MRSystem", "SolvableForm",
    "SymbolicRational", "aim_energies", "aim_energy", "classify_root", "default_x0",
    "determinant", "determinant_at", "find_roots", "iterate", "match_solvable_form", "mr_system",
    "mr_to_aim", "quantization_delta", "solve_eigenvalues",
]
