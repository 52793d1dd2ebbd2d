"""Reciprocity Module"""

from .unit_modules import UnitGModule, unit_gmodule, h_minus_one_stabilized, stabilized_cohomology
from .lcft import (
    NormSolution, NormCosetGroup, norm_equation, vanishing_approx, norm_coset_group, artin_symbol,
    norm_coset_check, h_minus_one_check, hilbert90_check, ramification_reciprocity_check,
    artin_reciprocity_check, base_change_check, vanishing_check,
)

__all__ = [
    "UnitGModule",
    "unit_gmodule",
    "h_minus_one_stabilized",
    "stabilized_cohomology",
    "NormSolution",
    "NormCosetGroup",
    "norm_equation",
    "vanishing_approx",
    "norm_coset_group",
    "artin_symbol",
    "norm_coset_check",
    "h_minus_one_check",
    "hilbert90_check",
    "ramification_reciprocity_check",
    "artin_reciprocity_check",
    "base_change_check",
    "vanishing_check",
]
