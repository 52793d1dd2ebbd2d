"""Exact Algebra Module"""

from .abgroup import (
    IntMatrix, FinAbGroup, AbHom, snf, cokernel, integer_kernel, solve_integer,
    iso_check, subgroup_quotient, direct_sum,
)
from .finite_field import GF, FiniteField, FieldEmbedding
from .witt import (
    GaloisRing, PerfRing, WittVector, ProfiniteModule, witt_add, witt_mul,
    teichmuller, frobenius, verschiebung, greenberg_points, structure_polynomials,
)

__all__ = [
    "IntMatrix",
    "FinAbGroup",
    "AbHom",
    "snf",
    "cokernel",
    "integer_kernel",
    "solve_integer",
    "iso_check",
    "subgroup_quotient",
    "direct_sum",
    "GF",
    "FiniteField",
    "FieldEmbedding",
    "GaloisRing",
    "PerfRing",
    "WittVector",
    "ProfiniteModule",
    "witt_add",
    "witt_mul",
    "teichmuller",
    "frobenius",
    "verschiebung",
    "greenberg_points",
    "structure_polynomials",
]
