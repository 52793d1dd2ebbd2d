"""Local Fields Module"""

from .localfield import (
    LocalField, LocalFieldElem, UnitQuotient, MultiplicativeQuotient, Enlargement,
    padic_field, laurent_field, unit_group_quotient, multiplicative_quotient,
    unramified_extension, points_split_check,
)
from .extension import (
    TowerStep, Extension, GaloisGroup, galois_group, base_change, hensel_roots,
    tensor_decompose, weil_restriction_points, totally_ramified_part, ramified_subext,
    ramified_restriction, inertia_embedding,
)
from .ramify import (
    lower_filtration, herbrand_phi, herbrand_psi, upper_breaks, ramification_table,
    norm_filtration_check, graded_norm_check,
)
from .scenarios import FieldScenario, Scenarios

__all__ = [
    "LocalField",
    "LocalFieldElem",
    "UnitQuotient",
    "MultiplicativeQuotient",
    "Enlargement",
    "padic_field",
    "laurent_field",
    "unit_group_quotient",
    "multiplicative_quotient",
    "unramified_extension",
    "points_split_check",
    "TowerStep",
    "Extension",
    "GaloisGroup",
    "galois_group",
    "base_change",
    "hensel_roots",
    "tensor_decompose",
    "weil_restriction_points",
    "totally_ramified_part",
    "ramified_subext",
    "ramified_restriction",
    "inertia_embedding",
    "lower_filtration",
    "herbrand_phi",
    "herbrand_psi",
    "upper_breaks",
    "ramification_table",
    "norm_filtration_check",
    "graded_norm_check",
    "FieldScenario",
    "Scenarios",
]
