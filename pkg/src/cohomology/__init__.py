"""Group Cohomology Module"""

from .groups import FiniteGroup, cyclic, klein, symmetric3, direct_product, named_group, abelianization
from .tatecoh import (
    GModule, TateComplex, ShortExactSequence, tate_cohomology, tate_group, induced_module,
    shapiro_check, long_exact_check, herbrand_quotient, group_abelianization,
)

__all__ = [
    "FiniteGroup",
    "cyclic",
    "klein",
    "symmetric3",
    "direct_product",
    "named_group",
    "abelianization",
    "GModule",
    "TateComplex",
    "ShortExactSequence",
    "tate_cohomology",
    "tate_group",
    "induced_module",
    "shapiro_check",
    "long_exact_check",
    "herbrand_quotient",
    "group_abelianization",
]
