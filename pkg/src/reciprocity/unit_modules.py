"""
Unit G-Modules

U_{L_r} / U^n and L_r^x / U^n as Gal(L/K)-modules over the unramified
enlargement K_r, and the stabilized H^-1(G, U) with the classes of
sigma(pi_L) / pi_L.

Three realisations are used:

- r = 1: G acts on L directly;
- L/K totally ramified: G acts on L_r = L K_r through the automorphisms of
  L_r/K_r extending it;
- f > 1 and f | r: K_r (x) L splits into f copies of the compositum and G
  permutes them with coefficient twists.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from algebra.abgroup import FinAbGroup, IntMatrix, direct_sum
from cohomology.tatecoh import GModule, TateGroup, tate_group
from local_fields.extension import (
    Extension, TensorSplitting, base_change, base_change_lift, galois_group,
)
from local_fields.localfield import (
    Enlargement, LocalField, LocalFieldElem, multiplicative_quotient, unit_group_quotient,
)
from local_fields.ramify import herbrand_psi, lower_filtration, upper_breaks
from utils.errors import InconclusiveError, StructuralError

logger = logging.getLogger(__name__)


class UnitGModule:
    """
    Gal(L/K) acting on U_{L_r} / U^n (or L_r^x / U^n when ``multiplicative``).

    Args:
        ext: Galois extension L/K
        level: Truncation level n >= 1
        r: Degree of the unramified enlargement of K
        multiplicative: Use L^x / U^n, where sigma(pi) = pi * (sigma(pi) / pi)
    """

    def __init__(self, ext: Extension, level: int, r: int = 1, multiplicative: bool = False):
        self.logger = logging.getLogger(__name__)
        self.ext = ext
        self.level = level
        self.r = r
        self.multiplicative = multiplicative
        self.galois = galois_group(ext)
        self.split: Optional[TensorSplitting] = None

        if r == 1:
            self.field: LocalField = ext.top
            self.factors = 1
        elif ext.f == 1:
            self.base_changed = base_change(ext, r)
            self.lift = base_change_lift(ext, r)
            self.field = self.base_changed.top
            self.factors = 1
        else:
            self.split = TensorSplitting(ext, r)
            self.field = self.split.top
            self.factors = ext.f

        if multiplicative:
            self.quotient = multiplicative_quotient(self.field, level)
            self._exact = [self.field.uniformizer()] + self.quotient.units.exact_generators()
        else:
            self.quotient = unit_group_quotient(self.field, level)
            self._exact = self.quotient.exact_generators()
        self.block_rank = self.quotient.group.generator_count
        self.rank = self.block_rank * self.factors
        self.group: FinAbGroup = direct_sum([self.quotient.group] * self.factors)

        action = [self._action_matrix(idx) for idx in range(self.galois.order)]
        self.gmodule = GModule(self.galois.group, self.group, action)
        self.logger.info(f"{self}: {self.group}")

    def __repr__(self) -> str:
        kind = "L^x" if self.multiplicative else "U_L"
        return f"UnitGModule({kind}/U^{self.level} of {self.field.name}, r={self.r})"

    # ========================================================================
    # ACTION
    # ========================================================================

    def _block_images(self, apply: Callable[[LocalFieldElem], LocalFieldElem]) -> List[Tuple[int, ...]]:
        return [self.quotient.coordinates(apply(g)) for g in self._exact]

    def _single(self, idx: int) -> Callable[[LocalFieldElem], LocalFieldElem]:
        """sigma acting on the realising field (r = 1 or totally ramified)"""
        if self.r == 1:
            return lambda x: self.galois.apply(idx, x)
        gal_r = galois_group(self.base_changed)
        return lambda x: gal_r.apply(self.lift[idx], x)

    def _action_matrix(self, idx: int) -> IntMatrix:
        if self.split is None:
            return IntMatrix.from_columns(self._block_images(self._single(idx)), self.rank)
        f, b = self.factors, self.block_rank
        s = self.galois.leaf_power(idx)
        columns: List[List[int]] = [[0] * self.rank for _ in range(self.rank)]
        for j in range(f):
            gamma = self.split.gamma(idx, j)
            if gamma is None:
                raise StructuralError(f"No coefficient twist for sigma_{idx} at factor {j}")
            source = (j + s) % f
            images = self._block_images(lambda x, g=gamma: self.split.galois.apply(g, x))
            for i, img in enumerate(images):
                columns[source * b + i][j * b:(j + 1) * b] = img
        return IntMatrix.from_columns(columns, self.rank)

    def embed(self, x: LocalFieldElem) -> Tuple[int, ...]:
        """Presentation vector of x in L (a unit unless multiplicative)"""
        if self.r == 1:
            return self.quotient.coordinates(self.field.coerce(x))
        if self.split is None:
            y = Enlargement(self.ext.top, self.r).include(x)
            return self.quotient.coordinates(self.field.coerce(y))
        out: List[int] = []
        for j in range(self.factors):
            out.extend(self.quotient.coordinates(self.field.coerce(self.split.tau(j, x))))
        return tuple(out)

    def realised_coordinates(self, y: LocalFieldElem) -> Tuple[int, ...]:
        """Presentation vector of an element of the realising field"""
        if self.split is not None:
            raise StructuralError("realised_coordinates is defined for single-factor realisations")
        return self.quotient.coordinates(self.field.coerce(y))

    def apply(self, idx: int, x: LocalFieldElem) -> LocalFieldElem:
        """sigma on the realising field; single-factor realisations only"""
        if self.split is not None:
            raise StructuralError("apply is defined for single-factor realisations")
        return self._single(idx)(self.field.coerce(x))


@lru_cache(maxsize=32)
def unit_gmodule(ext: Extension, n: int, r: int = 1, multiplicative: bool = False) -> UnitGModule:
    return UnitGModule(ext, n, r, multiplicative)


# ============================================================================
# STABILIZED H^-1
# ============================================================================

def stable_levels(ext: Extension) -> Tuple[int, int]:
    """
    Truncation levels psi(t) + 1 and psi(t + |G|) + 1, t one past the
    largest upper break, at which U_L^n is cohomologically trivial.
    """
    d = lower_filtration(ext)
    t = math.ceil(max(upper_breaks(d), default=0)) + 1
    first = math.ceil(herbrand_psi(d, t)) + 1
    second = math.ceil(herbrand_psi(d, t + d.order)) + 1
    return first, second


@dataclass
class StableCohomology:
    """
    A Tate group of a unit module agreeing at two truncation levels, with
    the classes of named elements.
    """
    degree: int
    levels: Tuple[int, int]
    tate: TateGroup
    module: UnitGModule
    classes: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def group(self) -> FinAbGroup:
        return self.tate.group

    def classify(self, x: LocalFieldElem) -> Tuple[int, ...]:
        return self.tate.classify(self.module.embed(x))

    def is_homomorphism(self) -> bool:
        """sigma tau -> class(sigma) + class(tau) on the recorded classes"""
        g, h = self.module.galois.group, self.tate.group
        for a in g.elements:
            for b in g.elements:
                ab = g.mul(a, b)
                if ab not in self.classes:
                    continue
                total = tuple(x + y for x, y in zip(h.element(self.classes[a]),
                                                     h.element(self.classes[b])))
                if h.classify(total) != self.classes[ab]:
                    return False
        return True

    def is_onto(self) -> bool:
        h = self.tate.group
        image = h.subgroup([h.element(c) for c in self.classes.values()])
        return image.order == h.order


def stabilized_cohomology(ext: Extension, degree: int, r: int = 1,
                          multiplicative: bool = False,
                          levels: Optional[Sequence[int]] = None) -> StableCohomology:
    """
    H^degree(G, U_{L_r} / U^n) (or of L_r^x / U^n) computed at two levels.

    Raises:
        InconclusiveError: the two levels disagree or exceed working precision
    """
    first, second = levels if levels is not None else stable_levels(ext)
    cap = _realising_cap(ext, r)
    if second > cap:
        raise InconclusiveError(
            f"Stabilization level {second} exceeds working precision {cap}",
            obstruction={'levels': [first, second], 'capacity': cap})
    groups = []
    for n in (first, second):
        module = unit_gmodule(ext, n, r, multiplicative)
        groups.append((module, tate_group(module.gmodule, degree)))
    (_, low), (module, high) = groups
    if low.group.invariant_factors != high.group.invariant_factors:
        raise InconclusiveError(
            f"H^{degree} differs between levels {first} and {second}: {low.group} vs {high.group}",
            obstruction={'levels': [first, second],
                         'groups': [str(low.group), str(high.group)]})
    logger.info(f"H^{degree} of {module} stable at levels {first}, {second}: {high.group}")
    return StableCohomology(degree, (first, second), high, module)


def _realising_cap(ext: Extension, r: int) -> int:
    if r == 1:
        return ext.top.cap
    if ext.f == 1:
        return base_change(ext, r).top.cap
    return ext.top.cap


@lru_cache(maxsize=16)
def h_minus_one_stabilized(ext: Extension, r: int = 1) -> StableCohomology:
    """
    Stabilized H^-1(G, U_{L_r}) with the class of sigma(pi_L) / pi_L for
    every sigma in G.
    """
    result = stabilized_cohomology(ext, -1, r)
    pi = ext.top.uniformizer()
    for idx in range(result.module.galois.order):
        z = result.module.galois.apply(idx, pi) / pi
        result.classes[idx] = result.classify(z)
    logger.info(f"sigma(pi)/pi classes over K_{r}: {result.classes}")
    return result
