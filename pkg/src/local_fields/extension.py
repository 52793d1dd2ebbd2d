"""
Extensions of Local Fields

Finite extensions L/K built as towers: an optional unramified step K -> K_f
followed by Eisenstein steps. Galois groups are realised by Hensel
root-finding of the conjugated step polynomials; automorphisms are stored
by their residue Frobenius power and the images of the new layer
generators.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.abgroup import FinAbGroup, direct_sum, group_from_factors
from algebra.finite_field import GF, FiniteField, standard_embedding
from algebra.witt import PerfRing
from cohomology.groups import FiniteGroup
from utils.errors import PrecisionError, StructuralError, UnsupportedInputError

from .localfield import (
    CoeffSpec, Enlargement, LocalField, LocalFieldElem, unit_group_quotient,
)

logger = logging.getLogger(__name__)

UNRAMIFIED = 'unram'
EISENSTEIN = 'eisenstein'


@dataclass(frozen=True)
class TowerStep:
    """One step of a tower: ('unram', f) or ('eisenstein', coefficients)"""
    kind: str
    degree: int
    coefficients: Tuple[CoeffSpec, ...] = ()

    @classmethod
    def unramified(cls, f: int) -> 'TowerStep':
        return cls(UNRAMIFIED, f)

    @classmethod
    def eisenstein(cls, coefficients: Sequence) -> 'TowerStep':
        coeffs = tuple(int(c) if isinstance(c, (int, np.integer)) else tuple(int(d) for d in c)
                       for c in coefficients)
        return cls(EISENSTEIN, len(coeffs), coeffs)


def _as_step(step) -> TowerStep:
    if isinstance(step, TowerStep):
        return step
    if isinstance(step, dict) and len(step) == 1:
        step = next(iter(step.items()))
    kind, data = step
    if kind in (UNRAMIFIED, 'unramified'):
        return TowerStep.unramified(int(data))
    if kind == EISENSTEIN:
        return TowerStep.eisenstein(data)
    raise StructuralError(f"Unknown tower step '{kind}'")


class Extension:
    """
    L/K as a tower K -> K_f -> L with K_f/K unramified of degree f and
    L/K_f given by Eisenstein steps.

    Args:
        base: The field K
        steps: TowerStep values (or ('unram', f) / ('eisenstein', coeffs));
            at most one unramified step, placed first
    """

    def __init__(self, base: LocalField, steps: Sequence = ()):
        self.logger = logging.getLogger(__name__)
        self.base = base
        self.steps: Tuple[TowerStep, ...] = tuple(_as_step(s) for s in steps)
        unram = [i for i, s in enumerate(self.steps) if s.kind == UNRAMIFIED]
        if len(unram) > 1 or (unram and unram[0] != 0):
            raise UnsupportedInputError("Towers take at most one unramified step, placed first")
        for s in self.steps:
            if s.degree < 1:
                raise StructuralError(f"Tower step {s} has degree < 1")
            if s.kind == EISENSTEIN and s.degree < 2:
                raise UnsupportedInputError("Eisenstein steps must have degree >= 2")

        self.f = self.steps[0].degree if unram else 1
        self.enlargement = Enlargement(base, self.f)
        self.middle: LocalField = self.enlargement.top
        new_layers = [s.coefficients for s in self.steps if s.kind == EISENSTEIN]
        self.e = 1
        for layer in new_layers:
            self.e *= len(layer)
        self.top = LocalField(base.kind, self.middle.residue,
                              self.middle.layers + tuple(new_layers), base.precision * self.e)
        self.base_depth = base.depth
        self.degree = self.e * self.f
        self._galois: Optional['GaloisGroup'] = None
        self.logger.info(f"Extension {self.top.name}/{base.name}: e={self.e}, f={self.f}")

    def __repr__(self) -> str:
        return f"Extension({self.top.name}/{self.base.name}, e={self.e}, f={self.f})"

    @property
    def new_levels(self) -> range:
        """Ring levels of the Eisenstein steps of L over K_f"""
        return range(self.base_depth + 1, self.top.depth + 1)

    @property
    def residue_embedding(self):
        return self.enlargement.field_map

    def uniformizer(self) -> LocalFieldElem:
        return self.top.uniformizer()

    chosen_prime = uniformizer

    def generators(self) -> List[LocalFieldElem]:
        """Uniformizers of the new layers, as elements of L"""
        return [self.top.layer_generator(level) for level in self.new_levels]

    def include(self, x: LocalFieldElem) -> LocalFieldElem:
        """K -> L"""
        return self.top.include_from(self.enlargement.include(x), self.base_depth)

    def norm(self, x: LocalFieldElem) -> LocalFieldElem:
        """N_{L/K}: step determinants down to K_f, then the Frobenius product"""
        x = self.top.coerce(x)
        y = self.top.layer_norm(x, self.base_depth)
        return self.enlargement.norm(y)

    def trace(self, x: LocalFieldElem) -> LocalFieldElem:
        x = self.top.coerce(x)
        y = self.top.layer_trace(x, self.base_depth)
        return self.enlargement.trace(y)

    def is_galois(self) -> bool:
        try:
            galois_group(self)
        except StructuralError:
            return False
        return True


def max_unramified_subext(ext: Extension) -> Extension:
    """K_f/K inside L/K"""
    steps = [TowerStep.unramified(ext.f)] if ext.f > 1 else []
    return Extension(ext.base, steps)


@lru_cache(maxsize=32)
def base_change(ext: Extension, r: int) -> Extension:
    """L_r / K_r for a totally ramified L/K and the unramified K_r of degree r"""
    if ext.f != 1:
        raise UnsupportedInputError("Base change is implemented for totally ramified extensions")
    if r == 1:
        return ext
    enlargement = Enlargement(ext.base, r)
    emb = enlargement.field_map
    steps = [TowerStep(EISENSTEIN, s.degree,
                       tuple(c if isinstance(c, int) else tuple(emb(d) for d in c)
                             for c in s.coefficients))
             for s in ext.steps]
    return Extension(enlargement.top, steps)


def different_valuation(ext: Extension) -> int:
    """v_L of the different of L/K from v(E'(pi)) of each Eisenstein step"""
    L = ext.top
    total = 0
    for level in ext.new_levels:
        ring = L.rings[level]
        deriv = ring.scalar(ring.e, ring.pi_power(ring.e - 1))
        for j in range(1, ring.e):
            lifted = ring.mul_pi_power(ring.include(ring.below.scalar(j, ring.poly[j])), j - 1)
            deriv = ring.add(deriv, lifted)
        v = ring.valuation(deriv)
        if v >= ring.cap:
            raise PrecisionError("Different exceeds working precision", required=ring.cap + 1)
        total += v * (L.e_abs // L.layer_degree(level))
    return total


# ============================================================================
# HENSEL ROOTS
# ============================================================================

def _evaluate(ring, coeffs, x):
    acc = ring.zero
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


def hensel_roots(poly: Sequence[LocalFieldElem], field: Optional[LocalField] = None,
                 precision: Optional[int] = None) -> List[LocalFieldElem]:
    """
    All roots in the ring of integers of a polynomial with integral
    coefficients and unit leading coefficient.

    Tree search over Teichmuller digits: a node x known mod pi^k survives
    while v(P(x)) >= k, and switches to Newton iteration once
    v(P(x)) > 2 v(P'(x)) with v(P'(x)) < k, where the root in the node
    ball is unique.

    Args:
        poly: Coefficients c_0, ..., c_n (lowest degree first)
        field: Field of the coefficients (default: that of c_0)
        precision: Requested absolute precision of the roots

    Returns:
        Roots ordered by their digit expansions
    """
    field = field or poly[0].field
    ring = field.ring
    poly = [field.coerce(c) for c in poly]
    if not poly[-1].is_unit():
        raise UnsupportedInputError("Leading coefficient must be a unit")
    if any(not c.is_integral() for c in poly):
        raise UnsupportedInputError("Polynomial coefficients must be integral")

    bound = min(min(c.precision for c in poly), field.cap)
    coeffs = [c.to_ring() for c in poly]
    deriv = [ring.scalar(i, c) for i, c in enumerate(coeffs)][1:]

    def val(a) -> int:
        return min(ring.valuation(a), bound)

    roots: List[Tuple[Any, int]] = []
    stack = [(ring.zero, 0)]
    while stack:
        x, k = stack.pop()
        fx = _evaluate(ring, coeffs, x)
        vf = val(fx)
        if vf < k:
            continue
        vd = val(_evaluate(ring, deriv, x))
        if vd < k and vd < bound and vf > 2 * vd:
            y = x
            for _ in range(64):
                fy = _evaluate(ring, coeffs, y)
                if val(fy) >= bound:
                    break
                dy = _evaluate(ring, deriv, y)
                step = ring.mul(ring.shift_down(fy, vd), ring.inverse(ring.shift_down(dy, vd)))
                y = ring.sub(y, step)
            if val(ring.sub(y, x)) >= k:
                roots.append((y, bound - vd))
            continue
        if k >= bound:
            raise UnsupportedInputError(
                f"Roots are not separated at precision {bound}; the polynomial looks inseparable")
        for d in field.residue.elements():
            stack.append((ring.add(x, ring.mul_pi_power(ring.teichmuller(d), k)), k + 1))

    out = []
    for y, acc in roots:
        prec = acc if precision is None else min(acc, precision)
        out.append(field.from_ring(y, prec))
    out.sort(key=lambda r: (r.lead if r.lead is not None else r.precision, r.digits()))
    logger.debug(f"hensel_roots: {len(out)} roots of a degree {len(poly) - 1} polynomial")
    return out


# ============================================================================
# AUTOMORPHISMS AND GALOIS GROUPS
# ============================================================================

class Automorphism:
    """
    A K-automorphism of L: the q_K-Frobenius power on the residue side and
    the images (top-ring elements, accurate to ``accuracy``) of the new
    layer generators.
    """

    def __init__(self, ext: Extension, leaf_power: int, images: Sequence, accuracy: int):
        self.ext = ext
        self.leaf_power = leaf_power % ext.f
        self.images = tuple(images)
        self.accuracy = accuracy

    @classmethod
    def identity(cls, ext: Extension) -> 'Automorphism':
        L = ext.top
        images = [L.lift_ring(L.rings[level].uniformizer, level) for level in ext.new_levels]
        return cls(ext, 0, images, L.cap)

    def apply_ring(self, a, level: Optional[int] = None):
        """Image of an element of rings[level] as a top-ring element"""
        L = self.ext.top
        level = L.depth if level is None else level
        if level <= self.ext.base_depth:
            steps = self.leaf_power * self.ext.base.residue.m
            return L.lift_ring(L.rings[level].leaf_frobenius(a, steps), level)
        img = self.images[level - self.ext.base_depth - 1]
        acc = L.ring.zero
        for c in reversed(a):
            acc = L.ring.add(L.ring.mul(acc, img), self.apply_ring(c, level - 1))
        return acc

    def __call__(self, x: LocalFieldElem) -> LocalFieldElem:
        L = self.ext.top
        x = L.coerce(x)
        if x.is_zero:
            return x
        unit = L.from_ring(self.apply_ring(x.unit), min(x.relative_precision, self.accuracy))
        if x.lead == 0:
            return unit
        return unit * self.image_of_uniformizer() ** x.lead

    def image_of_uniformizer(self) -> LocalFieldElem:
        L = self.ext.top
        if not self.images:
            return L.uniformizer()
        return L.from_ring(self.images[-1], self.accuracy)

    def compose(self, other: 'Automorphism') -> 'Automorphism':
        """self after other"""
        images = [self.apply_ring(img) for img in other.images]
        return Automorphism(self.ext, self.leaf_power + other.leaf_power, images,
                            min(self.accuracy, other.accuracy))

    def signature(self, precision: int) -> Tuple:
        L = self.ext.top
        parts = []
        for img in self.images:
            y = L.from_ring(img, precision)
            parts.append((y.lead, tuple(y.digits())))
        return (self.leaf_power,) + tuple(parts)

    def __repr__(self) -> str:
        return f"Automorphism(frob^{self.leaf_power}, acc={self.accuracy})"


class GaloisGroup:
    """
    Gal(L/K) as a list of automorphisms (identity first) with its verified
    multiplication table.
    """

    def __init__(self, ext: Extension, automorphisms: Sequence[Automorphism]):
        self.logger = logging.getLogger(__name__)
        self.ext = ext
        auts = list(automorphisms)
        self.precision = min(a.accuracy for a in auts) - 1
        ident = Automorphism.identity(ext).signature(self.precision)
        auts.sort(key=lambda a: (a.signature(self.precision) != ident, a.signature(self.precision)))
        self.automorphisms = auts
        self._index: Dict[Tuple, int] = {}
        for i, a in enumerate(auts):
            sig = a.signature(self.precision)
            if sig in self._index:
                raise StructuralError("Two conjugates agree to working precision; raise the precision")
            self._index[sig] = i

        table = []
        for a in auts:
            row = []
            for b in auts:
                sig = a.compose(b).signature(self.precision)
                if sig not in self._index:
                    raise StructuralError("Galois group is not closed under composition")
                row.append(self._index[sig])
            table.append(row)
        labels = [f"s{i}" for i in range(len(auts))]
        self.group = FiniteGroup(table, labels, f"Gal({ext.top.name}/{ext.base.name})")
        self.logger.info(f"Realised {self.group.name} of order {self.group.order}")

    def __len__(self) -> int:
        return len(self.automorphisms)

    def __getitem__(self, i: int) -> Automorphism:
        return self.automorphisms[i]

    def __iter__(self):
        return iter(self.automorphisms)

    @property
    def order(self) -> int:
        return len(self.automorphisms)

    @property
    def identity(self) -> int:
        return 0

    def index(self, sigma: Automorphism) -> int:
        sig = sigma.signature(self.precision)
        if sig not in self._index:
            raise StructuralError(f"{sigma} is not in {self.group.name}")
        return self._index[sig]

    def leaf_power(self, i: int) -> int:
        return self.automorphisms[i].leaf_power

    def apply(self, i: int, x: LocalFieldElem) -> LocalFieldElem:
        return self.automorphisms[i](x)

    def inertia(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.automorphisms) if a.leaf_power == 0)


def galois_group(ext: Extension) -> GaloisGroup:
    """
    Realise Gal(L/K) by finding, for every residue Frobenius power, all
    roots in L of the successively conjugated step polynomials.

    Raises:
        StructuralError: L/K is not Galois (conjugates missing from L)
    """
    if ext._galois is not None:
        return ext._galois
    L = ext.top
    found: List[Automorphism] = []
    missing: List[str] = []
    for s in range(ext.f):
        partial = [((), L.cap)]
        for level in ext.new_levels:
            layer = L.rings[level]
            extended = []
            for images, acc in partial:
                sigma = Automorphism(ext, s, images, acc)
                poly = [L.from_ring(sigma.apply_ring(c, level - 1), acc) for c in layer.poly]
                poly.append(L.one())
                roots = hensel_roots(poly, L)
                if len(roots) != layer.e:
                    missing.append(f"frob^{s}, layer {level}: {len(roots)} of {layer.e} conjugates in L")
                for r in roots:
                    extended.append((images + (r.to_ring(),), min(acc, r.precision)))
            partial = extended
        found.extend(Automorphism(ext, s, images, acc) for images, acc in partial)
    if len(found) != ext.degree:
        raise StructuralError(f"{ext.top.name}/{ext.base.name} is not Galois: "
                              f"found {len(found)} of {ext.degree} automorphisms; "
                              + "; ".join(missing))
    ext._galois = GaloisGroup(ext, found)
    return ext._galois


def norm_by_conjugates(ext: Extension, x: LocalFieldElem) -> LocalFieldElem:
    """prod_sigma sigma(x) as an element of L (Galois case)"""
    out = ext.top.one()
    for sigma in galois_group(ext):
        out = out * sigma(x)
    return out


# ============================================================================
# TENSOR DECOMPOSITION
# ============================================================================

def _solve_linear(a: List[List[LocalFieldElem]], b: List[LocalFieldElem]) -> List[LocalFieldElem]:
    """Gaussian elimination over a local field, pivoting on least valuation"""
    n = len(a)
    rows = [list(r) + [v] for r, v in zip(a, b)]
    for col in range(n):
        candidates = [i for i in range(col, n) if not rows[i][col].is_zero]
        if not candidates:
            raise PrecisionError("Singular system at working precision",
                                 required=rows[col][col].precision + 1)
        pivot = min(candidates, key=lambda i: rows[i][col].lead)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        for i in range(n):
            if i != col and not rows[i][col].is_zero:
                factor = rows[i][col]
                rows[i] = [v - factor * w for v, w in zip(rows[i], rows[col])]
    return [rows[i][n] for i in range(n)]


@dataclass
class TensorDecomposition:
    """
    O_{K_r} (x)_{O_K} O_L split into f factors, each realised inside the
    compositum Lambda = K_r L via a (x) b -> a * tau_j(b).
    """
    ext: Extension
    r: int
    compositum: Extension
    factor_count: int
    idempotents: List[List[LocalFieldElem]]
    frobenius_permutation: Tuple[int, ...]
    galois_permutations: Dict[int, Tuple[int, ...]]
    failures: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.failures


class TensorSplitting:
    """
    K_r (x)_K L as f copies of the compositum Lambda = K_r L.

    Factor j is the image of a (x) b -> a * tau_j(b) with tau_j = phi^j o iota_0,
    where iota_0: L -> Lambda is the standard inclusion and phi in Gal(Lambda/K)
    restricts to the q-Frobenius of K_r. Under 1 (x) sigma, factor j of the
    image is gamma_j(w_{j+s}) where s is the Frobenius power of sigma and
    gamma_j in Gal(Lambda/K_r) satisfies gamma_j o tau_{j+s} = tau_j o sigma.

    Raises:
        StructuralError: f does not divide r
    """

    def __init__(self, ext: Extension, r: int):
        self.logger = logging.getLogger(__name__)
        K, f = ext.base, ext.f
        if r < 1 or r % f:
            raise StructuralError(f"Residue degree {f} does not divide {r}")
        if f > 1 and K.depth:
            raise UnsupportedInputError("Tensor decomposition with f > 1 needs an unramified base")
        self.ext = ext
        self.r = r
        self.factor_count = f

        L = ext.top
        self.residue_map = standard_embedding(L.residue, GF(K.p, K.residue.m * r))
        steps = [TowerStep.unramified(r)] if r > 1 else []
        for s in ext.steps:
            if s.kind == EISENSTEIN:
                coeffs = tuple(c if isinstance(c, int) else tuple(self.residue_map(d) for d in c)
                               for c in s.coefficients)
                steps.append(TowerStep(EISENSTEIN, s.degree, coeffs))
        self.compositum = Extension(K, steps)
        self.iota = Enlargement(L, r // f)
        if self.iota.top != self.compositum.top:
            raise StructuralError("Compositum does not match the unramified enlargement of L")
        self.galois = galois_group(self.compositum)
        self.phi_index = next(i for i in range(self.galois.order)
                              if self.galois.leaf_power(i) == 1 % r)
        self._fixing_kr = [i for i in range(self.galois.order)
                           if self.galois.leaf_power(i) % r == 0]
        self._gammas: Dict[Tuple[int, int], Optional[int]] = {}

    @property
    def top(self) -> LocalField:
        return self.compositum.top

    @property
    def middle(self) -> LocalField:
        """K_r"""
        return self.compositum.middle

    def tau(self, j: int, b: LocalFieldElem) -> LocalFieldElem:
        y = self.iota.include(b)
        for _ in range(j % self.factor_count):
            y = self.galois.apply(self.phi_index, y)
        return y

    def into_lambda(self, a: LocalFieldElem) -> LocalFieldElem:
        return self.top.include_from(a, self.compositum.base_depth)

    def realise(self, a: LocalFieldElem, b: LocalFieldElem) -> List[LocalFieldElem]:
        return [self.into_lambda(a) * self.tau(j, b) for j in range(self.factor_count)]

    def fixing_kr(self, lhs: Sequence[LocalFieldElem], rhs: Sequence[LocalFieldElem]) -> Optional[int]:
        """gamma in Gal(Lambda/K_r) with gamma(lhs_i) = rhs_i"""
        for i in self._fixing_kr:
            if all(self.galois.apply(i, a).equals(b) for a, b in zip(lhs, rhs)):
                return i
        return None

    def gamma(self, sigma: int, j: int) -> Optional[int]:
        """Coefficient twist of sigma in Gal(L/K) at factor j"""
        key = (sigma, j)
        if key not in self._gammas:
            f = self.factor_count
            aut = galois_group(self.ext)[sigma]
            jj = (j + aut.leaf_power) % f
            gens = self.ext.generators()
            self._gammas[key] = self.fixing_kr([self.tau(jj, g) for g in gens],
                                               [self.tau(j, aut(g)) for g in gens])
        return self._gammas[key]

    def frobenius_twist(self) -> Optional[int]:
        """gamma with gamma o phi o tau_{f-1} = tau_0 on the generators of L"""
        gens = self.ext.generators()
        phi = self.galois[self.phi_index]
        return self.fixing_kr([phi(self.tau(self.factor_count - 1, g)) for g in gens],
                              [self.tau(0, g) for g in gens])


def base_change_lift(ext: Extension, r: int) -> Dict[int, int]:
    """
    Index map Gal(L/K) -> Gal(L_r/K_r) for totally ramified L/K: sigma goes
    to the automorphism that agrees with it on L.
    """
    ext_r = base_change(ext, r)
    if r == 1:
        return {i: i for i in range(galois_group(ext).order)}
    gal, gal_r = galois_group(ext), galois_group(ext_r)
    iota = Enlargement(ext.top, r)
    gens = ext.generators()
    lifted = [iota.include(g) for g in gens]
    out = {}
    for i in range(gal.order):
        want = [iota.include(gal.apply(i, g)) for g in gens]
        hits = [k for k in range(gal_r.order)
                if all(gal_r.apply(k, a).equals(b) for a, b in zip(lifted, want))]
        if len(hits) != 1:
            raise PrecisionError(f"Cannot match sigma_{i} with Gal({ext_r.top.name}/{ext_r.base.name})",
                                 required=ext_r.top.cap + 1)
        out[i] = hits[0]
    return out


def totally_ramified_part(ext: Extension) -> Extension:
    """L / K_f: the Eisenstein steps of L/K over its maximal unramified subfield"""
    return Extension(ext.middle, [s for s in ext.steps if s.kind == EISENSTEIN])


def ramified_subext(ext: Extension) -> Extension:
    """
    F/K cut out by the Eisenstein steps of L/K, so that L = F K_f.

    Raises:
        UnsupportedInputError: a step coefficient does not lie in K
    """
    emb = ext.residue_embedding
    steps = []
    for s in ext.steps:
        if s.kind != EISENSTEIN:
            continue
        try:
            coeffs = tuple(c if isinstance(c, int) else tuple(emb.preimage(d) for d in c)
                           for c in s.coefficients)
        except KeyError:
            raise UnsupportedInputError(
                f"Eisenstein step {s} has coefficients outside {ext.base.name}") from None
        steps.append(TowerStep(EISENSTEIN, s.degree, coeffs))
    return Extension(ext.base, steps)


@lru_cache(maxsize=32)
def ramified_restriction(ext: Extension) -> Tuple[Extension, Dict[int, int]]:
    """
    F/K with L = F K_f and the restriction Gal(L/K) -> Gal(F/K) as an
    index map; F is included in L through the degree-f enlargement of F.

    Raises:
        StructuralError: F/K is not Galois
    """
    sub = ramified_subext(ext)
    gal, gal_f = galois_group(ext), galois_group(sub)
    iota = Enlargement(sub.top, ext.f)
    L = ext.top
    gens = sub.generators()
    lifted = [L.coerce(iota.include(g)) for g in gens]
    images = {k: [L.coerce(iota.include(gal_f.apply(k, g))) for g in gens]
              for k in range(gal_f.order)}
    out = {}
    for i in range(gal.order):
        got = [gal.apply(i, a) for a in lifted]
        hits = [k for k, want in images.items() if all(a.equals(b) for a, b in zip(got, want))]
        if len(hits) != 1:
            raise PrecisionError(f"Cannot restrict sigma_{i} to {sub.top.name}",
                                 required=L.cap + 1)
        out[i] = hits[0]
    return sub, out


@lru_cache(maxsize=32)
def inertia_embedding(ext: Extension) -> Tuple[Extension, Dict[int, int]]:
    """L/K_f and the inclusion Gal(L/K_f) -> Gal(L/K) onto the inertia subgroup"""
    ext_e = totally_ramified_part(ext)
    gal, gal_e = galois_group(ext), galois_group(ext_e)
    L = ext.top
    gens = [L.coerce(g) for g in ext_e.generators()]
    out = {}
    for k in range(gal_e.order):
        want = [gal_e.apply(k, g) for g in ext_e.generators()]
        hits = [i for i in gal.inertia()
                if all(gal.apply(i, g).equals(L.coerce(w)) for g, w in zip(gens, want))]
        if len(hits) != 1:
            raise PrecisionError(f"Cannot match sigma_{k} of {ext_e.top.name}/{ext_e.base.name}",
                                 required=L.cap + 1)
        out[k] = hits[0]
    return ext_e, out


def tensor_decompose(ext: Extension, r: int, samples: int = 3, seed: int = 0) -> TensorDecomposition:
    """
    Realise O_{K_r} (x) O_L = prod_{rho: k' -> k_r} O_{K_r} (x)_rho O_L.

    The checks cover the idempotents, the Frobenius action F (x) 1 (factor
    j -> j + 1, coefficient twist phi) and the action 1 (x) sigma (factor
    j -> j - s for sigma of Frobenius power s).

    Raises:
        StructuralError: f does not divide r
    """
    split = TensorSplitting(ext, r)
    K, f, L = ext.base, ext.f, ext.top
    psi = split.residue_map
    lam, gal, Kr = split.compositum, split.galois, split.middle
    frob_r = lam.enlargement
    phi = gal[split.phi_index]

    # idempotents in K_r (x) K_f = K_r[theta], theta the Teichmuller lift of a
    # primitive element of k'
    zeta = L.residue.generator
    theta_j = [Kr.teichmuller(Kr.residue.frobenius(psi(zeta), j * K.residue.m)) for j in range(f)]
    vandermonde = [[t ** i for i in range(f)] for t in theta_j]
    idempotents = []
    failures: List[str] = []
    for k in range(f):
        target = [Kr.one() if j == k else Kr.zero(Kr.cap) for j in range(f)]
        idempotents.append(_solve_linear(vandermonde, target))

    def component(coeffs: List[LocalFieldElem], j: int, shift: int = 0) -> LocalFieldElem:
        """Factor j of sum a_i (x) sigma(theta)^i with sigma of Frobenius power shift"""
        t = theta_j[(j + shift) % f]
        acc = Kr.zero(Kr.cap)
        for i, a in enumerate(coeffs):
            acc = acc + a * t ** i
        return acc

    total = [sum((e[i] for e in idempotents), Kr.zero(Kr.cap)) for i in range(f)]
    if any(not component(total, j).equals(1) for j in range(f)):
        failures.append("idempotents do not sum to 1")
    for k, eps in enumerate(idempotents):
        for j in range(f):
            want = 1 if j == k else 0
            if not component(eps, j).equals(want):
                failures.append(f"idempotent {k} has wrong factor {j}")

    # F (x) 1 moves factor k to k + 1
    frob_perm = []
    for k, eps in enumerate(idempotents):
        moved = [frob_r.frobenius(a) for a in eps]
        hits = [j for j in range(f) if component(moved, j).equals(1)]
        frob_perm.append(hits[0] if len(hits) == 1 else -1)
    if tuple(frob_perm) != tuple((k + 1) % f for k in range(f)):
        failures.append(f"Frobenius permutes factors as {frob_perm}")

    # 1 (x) sigma moves factor k to k - s
    gal_l = galois_group(ext)
    galois_perm: Dict[int, Tuple[int, ...]] = {}
    for idx in range(gal_l.order):
        s = gal_l.leaf_power(idx)
        perm = []
        for k, eps in enumerate(idempotents):
            hits = [j for j in range(f) if component(eps, j, shift=s).equals(1)]
            perm.append(hits[0] if len(hits) == 1 else -1)
        galois_perm[idx] = tuple(perm)
        if tuple(perm) != tuple((k - s) % f for k in range(f)):
            failures.append(f"sigma_{idx} permutes factors as {perm}")

    # action formulas on sampled pure tensors
    rng = np.random.default_rng(seed)
    twist = split.frobenius_twist()
    if twist is None:
        failures.append("no coefficient twist for the Frobenius action")
    for t in range(samples):
        a = Kr.random_element(rng, (0, 2), relative=max(2, K.precision // 4))
        b = L.random_element(rng, (0, 2), relative=max(2, L.precision // 4))
        w = split.realise(a, b)
        fw = split.realise(frob_r.frobenius(a), b)
        for j in range(f):
            if j:
                pred = phi(w[j - 1])
            elif twist is not None:
                pred = gal.apply(twist, phi(w[f - 1]))
            else:
                continue
            if not pred.equals(fw[j]):
                failures.append(f"sample {t}: Frobenius formula fails at factor {j}")
        for idx in range(gal_l.order):
            s = gal_l.leaf_power(idx)
            sw = split.realise(a, gal_l.apply(idx, b))
            for j in range(f):
                gamma = split.gamma(idx, j)
                if gamma is None or not gal.apply(gamma, w[(j + s) % f]).equals(sw[j]):
                    failures.append(f"sample {t}: sigma_{idx} formula fails at factor {j}")

    logger.info(f"Tensor decomposition of {ext} over K_{r}: {f} factors, "
                f"{'verified' if not failures else 'failures: ' + str(len(failures))}")
    return TensorDecomposition(ext, r, lam, f, idempotents, tuple(frob_perm), galois_perm, failures)


# ============================================================================
# WEIL RESTRICTION ON POINTS
# ============================================================================

FUNCTORS = ('additive', 'multiplicative', 'units')


def tensor_residue_ring(k_prime: FiniteField, k: FiniteField, ring: PerfRing) -> PerfRing:
    """R (x)_k k' as a product of fields: F_{q^a} (x) F_{q^d} = F_{q^lcm(a,d)}^gcd(a,d)"""
    if k_prime.p != k.p or k_prime.m % k.m:
        raise StructuralError(f"{k_prime} is not an extension of {k}")
    d = k_prime.m // k.m
    comps = []
    for comp in ring.components:
        if comp.p != k.p or comp.m % k.m:
            raise StructuralError(f"{comp} is not an algebra over {k}")
        a = comp.m // k.m
        g = gcd(a, d)
        comps.extend([GF(k.p, k.m * a * d // g)] * g)
    return PerfRing(comps)


def weil_restriction_points(k_prime: FiniteField, k: FiniteField, functor: str, ring: PerfRing,
                            field: Optional[LocalField] = None, level: int = 1) -> FinAbGroup:
    """
    (Res_{k'/k} F)(R) = F(R (x)_k k').

    Args:
        k_prime, k: The residue extension k'/k
        functor: 'additive' (G_a), 'multiplicative' (G_m) or 'units'
            (U_L / U_L^level for a field L with residue field k')
        ring: Finite perfect k-algebra R
        field: L, required for 'units'
        level: Truncation level for 'units'
    """
    if functor not in FUNCTORS:
        raise StructuralError(f"Unknown functor '{functor}'. Available: {list(FUNCTORS)}")
    split = tensor_residue_ring(k_prime, k, ring)
    pieces = []
    for comp in split.components:
        if functor == 'additive':
            pieces.append(group_from_factors([comp.p] * comp.m))
        elif functor == 'multiplicative':
            pieces.append(group_from_factors([comp.q - 1] if comp.q > 2 else []))
        else:
            if field is None or field.residue != k_prime:
                raise StructuralError("The units functor needs a field with residue field k'")
            top = Enlargement(field, comp.m // k_prime.m, comp).top
            pieces.append(unit_group_quotient(top, level).group)
    logger.debug(f"R (x) k' = {split}")
    return direct_sum(pieces)
