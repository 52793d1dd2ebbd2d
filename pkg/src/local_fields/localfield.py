"""
Local Fields

Complete discrete valuation fields with finite residue field F_q, held at
finite precision. Two base fields are supported:

- mixed characteristic: the unramified field with ring of integers
  W(F_q) = Z_q, worked modulo p^M
- equal characteristic: F_q((t)), worked modulo t^M

on top of which sit zero or more Eisenstein layers O[pi] = O[x] / E(x).
Every field element records its valuation and its absolute precision;
all arithmetic propagates precision conservatively.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import ceil
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.abgroup import FinAbGroup, IntMatrix, cokernel, direct_sum, free_group
from algebra.finite_field import GF, FieldEmbedding, FiniteField, standard_embedding
from algebra.witt import GaloisRing, GaloisRingEmbedding, PerfRing
from utils.errors import PrecisionError, StructuralError

logger = logging.getLogger(__name__)

MIXED = 'mixed'
EQUAL = 'equal'
DEFAULT_PRECISION = 20

# Layer coefficient: an integer (image of Z) or Teichmuller digits in the
# uniformizer of the ring below the layer
CoeffSpec = Union[int, Tuple[int, ...]]
RingElem = Any


# ============================================================================
# INTEGRAL RINGS
# ============================================================================

class _WittBase:
    """Z_q / p^M"""

    depth = 0

    def __init__(self, residue: FiniteField, precision: int):
        self.gr = GaloisRing(residue, precision)
        self.residue = residue
        self.cap = precision
        self.zero = self.gr.zero
        self.one = self.gr.one
        self.uniformizer = self.gr.from_int(residue.p)

    def from_int(self, n: int) -> RingElem:
        return self.gr.from_int(n)

    def teichmuller(self, x: int) -> RingElem:
        return self.gr.teichmuller(x)

    def add(self, a, b):
        return self.gr.add(a, b)

    def sub(self, a, b):
        return self.gr.sub(a, b)

    def neg(self, a):
        return self.gr.neg(a)

    def mul(self, a, b):
        return self.gr.mul(a, b)

    def scalar(self, n: int, a):
        return self.gr.scalar(n, a)

    def is_zero(self, a) -> bool:
        return self.gr.is_zero(a)

    def valuation(self, a) -> int:
        return self.gr.valuation(a)

    def divide_by_uniformizer(self, a):
        return self.gr.divide_by_p(a)

    def shift_down(self, a, k: int):
        return self.gr.divide_by_p(a, k) if k else a

    def mul_pi_power(self, a, k: int):
        return self.gr.scalar(self.residue.p ** k, a) if k else a

    def residue_of(self, a) -> int:
        return self.gr.residue(a)

    def inverse(self, a):
        return self.gr.inverse(a)

    def map_leaves(self, a, fn: Callable):
        return fn(a)

    def leaf_frobenius(self, a, k: int):
        return self.gr.frobenius(a, k)

    def coerce_leaf(self, a):
        return tuple(c % self.gr.modulus for c in a)

    def leaf_embedding(self, target: '_WittBase', field_map: FieldEmbedding):
        emb = GaloisRingEmbedding(self.gr, target.gr, field_map)
        return emb, emb.preimage


class _SeriesBase:
    """F_q[[t]] / t^M, elements are tuples of M coefficients"""

    depth = 0

    def __init__(self, residue: FiniteField, precision: int):
        self.residue = residue
        self.cap = precision
        self.zero = (0,) * precision
        self.one = (1,) + (0,) * (precision - 1)
        self.uniformizer = self.mul_pi_power(self.one, 1)

    def from_int(self, n: int):
        return self.teichmuller(self.residue.from_int(n))

    def teichmuller(self, x: int):
        return (x,) + (0,) * (self.cap - 1)

    def add(self, a, b):
        F = self.residue
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.residue
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.residue.neg(x) for x in a)

    def mul(self, a, b):
        F, M = self.residue, self.cap
        acc = [0] * M
        for i, x in enumerate(a):
            if x:
                for j in range(M - i):
                    y = b[j]
                    if y:
                        acc[i + j] = F.add(acc[i + j], F.mul(x, y))
        return tuple(acc)

    def scalar(self, n: int, a):
        c = self.residue.from_int(n)
        if c == 0:
            return self.zero
        return tuple(self.residue.mul(c, x) for x in a)

    def is_zero(self, a) -> bool:
        return not any(a)

    def valuation(self, a) -> int:
        for i, x in enumerate(a):
            if x:
                return i
        return self.cap

    def divide_by_uniformizer(self, a):
        return self.shift_down(a, 1)

    def shift_down(self, a, k: int):
        if any(a[:k]):
            raise ValueError(f"Series is not divisible by t^{k}")
        return tuple(a[k:]) + (0,) * k

    def mul_pi_power(self, a, k: int):
        if k >= self.cap:
            return self.zero
        return (0,) * k + tuple(a[:self.cap - k])

    def residue_of(self, a) -> int:
        return a[0]

    def inverse(self, a):
        F = self.residue
        if a[0] == 0:
            raise ZeroDivisionError("Series with zero constant term is not a unit")
        b0 = F.inv(a[0])
        out = [b0]
        for n in range(1, self.cap):
            s = 0
            for i in range(1, n + 1):
                if a[i]:
                    s = F.add(s, F.mul(a[i], out[n - i]))
            out.append(F.neg(F.mul(b0, s)))
        return tuple(out)

    def map_leaves(self, a, fn: Callable):
        return fn(a)

    def leaf_frobenius(self, a, k: int):
        return tuple(self.residue.frobenius(x, k) for x in a)

    def coerce_leaf(self, a):
        a = tuple(a[:self.cap])
        return a + (0,) * (self.cap - len(a))

    def leaf_embedding(self, target: '_SeriesBase', field_map: FieldEmbedding):
        def forward(a):
            return tuple(field_map(x) for x in a)

        def backward(b):
            try:
                return tuple(field_map.preimage(x) for x in b)
            except KeyError:
                raise StructuralError(f"Series {b} does not descend") from None
        return forward, backward


class _EisensteinLayer:
    """
    O[pi] = O[x] / E(x) for a monic Eisenstein E over the ring below.
    Elements are tuples of e elements of the ring below.
    """

    def __init__(self, below, poly: Sequence[RingElem]):
        self.below = below
        self.poly = tuple(poly)
        self.e = len(self.poly)
        self.depth = below.depth + 1
        self.residue = below.residue
        self.cap = below.cap * self.e
        z = below.zero
        self.zero = (z,) * self.e
        self.one = (below.one,) + (z,) * (self.e - 1)
        if self.e == 1:
            self.uniformizer = (below.neg(self.poly[0]),)
        else:
            self.uniformizer = (z, below.one) + (z,) * (self.e - 2)
        self._powers: List[RingElem] = [self.one]
        # pi^e = varpi * unit, so varpi / pi = pi^(e-1) / unit
        unit = self.neg(tuple(below.divide_by_uniformizer(c) for c in self.poly))
        self._varpi_over_pi = self.mul(self.pi_power(self.e - 1), self.inverse(unit))

    def include(self, b):
        return (b,) + (self.below.zero,) * (self.e - 1)

    def from_int(self, n: int):
        return self.include(self.below.from_int(n))

    def teichmuller(self, x: int):
        return self.include(self.below.teichmuller(x))

    def add(self, a, b):
        return tuple(self.below.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.below.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.below.neg(x) for x in a)

    def scalar(self, n: int, a):
        return tuple(self.below.scalar(n, x) for x in a)

    def mul(self, a, b):
        R, e = self.below, self.e
        prod = [R.zero] * (2 * e - 1)
        for i, x in enumerate(a):
            if R.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not R.is_zero(y):
                    prod[i + j] = R.add(prod[i + j], R.mul(x, y))
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if R.is_zero(c):
                continue
            for t in range(e):
                prod[k - e + t] = R.sub(prod[k - e + t], R.mul(c, self.poly[t]))
        return tuple(prod[:e])

    def is_zero(self, a) -> bool:
        return all(self.below.is_zero(x) for x in a)

    def valuation(self, a) -> int:
        v = self.cap
        for j, x in enumerate(a):
            v = min(v, self.e * self.below.valuation(x) + j)
        return v

    def pi_power(self, k: int):
        while len(self._powers) <= k:
            self._powers.append(self.mul(self._powers[-1], self.uniformizer))
        return self._powers[k]

    def divide_by_uniformizer(self, a):
        head = self.below.divide_by_uniformizer(a[0])
        shifted = tuple(a[1:]) + (self.below.zero,)
        return self.add(shifted, self.mul(self.include(head), self._varpi_over_pi))

    def shift_down(self, a, k: int):
        for _ in range(k):
            a = self.divide_by_uniformizer(a)
        return a

    def mul_pi_power(self, a, k: int):
        return self.mul(a, self.pi_power(k)) if k else a

    def residue_of(self, a) -> int:
        return self.below.residue_of(a[0])

    def inverse(self, a):
        r = self.residue_of(a)
        if r == 0:
            raise ZeroDivisionError("Element of positive valuation is not a unit")
        y = self.teichmuller(self.residue.inv(r))
        two = self.from_int(2)
        good = 1
        while good < self.cap:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            good *= 2
        return y

    def map_leaves(self, a, fn: Callable):
        return tuple(self.below.map_leaves(x, fn) for x in a)

    def leaf_frobenius(self, a, k: int):
        return tuple(self.below.leaf_frobenius(x, k) for x in a)

    # ------------------------------------------------------------------
    # Norm and trace down one layer
    # ------------------------------------------------------------------

    def multiplication_matrix(self, a) -> List[List[RingElem]]:
        """Column i holds the coordinates of a * pi^i"""
        cols = []
        current = a
        for _ in range(self.e):
            cols.append(current)
            current = self.mul(current, self.uniformizer)
        return [[cols[j][i] for j in range(self.e)] for i in range(self.e)]

    def norm(self, a):
        return _determinant(self.below, self.multiplication_matrix(a))

    def trace(self, a):
        mat = self.multiplication_matrix(a)
        acc = self.below.zero
        for i in range(self.e):
            acc = self.below.add(acc, mat[i][i])
        return acc


def _determinant(ring, mat: List[List[RingElem]]):
    """Division-free determinant by cofactor expansion with memoised minors"""
    n = len(mat)
    memo: Dict[Tuple[int, Tuple[int, ...]], RingElem] = {}

    def minor(row: int, cols: Tuple[int, ...]):
        if row == n:
            return ring.one
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = ring.zero
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if ring.is_zero(entry):
                continue
            term = ring.mul(entry, minor(row + 1, cols[:pos] + cols[pos + 1:]))
            acc = ring.sub(acc, term) if pos % 2 else ring.add(acc, term)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _coefficient(ring, spec: CoeffSpec):
    if isinstance(spec, int):
        return ring.from_int(spec)
    acc = ring.zero
    for i, d in enumerate(spec):
        if d and i < ring.cap:
            acc = ring.add(acc, ring.mul_pi_power(ring.teichmuller(d), i))
    return acc


def _normalize_spec(spec) -> CoeffSpec:
    if isinstance(spec, (int, np.integer)):
        return int(spec)
    return tuple(int(d) for d in spec)


# ============================================================================
# LOCAL FIELD DESCRIPTOR
# ============================================================================

@dataclass(frozen=True)
class AbovePrecision:
    """Valuation of an element that is zero to the working precision"""
    bound: int

    def __str__(self) -> str:
        return f">= {self.bound}"


class LocalField:
    """
    A local field at finite precision.

    Args:
        kind: 'mixed' (over Q_p) or 'equal' (over F_p((t)))
        residue: Residue field of the unramified base
        layers: Eisenstein polynomials, each a sequence of coefficient
            specs c_0..c_{e-1} over the ring below (monic term implied)
        precision: Default absolute precision N in units of the top
            uniformizer
    """

    def __init__(self, kind: str, residue: FiniteField,
                 layers: Sequence[Sequence[CoeffSpec]] = (),
                 precision: int = DEFAULT_PRECISION):
        if kind not in (MIXED, EQUAL):
            raise StructuralError(f"Unknown field kind '{kind}'")
        if precision < 1:
            raise StructuralError(f"Precision must be >= 1, got {precision}")
        self.logger = logging.getLogger(__name__)
        self.kind = kind
        self.residue = residue
        self.layers: Tuple[Tuple[CoeffSpec, ...], ...] = tuple(
            tuple(_normalize_spec(c) for c in layer) for layer in layers)
        self.precision = precision
        self.p = residue.p
        self.q = residue.q

        self.e_abs = 1
        for layer in self.layers:
            if not layer:
                raise StructuralError("Eisenstein layer of degree 0")
            self.e_abs *= len(layer)
        guard = self.e_abs + 2
        base_precision = ceil((precision + guard) / self.e_abs) + 1
        base = _WittBase if kind == MIXED else _SeriesBase
        self.rings = [base(residue, base_precision)]
        for i, layer in enumerate(self.layers):
            below = self.rings[-1]
            poly = [_coefficient(below, c) for c in layer]
            if below.valuation(poly[0]) != 1 or any(below.valuation(c) < 1 for c in poly[1:]):
                raise StructuralError(f"Layer {i} polynomial {layer} is not Eisenstein")
            self.rings.append(_EisensteinLayer(below, poly))

        self._subfields: Dict[int, "LocalField"] = {}
        self.logger.debug(f"Built {self.name} (e={self.e_abs}, cap={self.cap})")

    # ------------------------------------------------------------------

    @property
    def base_ring(self):
        return self.rings[0]

    @property
    def ring(self):
        return self.rings[-1]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def cap(self) -> int:
        return self.ring.cap

    @property
    def residue_degree(self) -> int:
        """Degree of the residue field over F_p"""
        return self.residue.m

    @property
    def key(self) -> Tuple:
        return (self.kind, self.residue, self.layers, self.precision)

    @property
    def name(self) -> str:
        if self.kind == MIXED:
            base = f"Q_{self.p}" if self.residue.m == 1 else f"Q_{self.q}"
        else:
            base = f"F_{self.q}((t))"
        return base + "".join(f"(E{i}:{len(layer)})" for i, layer in enumerate(self.layers))

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"LocalField({self.name}, prec={self.precision})"

    def with_precision(self, precision: int) -> 'LocalField':
        return LocalField(self.kind, self.residue, self.layers, precision)

    def layer_degree(self, k: int) -> int:
        """Ramification index of the first k layers over the base"""
        e = 1
        for layer in self.layers[:k]:
            e *= len(layer)
        return e

    def subfield(self, k: int) -> 'LocalField':
        """The field cut by the first k layers, at matching precision"""
        if not 0 <= k <= self.depth:
            raise StructuralError(f"No subfield at depth {k}")
        if k == self.depth:
            return self
        if k not in self._subfields:
            ratio = self.e_abs // self.layer_degree(k)
            self._subfields[k] = LocalField(self.kind, self.residue, self.layers[:k],
                                            max(1, -(-self.precision // ratio)))
        return self._subfields[k]

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    def zero(self, precision: Optional[int] = None) -> 'LocalFieldElem':
        return LocalFieldElem(self, None, None, self.precision if precision is None else precision)

    def one(self) -> 'LocalFieldElem':
        return LocalFieldElem(self, 0, self.ring.one, self.cap)

    def uniformizer(self) -> 'LocalFieldElem':
        return LocalFieldElem(self, 1, self.ring.one, 1 + self.cap)

    def teichmuller(self, x: int) -> 'LocalFieldElem':
        if x == 0:
            return self.zero(self.cap)
        return LocalFieldElem(self, 0, self.ring.teichmuller(x), self.cap)

    def from_int(self, n: int, precision: Optional[int] = None) -> 'LocalFieldElem':
        """Image of an integer; exact to capacity unless a precision is given"""
        if n == 0:
            return self.zero(precision)
        body = self.ring.from_int(n)
        v = self.ring.valuation(body)
        if v >= self.cap:
            return self.zero(precision)
        prec = v + self.cap if precision is None else precision
        return self.from_ring(body, prec)

    def from_digits(self, digits: Sequence[int], lead: int = 0,
                    precision: Optional[int] = None) -> 'LocalFieldElem':
        """sum [d_i] pi^(lead + i), known to the given absolute precision"""
        ring = self.ring
        rel = len(digits) if precision is None else precision - lead
        if rel > self.cap:
            raise PrecisionError("Digit expansion exceeds capacity", required=rel)
        body = ring.zero
        for i, d in enumerate(digits[:max(rel, 0)]):
            if d:
                body = ring.add(body, ring.mul_pi_power(ring.teichmuller(d), i))
        return self.from_ring(body, lead + rel, offset=lead)

    def from_ring(self, body, precision: int, offset: int = 0) -> 'LocalFieldElem':
        """pi^offset * body with body a top-ring element known mod pi^(precision - offset)"""
        rel = min(precision - offset, self.cap)
        if rel <= 0:
            return self.zero(precision)
        precision = offset + rel
        w = self.ring.valuation(body)
        if w >= rel:
            return self.zero(precision)
        return LocalFieldElem(self, offset + w, self.ring.shift_down(body, w), precision)

    def coerce(self, x: 'LocalFieldElem') -> 'LocalFieldElem':
        """Move an element between copies of this field at other precisions"""
        if x.field is self or x.field == self:
            return x
        other = x.field
        if (other.kind, other.residue, other.layers) != (self.kind, self.residue, self.layers):
            raise StructuralError(f"Cannot coerce from {other.name} to {self.name}")
        if x.is_zero:
            return self.zero(x.precision)
        body = self.ring.map_leaves(x.unit, self.base_ring.coerce_leaf)
        return self.from_ring(body, min(x.precision, x.lead + self.cap), offset=x.lead)

    def ring_to_subfield(self, body, k: int, target: Optional['LocalField'] = None):
        """Reinterpret an element of rings[k] as a top-ring element of subfield(k)"""
        target = target or self.subfield(k)
        return target.ring.map_leaves(body, target.base_ring.coerce_leaf)

    def random_element(self, rng: np.random.Generator, lead_range: Tuple[int, int] = (-2, 3),
                       relative: Optional[int] = None) -> 'LocalFieldElem':
        """Random nonzero element with leading digit nonzero"""
        rel = relative or max(1, self.precision // 2)
        digits = [int(rng.integers(1, self.q))] + [int(d) for d in rng.integers(0, self.q, rel - 1)]
        lead = int(rng.integers(lead_range[0], lead_range[1]))
        return self.from_digits(digits, lead=lead)

    # ------------------------------------------------------------------
    # Norm and trace down the layers
    # ------------------------------------------------------------------

    def layer_norm(self, x: 'LocalFieldElem', k: int) -> 'LocalFieldElem':
        """Norm from this field to subfield(k)"""
        target = self.subfield(k)
        ratio = self.e_abs // self.layer_degree(k)
        if x.is_zero:
            return target.zero(-(-x.precision // ratio))
        body = x.unit
        pi_norm = self.ring.uniformizer
        for level in range(self.depth, k, -1):
            layer = self.rings[level]
            body = layer.norm(body)
            pi_norm = layer.norm(pi_norm)
        rel = x.relative_precision // ratio
        unit = target.from_ring(self.ring_to_subfield(body, k, target), rel)
        if x.lead == 0:
            return unit
        trusted = min(target.cap, self.cap // ratio)
        pi_part = target.from_ring(self.ring_to_subfield(pi_norm, k, target), 1 + trusted)
        return unit * pi_part ** x.lead

    def layer_trace(self, x: 'LocalFieldElem', k: int) -> 'LocalFieldElem':
        """Trace from this field to subfield(k)"""
        target = self.subfield(k)
        ratio = self.e_abs // self.layer_degree(k)
        shift = 0
        if not x.is_zero and x.lead < 0:
            shift = -(-(-x.lead) // ratio)
        # scale into the ring by a power of the subfield uniformizer
        scaled = x * self.layer_generator(k) ** shift if shift else x
        if scaled.is_zero:
            return target.zero(scaled.precision // ratio - shift)
        body = self.ring.mul_pi_power(scaled.unit, scaled.lead)
        for level in range(self.depth, k, -1):
            body = self.rings[level].trace(body)
        out = target.from_ring(self.ring_to_subfield(body, k, target), scaled.precision // ratio)
        if shift:
            out = out * target.uniformizer() ** (-shift)
        return out

    def lift_ring(self, body, level: int):
        """Element of rings[level] as a top-ring element"""
        for lv in range(level + 1, self.depth + 1):
            body = self.rings[lv].include(body)
        return body

    def layer_generator(self, level: int) -> 'LocalFieldElem':
        """The uniformizer of rings[level] as an element of this field"""
        ratio = self.e_abs // self.layer_degree(level)
        return self.from_ring(self.lift_ring(self.rings[level].uniformizer, level), ratio + self.cap)

    def include_from(self, x: 'LocalFieldElem', k: int) -> 'LocalFieldElem':
        """Element of subfield(k) viewed in this field"""
        ratio = self.e_abs // self.layer_degree(k)
        if x.is_zero:
            return self.zero(x.precision * ratio)
        body = self.lift_ring(self.rings[k].map_leaves(x.unit, self.base_ring.coerce_leaf), k)
        unit = self.from_ring(body, x.relative_precision * ratio)
        if x.lead == 0:
            return unit
        return unit * self.layer_generator(k) ** x.lead


def padic_field(p: int, m: int = 1, precision: int = DEFAULT_PRECISION) -> LocalField:
    """Q_p, or its unramified extension of degree m"""
    return LocalField(MIXED, GF(p, m), (), precision)


def laurent_field(p: int, m: int = 1, precision: int = DEFAULT_PRECISION) -> LocalField:
    """F_q((t)) with q = p^m"""
    return LocalField(EQUAL, GF(p, m), (), precision)


# ============================================================================
# ELEMENTS
# ============================================================================

@dataclass(frozen=True, eq=False)
class LocalFieldElem:
    """
    pi^lead * unit + O(pi^precision).

    ``lead`` is None for an element that is zero to its precision; ``unit``
    is then None as well.
    """
    field: LocalField
    lead: Optional[int]
    unit: Any
    precision: int

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return self.lead is None

    @property
    def relative_precision(self) -> int:
        return 0 if self.lead is None else self.precision - self.lead

    def valuation(self) -> Union[int, AbovePrecision]:
        if self.lead is None:
            return AbovePrecision(self.precision)
        return self.lead

    def is_unit(self) -> bool:
        return self.lead == 0

    def is_integral(self) -> bool:
        return self.lead is None or self.lead >= 0

    def residue(self) -> int:
        if self.lead is None or self.lead > 0:
            return 0
        if self.lead < 0:
            raise ValueError("Residue of a non-integral element")
        return self.field.ring.residue_of(self.unit)

    def unit_part(self) -> 'LocalFieldElem':
        if self.lead is None:
            raise PrecisionError("Unit part of an element that is zero to precision",
                                 required=self.precision + 1)
        return LocalFieldElem(self.field, 0, self.unit, self.relative_precision)

    def digits(self) -> List[int]:
        """Teichmuller digits of the unit part, as many as are known"""
        if self.lead is None:
            return []
        ring = self.field.ring
        u, out = self.unit, []
        rel = self.relative_precision
        for i in range(rel):
            d = ring.residue_of(u)
            out.append(d)
            if i + 1 < rel:
                u = ring.divide_by_uniformizer(ring.sub(u, ring.teichmuller(d)))
        return out

    def truncate(self, precision: int) -> 'LocalFieldElem':
        precision = min(precision, self.precision)
        if self.lead is None or precision <= self.lead:
            return self.field.zero(precision)
        return LocalFieldElem(self.field, self.lead, self.unit, precision)

    def to_ring(self):
        """pi^lead * unit as a top-ring element; requires integrality"""
        ring = self.field.ring
        if self.lead is None:
            return ring.zero
        if self.lead < 0:
            raise ValueError("Element is not integral")
        return ring.mul_pi_power(self.unit, min(self.lead, ring.cap))

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _operand(self, other) -> 'LocalFieldElem':
        if isinstance(other, LocalFieldElem):
            if other.field is not self.field and other.field != self.field:
                raise StructuralError(f"Mixing elements of {self.field.name} and {other.field.name}")
            return other
        if isinstance(other, (int, np.integer)):
            if other == 0:
                return self.field.zero(max(self.precision, self.field.cap))
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other) -> 'LocalFieldElem':
        other = self._operand(other)
        if other is NotImplemented:
            return other
        K = self.field
        P = min(self.precision, other.precision)
        if self.is_zero:
            return other.truncate(P)
        if other.is_zero:
            return self.truncate(P)
        v = min(self.lead, other.lead)
        if P <= v:
            return K.zero(P)
        rel = P - v
        ring = K.ring
        body = ring.zero
        for t in (self, other):
            k = t.lead - v
            if k < rel:
                body = ring.add(body, ring.mul_pi_power(t.unit, k))
        return K.from_ring(body, P, offset=v)

    __radd__ = __add__

    def __neg__(self) -> 'LocalFieldElem':
        if self.is_zero:
            return self
        return LocalFieldElem(self.field, self.lead, self.field.ring.neg(self.unit), self.precision)

    def __sub__(self, other) -> 'LocalFieldElem':
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'LocalFieldElem':
        return (-self) + other

    def __mul__(self, other) -> 'LocalFieldElem':
        other = self._operand(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            a = self.precision if self.is_zero else self.lead
            b = other.precision if other.is_zero else other.lead
            return self.field.zero(a + b)
        lead = self.lead + other.lead
        rel = min(self.relative_precision, other.relative_precision)
        return LocalFieldElem(self.field, lead, self.field.ring.mul(self.unit, other.unit), lead + rel)

    __rmul__ = __mul__

    def inverse(self) -> 'LocalFieldElem':
        if self.is_zero:
            raise PrecisionError("Cannot invert an element that is zero to precision",
                                 required=self.precision + 1)
        return LocalFieldElem(self.field, -self.lead, self.field.ring.inverse(self.unit),
                              -self.lead + self.relative_precision)

    def __truediv__(self, other) -> 'LocalFieldElem':
        other = self._operand(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> 'LocalFieldElem':
        return self.inverse() * other

    def __pow__(self, n: int) -> 'LocalFieldElem':
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def equals(self, other) -> bool:
        """Equality to the smaller of the two precisions"""
        return (self - other).is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LocalFieldElem, int, np.integer)):
            return NotImplemented
        if isinstance(other, LocalFieldElem) and other.field != self.field:
            return False
        return self.equals(other)

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O(pi^{self.precision})"
        digits = self.digits()
        shown = ",".join(map(str, digits[:8])) + (",..." if len(digits) > 8 else "")
        return f"pi^{self.lead}*[{shown}] + O(pi^{self.precision})"


def valuation(x: LocalFieldElem) -> Union[int, AbovePrecision]:
    return x.valuation()


def unit_decompose(x: LocalFieldElem) -> Tuple[int, LocalFieldElem]:
    """x = pi^n * u with u a unit"""
    return x.lead if x.lead is not None else 0, x.unit_part()


# ============================================================================
# UNIT GROUPS
# ============================================================================

class UnitQuotient:
    """
    U_K / U_K^n as a finite abelian group.

    Generators are the Teichmuller lift of the primitive root of the residue
    field, then 1 + [x^k] pi^j for 1 <= j < n and 0 <= k < m. Coordinates
    come from peeling one filtration step at a time.
    """

    def __init__(self, field: LocalField, level: int):
        if level < 1:
            raise ValueError(f"Unit filtration level must be >= 1, got {level}")
        self.logger = logging.getLogger(__name__)
        self.field = field
        self.level = level
        F = field.residue
        if level > field.cap:
            raise PrecisionError(f"Level {level} exceeds capacity of {field.name}", required=level)

        self.generators: List[LocalFieldElem] = [field.teichmuller(F.generator).truncate(level)]
        self.levels: List[int] = [0]
        self._inverse_powers: List[List[LocalFieldElem]] = []
        pi = field.uniformizer()
        for j in range(1, level):
            pj = pi ** j
            for k in range(F.m):
                g = (field.teichmuller(F.p ** k) * pj + 1).truncate(level)
                self.generators.append(g)
                self.levels.append(j)
                inv = g.inverse()
                powers = [field.one().truncate(level)]
                for _ in range(1, F.p):
                    powers.append(powers[-1] * inv)
                self._inverse_powers.append(powers)

        count = len(self.generators)
        relations = [tuple([F.q - 1] + [0] * (count - 1))]
        for idx in range(1, count):
            coords = self.coordinates(self.generators[idx] ** F.p)
            relations.append(tuple((F.p if i == idx else 0) - c for i, c in enumerate(coords)))
        self.group: FinAbGroup = cokernel(IntMatrix.from_columns(relations, count))
        self.logger.debug(f"U/U^{level} of {field.name}: {self.group}")

    def __iter__(self) -> Iterator:
        yield self.group
        yield self.to_group
        yield self.from_group

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def coordinates(self, x: LocalFieldElem) -> Tuple[int, ...]:
        """Presentation vector of a unit"""
        K, n = self.field, self.level
        if x.is_zero or x.lead != 0:
            raise ValueError(f"{x} is not a unit")
        if x.precision < n:
            raise PrecisionError(f"Unit known only to precision {x.precision}", required=n)
        F = K.residue
        x = x.truncate(n)
        vec = [0] * self.generator_count
        k0 = F.log(x.residue())
        if k0:
            vec[0] = k0
            x = x * K.teichmuller(F.pow(F.generator, -k0))
        idx = 1
        for j in range(1, n):
            y = x - 1
            if not y.is_zero and y.lead < j:
                raise ValueError(f"Filtration step {j} failed for {x}")
            if y.is_zero or y.lead > j:
                idx += F.m
                continue
            coeffs = F.to_coeffs(K.ring.residue_of(y.unit))
            for k, c in enumerate(coeffs):
                if c:
                    vec[idx + k] = c
                    x = x * self._inverse_powers[idx + k - 1][c]
            idx += F.m
        return tuple(vec)

    def to_group(self, x: LocalFieldElem) -> Tuple[int, ...]:
        return self.group.classify(self.coordinates(x))

    def from_vector(self, vec: Sequence[int]) -> LocalFieldElem:
        exponent = self.group.exponent or 1
        out = self.field.one().truncate(self.level)
        for g, c in zip(self.generators, vec):
            c %= exponent
            if c:
                out = out * g ** c
        return out

    def from_group(self, coords: Sequence[int]) -> LocalFieldElem:
        return self.from_vector(self.group.element(coords))

    def exact_generators(self) -> List[LocalFieldElem]:
        """The generators at full working precision, in presentation order"""
        K, F = self.field, self.field.residue
        out = [K.teichmuller(F.generator)]
        pi = K.uniformizer()
        for j in range(1, self.level):
            pj = pi ** j
            out.extend(K.teichmuller(F.p ** k) * pj + 1 for k in range(F.m))
        return out

    def filtration_generators(self, j: int) -> List[int]:
        """Indices of generators spanning U^j / U^n (j >= 1)"""
        return [i for i, lv in enumerate(self.levels) if lv >= j]


@lru_cache(maxsize=64)
def unit_group_quotient(field: LocalField, n: int) -> UnitQuotient:
    """U_K / U_K^n with classification and lifting maps"""
    return UnitQuotient(field, n)


class MultiplicativeQuotient:
    """K^x / U_K^n = Z (valuation) + U_K / U_K^n for the chosen uniformizer"""

    def __init__(self, field: LocalField, level: int):
        self.field = field
        self.level = level
        self.units = unit_group_quotient(field, level)
        self.group: FinAbGroup = direct_sum([free_group(1), self.units.group])
        self.generators = [field.uniformizer().truncate(level + 1)] + self.units.generators

    def coordinates(self, x: LocalFieldElem) -> Tuple[int, ...]:
        if x.is_zero:
            raise PrecisionError("Zero has no class in K^x", required=x.precision + 1)
        return (x.lead,) + self.units.coordinates(x.unit_part())

    def to_group(self, x: LocalFieldElem) -> Tuple[int, ...]:
        return self.group.classify(self.coordinates(x))

    def from_vector(self, vec: Sequence[int]) -> LocalFieldElem:
        unit = self.units.from_vector(vec[1:])
        return unit * self.field.uniformizer() ** vec[0]


@lru_cache(maxsize=64)
def multiplicative_quotient(field: LocalField, n: int) -> MultiplicativeQuotient:
    return MultiplicativeQuotient(field, n)


# ============================================================================
# UNRAMIFIED ENLARGEMENT
# ============================================================================

class Enlargement:
    """
    The unramified extension K_r of K of degree r, with the inclusion
    K -> K_r and the q-power Frobenius of K_r over K.

    Args:
        base: The field K
        r: Degree
        residue: Residue field of K_r (default: the standard F_{q^r})
    """

    def __init__(self, base: LocalField, r: int, residue: Optional[FiniteField] = None):
        if r < 1:
            raise StructuralError(f"Unramified degree must be >= 1, got {r}")
        residue = residue or GF(base.p, base.residue.m * r)
        if residue.m != base.residue.m * r or residue.p != base.p:
            raise StructuralError(f"{residue} is not of degree {r} over {base.residue}")
        self.base = base
        self.degree = r
        self.field_map = standard_embedding(base.residue, residue)
        layers = [tuple(c if isinstance(c, int) else tuple(self.field_map(d) for d in c)
                        for c in layer) for layer in base.layers]
        self.top = LocalField(base.kind, residue, layers, base.precision)
        self._forward, self._backward = base.base_ring.leaf_embedding(
            self.top.base_ring, self.field_map)

    def __repr__(self) -> str:
        return f"Enlargement({self.base.name} -> {self.top.name})"

    def include(self, x: LocalFieldElem) -> LocalFieldElem:
        x = self.base.coerce(x)
        if x.is_zero:
            return self.top.zero(x.precision)
        unit = self.top.ring.map_leaves(x.unit, self._forward)
        return LocalFieldElem(self.top, x.lead, unit, x.precision)

    def descend(self, y: LocalFieldElem) -> LocalFieldElem:
        """Preimage of an element fixed by Frobenius; StructuralError otherwise"""
        y = self.top.coerce(y)
        if y.is_zero:
            return self.base.zero(y.precision)
        unit = self.top.ring.map_leaves(y.unit, self._backward)
        return LocalFieldElem(self.base, y.lead, unit, y.precision)

    def frobenius(self, y: LocalFieldElem, k: int = 1) -> LocalFieldElem:
        """The k-th power of the q-Frobenius (q = residue size of K)"""
        y = self.top.coerce(y)
        if y.is_zero or k % self.degree == 0:
            return y
        steps = (k % self.degree) * self.base.residue.m
        unit = self.top.ring.leaf_frobenius(y.unit, steps)
        return LocalFieldElem(self.top, y.lead, unit, y.precision)

    def norm(self, y: LocalFieldElem) -> LocalFieldElem:
        y = self.top.coerce(y)
        out = y
        for i in range(1, self.degree):
            out = out * self.frobenius(y, i)
        return self.descend(out)

    def trace(self, y: LocalFieldElem) -> LocalFieldElem:
        y = self.top.coerce(y)
        out = y
        for i in range(1, self.degree):
            out = out + self.frobenius(y, i)
        return self.descend(out)


def unramified_extension(field: LocalField, r: int,
                         residue: Optional[FiniteField] = None) -> Enlargement:
    return Enlargement(field, r, residue)


# ============================================================================
# POINTS OVER W(R)
# ============================================================================

@dataclass(frozen=True, eq=False)
class RingPoint:
    """
    A point of (K (x) W(R))^x for R = F_{q_1} x ... x F_{q_s}: one element
    of K_{r_j} per factor of R.
    """
    base: LocalField
    test_ring: PerfRing
    components: Tuple[LocalFieldElem, ...]

    def valuation_vector(self) -> Tuple[int, ...]:
        return tuple(c.lead for c in self.components)

    def is_invertible(self) -> bool:
        """Every component and its inverse are integral, and multiply to 1"""
        for c in self.components:
            if c.is_zero or not c.is_integral():
                return False
            inv = c.inverse()
            if not inv.is_integral() or not (c * inv).equals(c.field.one()):
                return False
        return True

    def __mul__(self, other: 'RingPoint') -> 'RingPoint':
        return RingPoint(self.base, self.test_ring,
                         tuple(a * b for a, b in zip(self.components, other.components)))


def ring_point_fields(field: LocalField, ring: PerfRing) -> List[Enlargement]:
    """K_{r_j} for each factor F_{q_j} of R, which must contain F_q"""
    out = []
    for comp in ring.components:
        if comp.p != field.p or comp.m % field.residue.m:
            raise StructuralError(f"{comp} does not contain the residue field {field.residue}")
        out.append(Enlargement(field, comp.m // field.residue.m, comp))
    return out


def points_split_check(field: LocalField, ring: PerfRing, samples: int = 20, seed: int = 0):
    """
    Check the splitting L^x(R) = Z(R) x U(R) on sampled points: valuation
    vectors are additive, x = s(v(x)) * u with s the uniformizer section,
    and the kernel of the valuation is exactly the unit group. Both sides of
    the last equality are sampled independently of the section.
    """
    from utils.report import CheckResult

    rng = np.random.default_rng(seed)
    fields = ring_point_fields(field, ring)
    failures = []
    kernel_points = 0
    for t in range(samples):
        xs = RingPoint(field, ring, tuple(E.top.random_element(rng) for E in fields))
        ys = RingPoint(field, ring, tuple(E.top.random_element(rng) for E in fields))
        prod = xs * ys
        expected = tuple(a + b for a, b in zip(xs.valuation_vector(), ys.valuation_vector()))
        if prod.valuation_vector() != expected:
            failures.append(f"sample {t}: valuation vector not additive")
        for E, c in zip(fields, xs.components):
            n, u = unit_decompose(c)
            if not u.is_unit():
                failures.append(f"sample {t}: unit part has valuation {u.lead}")
            if not (E.top.uniformizer() ** n * u).equals(c):
                failures.append(f"sample {t}: section does not reconstruct the point")

        # ker(v) in U: sums whose valuation vector vanishes must be invertible integrally
        ws = RingPoint(field, ring, tuple(E.top.random_element(rng, (0, 2))
                                          + E.top.random_element(rng, (1, 3)) for E in fields))
        if not any(ws.valuation_vector()):
            kernel_points += 1
            if not ws.is_invertible():
                failures.append(f"sample {t}: valuation kernel contains a non-unit")

        # U in ker(v): Teichmuller digit times a principal unit
        us = RingPoint(field, ring, tuple(_random_unit(E.top, rng) for E in fields))
        if not us.is_invertible() or any(us.valuation_vector()):
            failures.append(f"sample {t}: unit {us.valuation_vector()} outside the valuation kernel")

    return CheckResult(
        name="points_split",
        anchor="unit/valuation splitting of points over W(R)",
        verdict="pass" if not failures else "fail",
        inputs={"field": field.name, "ring": repr(ring), "samples": samples},
        groups={"Z(R)": [0] * len(ring.components)},
        expected=f"Z^{len(ring.components)} x U(R)",
        message="; ".join(failures[:5])
        or f"{samples} samples split, {kernel_points} valuation-kernel points are units",
    )


def _random_unit(field: LocalField, rng: np.random.Generator) -> LocalFieldElem:
    zeta = field.teichmuller(int(rng.integers(1, field.q)))
    return zeta * (field.one() + field.random_element(rng, (1, 3)))
