"""
Witt Vectors

Truncated p-typical Witt vectors over finite perfect rings (finite products
of finite fields). Arithmetic on W_n(F_q) goes through the isomorphism with
the Galois ring Z_q / p^n: a vector (a_0, ..., a_{n-1}) corresponds to
sum p^i [a_i^(p^-i)] with [.] the Teichmuller lift, and digits are read
back by repeated residue extraction. The universal structure polynomials
are available separately and give an independent evaluation path.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Rational, ZZ, symbols

from utils.errors import StructuralError

from .abgroup import FinAbGroup, group_from_factors, subgroup_quotient
from .finite_field import GF, FieldEmbedding, FiniteField

logger = logging.getLogger(__name__)

GRElem = Tuple[int, ...]


# ============================================================================
# GALOIS RINGS Z_q / p^N
# ============================================================================

class GaloisRing:
    """
    Z_q / p^N = (Z / p^N)[x] / (P) with P the defining polynomial of the
    residue field lifted to integer coefficients.

    Elements are tuples of m integers in [0, p^N), the coefficients in the
    basis 1, x, ..., x^(m-1).

    Args:
        field: Residue field F_q
        precision: N >= 1
    """

    def __init__(self, field: FiniteField, precision: int):
        if precision < 1:
            raise StructuralError(f"Galois ring precision must be >= 1, got {precision}")
        self.field = field
        self.p = field.p
        self.m = field.m
        self.precision = precision
        self.modulus = field.p ** precision
        self._poly = tuple(field.modulus)
        self._teichmuller: Dict[int, GRElem] = {}
        self._frobenius_roots: Dict[int, GRElem] = {}

    def __eq__(self, other) -> bool:
        return (isinstance(other, GaloisRing) and self.field == other.field
                and self.precision == other.precision)

    def __hash__(self) -> int:
        return hash((self.field, self.precision))

    def __repr__(self) -> str:
        return f"GaloisRing({self.field}, {self.precision})"

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> GRElem:
        coeffs = list(coeffs)[:self.m]
        coeffs += [0] * (self.m - len(coeffs))
        return tuple(int(c) % self.modulus for c in coeffs)

    @property
    def zero(self) -> GRElem:
        return (0,) * self.m

    @property
    def one(self) -> GRElem:
        return self.from_int(1)

    def from_int(self, n: int) -> GRElem:
        return (n % self.modulus,) + (0,) * (self.m - 1)

    def lift(self, x: int) -> GRElem:
        """Naive lift of a residue field element (digits as integers)"""
        return tuple(self.field.to_coeffs(x))

    def residue(self, a: GRElem) -> int:
        return self.field.from_coeffs(a)

    def with_precision(self, precision: int) -> 'GaloisRing':
        return GaloisRing(self.field, precision)

    def truncate(self, a: GRElem, precision: int) -> GRElem:
        """Image in Z_q / p^precision"""
        mod = self.p ** precision
        return tuple(c % mod for c in a)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def is_zero(self, a: GRElem) -> bool:
        return all(c == 0 for c in a)

    def add(self, a: GRElem, b: GRElem) -> GRElem:
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def sub(self, a: GRElem, b: GRElem) -> GRElem:
        return tuple((x - y) % self.modulus for x, y in zip(a, b))

    def neg(self, a: GRElem) -> GRElem:
        return tuple((-x) % self.modulus for x in a)

    def scalar(self, n: int, a: GRElem) -> GRElem:
        return tuple((n * x) % self.modulus for x in a)

    def mul(self, a: GRElem, b: GRElem) -> GRElem:
        m, mod = self.m, self.modulus
        if m == 1:
            return ((a[0] * b[0]) % mod,)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % mod
            if c:
                for t in range(m):
                    prod[k - m + t] -= c * self._poly[t]
        return tuple(c % mod for c in prod[:m])

    def pow(self, a: GRElem, e: int) -> GRElem:
        if e < 0:
            return self.pow(self.inverse(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def valuation(self, a: GRElem) -> int:
        """p-adic valuation; the precision N stands for zero"""
        v = self.precision
        for c in a:
            if c:
                k = 0
                while c % self.p == 0:
                    c //= self.p
                    k += 1
                v = min(v, k)
        return v

    def is_unit(self, a: GRElem) -> bool:
        return self.residue(a) != 0

    def divide_by_p(self, a: GRElem, k: int = 1) -> GRElem:
        """Exact division by p^k; the top k digits of the result are zero"""
        pk = self.p ** k
        if any(c % pk for c in a):
            raise ValueError(f"Element {a} is not divisible by {self.p}^{k}")
        return tuple(c // pk for c in a)

    def inverse(self, a: GRElem) -> GRElem:
        r = self.residue(a)
        if r == 0:
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        y = self.lift(self.field.inv(r))
        two = self.from_int(2)
        good = 1
        while good < self.precision:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            good *= 2
        return y

    def evaluate(self, coeffs: Sequence[GRElem], y: GRElem) -> GRElem:
        acc = self.zero
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, y), c)
        return acc

    def hensel_root(self, coeffs: Sequence[GRElem], start: GRElem) -> GRElem:
        """Root of a polynomial near a simple root of its reduction"""
        deriv = [self.scalar(i, c) for i, c in enumerate(coeffs)][1:]
        y = start
        good = 1
        while good < self.precision:
            y = self.sub(y, self.mul(self.evaluate(coeffs, y),
                                     self.inverse(self.evaluate(deriv, y))))
            good *= 2
        return y

    # ------------------------------------------------------------------
    # Teichmuller lifts and Frobenius
    # ------------------------------------------------------------------

    def teichmuller(self, x: int) -> GRElem:
        """The unique (q-1)-th root of unity (or zero) lifting x"""
        if x == 0:
            return self.zero
        cached = self._teichmuller.get(x)
        if cached is None:
            y = self.lift(x)
            for _ in range(self.precision - 1):
                y = self.pow(y, self.field.q)
            cached = self._teichmuller[x] = y
        return cached

    def teichmuller_digits(self, a: GRElem) -> List[int]:
        """Residue field digits d_i with a = sum p^i [d_i]"""
        digits = []
        for i in range(self.precision):
            d = self.residue(a)
            digits.append(d)
            if i + 1 < self.precision:
                a = self.divide_by_p(self.sub(a, self.teichmuller(d)))
        return digits

    def from_teichmuller_digits(self, digits: Sequence[int]) -> GRElem:
        acc = self.zero
        for i in reversed(range(min(len(digits), self.precision))):
            acc = self.add(self.scalar(self.p, acc), self.teichmuller(digits[i]))
        return acc

    def _frobenius_root(self, k: int) -> GRElem:
        root = self._frobenius_roots.get(k)
        if root is None:
            x = self.field.from_coeffs((0, 1))
            poly = [self.from_int(c) for c in self._poly]
            root = self.hensel_root(poly, self.lift(self.field.frobenius(x, k)))
            self._frobenius_roots[k] = root
        return root

    def frobenius(self, a: GRElem, k: int = 1) -> GRElem:
        """The lift of the p^k-power Frobenius"""
        k %= self.m
        if k == 0:
            return a
        y = self._frobenius_root(k)
        return self.evaluate([self.from_int(c) for c in a], y)

    def trace(self, a: GRElem) -> int:
        """Absolute trace to Z / p^N"""
        total = self.zero
        for k in range(self.m):
            total = self.add(total, self.frobenius(a, k))
        return total[0]


class GaloisRingEmbedding:
    """
    Ring map Z_q / p^N -> Z_q' / p^N lifting a residue field embedding.

    Args:
        source: Smaller Galois ring
        target: Larger Galois ring of the same precision
        field_map: Embedding of the residue fields
    """

    def __init__(self, source: GaloisRing, target: GaloisRing, field_map: FieldEmbedding):
        if source.precision != target.precision:
            raise StructuralError("Galois ring embedding needs equal precisions")
        self.source = source
        self.target = target
        self.field_map = field_map
        poly = [target.from_int(c) for c in source.field.modulus]
        self.root = target.hensel_root(poly, target.lift(field_map.root))

    def __call__(self, a: GRElem) -> GRElem:
        return self.target.evaluate([self.target.from_int(c) for c in a], self.root)

    def preimage(self, b: GRElem) -> GRElem:
        """Inverse on the image, through Teichmuller digits"""
        digits = self.target.teichmuller_digits(b)
        try:
            return self.source.from_teichmuller_digits([self.field_map.preimage(d) for d in digits])
        except KeyError:
            raise StructuralError(f"{b} does not descend to {self.source}") from None


# ============================================================================
# FINITE PERFECT RINGS
# ============================================================================

RingElem = Tuple[int, ...]


class PerfRing:
    """
    Finite perfect ring: a finite product of finite fields of one
    characteristic. Elements are tuples with one field element per factor.

    Args:
        components: Factor fields
    """

    def __init__(self, components: Sequence[FiniteField]):
        components = tuple(components)
        if not components:
            raise StructuralError("A perfect ring needs at least one factor")
        if len({f.p for f in components}) != 1:
            raise StructuralError("Factors of a perfect ring must share their characteristic")
        self.components = components
        self.p = components[0].p

    @classmethod
    def from_degrees(cls, p: int, degrees: Sequence[int]) -> 'PerfRing':
        """Product of the standard fields F_{p^m} for the given degrees"""
        return cls([GF(p, m) for m in degrees])

    def __eq__(self, other) -> bool:
        return isinstance(other, PerfRing) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return " x ".join(f"F_{f.q}" for f in self.components)

    @property
    def zero(self) -> RingElem:
        return (0,) * len(self.components)

    @property
    def one(self) -> RingElem:
        return (1,) * len(self.components)

    @property
    def order(self) -> int:
        n = 1
        for f in self.components:
            n *= f.q
        return n

    def elements(self) -> List[RingElem]:
        return list(product(*(f.elements() for f in self.components)))

    def contains(self, x: RingElem) -> bool:
        return (len(x) == len(self.components)
                and all(0 <= a < f.q for a, f in zip(x, self.components)))

    def add(self, x: RingElem, y: RingElem) -> RingElem:
        return tuple(f.add(a, b) for f, a, b in zip(self.components, x, y))

    def mul(self, x: RingElem, y: RingElem) -> RingElem:
        return tuple(f.mul(a, b) for f, a, b in zip(self.components, x, y))

    def frobenius(self, x: RingElem, k: int = 1) -> RingElem:
        return tuple(f.frobenius(a, k) for f, a in zip(self.components, x))

    @lru_cache(maxsize=None)
    def galois_ring(self, j: int, n: int) -> GaloisRing:
        return GaloisRing(self.components[j], n)


# ============================================================================
# WITT VECTORS
# ============================================================================

@dataclass(frozen=True)
class WittVector:
    """Element (a_0, ..., a_{n-1}) of W_n(R) for a finite perfect ring R"""
    ring: PerfRing
    digits: Tuple[RingElem, ...]

    def __post_init__(self):
        if len(self.digits) < 1:
            raise StructuralError("Witt vectors need length >= 1")
        for d in self.digits:
            if not self.ring.contains(tuple(d)):
                raise StructuralError(f"Digit {d} does not lie in {self.ring}")

    @property
    def length(self) -> int:
        return len(self.digits)

    def __add__(self, other: 'WittVector') -> 'WittVector':
        return witt_add(self, other)

    def __sub__(self, other: 'WittVector') -> 'WittVector':
        return witt_sub(self, other)

    def __neg__(self) -> 'WittVector':
        return witt_neg(self)

    def __mul__(self, other: 'WittVector') -> 'WittVector':
        return witt_mul(self, other)


def witt_vector(ring: PerfRing, digits: Sequence) -> WittVector:
    """Build a vector; over a single field the digits may be plain integers"""
    norm = tuple((d,) if isinstance(d, int) else tuple(d) for d in digits)
    return WittVector(ring, norm)


def witt_zero(ring: PerfRing, n: int) -> WittVector:
    return WittVector(ring, (ring.zero,) * n)


def witt_one(ring: PerfRing, n: int) -> WittVector:
    return teichmuller(ring, ring.one, n)


def _check_compatible(a: WittVector, b: WittVector):
    if a.ring != b.ring:
        raise StructuralError(f"Witt vectors over different rings: {a.ring} and {b.ring}")
    if a.length != b.length:
        raise StructuralError(f"Witt vectors of different lengths: {a.length} and {b.length}")


def to_series(a: WittVector) -> Tuple[GRElem, ...]:
    """Images in Z_{q_j} / p^n for each factor F_{q_j}"""
    n = a.length
    out = []
    for j, f in enumerate(a.ring.components):
        gr = a.ring.galois_ring(j, n)
        series = gr.zero
        for i in range(n):
            root = f.frobenius(a.digits[i][j], -i)
            series = gr.add(series, gr.scalar(f.p ** i, gr.teichmuller(root)))
        out.append(series)
    return tuple(out)


def from_series(ring: PerfRing, n: int, series: Sequence[GRElem]) -> WittVector:
    """Inverse of to_series"""
    per_component = []
    for j, f in enumerate(ring.components):
        gr = ring.galois_ring(j, n)
        s = gr.element(series[j])
        digits = []
        for i in range(n):
            temp = gr.residue(s)
            digits.append(f.frobenius(temp, i))
            if i + 1 < n:
                s = gr.divide_by_p(gr.sub(s, gr.teichmuller(temp)))
        per_component.append(digits)
    return WittVector(ring, tuple(tuple(per_component[j][i] for j in range(len(ring.components)))
                                  for i in range(n)))


def _series_op(a: WittVector, b: WittVector, op: str) -> WittVector:
    _check_compatible(a, b)
    sa, sb = to_series(a), to_series(b)
    out = []
    for j in range(len(a.ring.components)):
        gr = a.ring.galois_ring(j, a.length)
        out.append(getattr(gr, op)(sa[j], sb[j]))
    return from_series(a.ring, a.length, out)


def witt_add(a: WittVector, b: WittVector, method: str = 'series') -> WittVector:
    """
    Sum in W_n(R).

    Args:
        method: 'series' (Galois ring isomorphism) or 'polynomial'
            (universal addition polynomials)
    """
    if method == 'polynomial':
        _check_compatible(a, b)
        return _apply_structure(a, b, structure_polynomials(a.ring.p, a.length)[0])
    return _series_op(a, b, 'add')


def witt_mul(a: WittVector, b: WittVector, method: str = 'series') -> WittVector:
    """Product in W_n(R); see witt_add for the method argument"""
    if method == 'polynomial':
        _check_compatible(a, b)
        return _apply_structure(a, b, structure_polynomials(a.ring.p, a.length)[1])
    return _series_op(a, b, 'mul')


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return _series_op(a, b, 'sub')


def witt_neg(a: WittVector) -> WittVector:
    return witt_sub(witt_zero(a.ring, a.length), a)


def teichmuller(ring: PerfRing, x: RingElem, n: int) -> WittVector:
    """[x] = (x, 0, ..., 0)"""
    return WittVector(ring, (tuple(x),) + (ring.zero,) * (n - 1))


def frobenius(a: WittVector) -> WittVector:
    """Digitwise p-th power (the Witt Frobenius over a perfect ring)"""
    return WittVector(a.ring, tuple(a.ring.frobenius(d) for d in a.digits))


def verschiebung(a: WittVector) -> WittVector:
    """(a_0, ..., a_{n-1}) -> (0, a_0, ..., a_{n-2})"""
    return WittVector(a.ring, (a.ring.zero,) + a.digits[:-1])


def witt_from_integer(ring: PerfRing, n: int, value: int) -> WittVector:
    """Image of an integer under Z -> W_n(R)"""
    series = [ring.galois_ring(j, n).from_int(value) for j in range(len(ring.components))]
    return from_series(ring, n, series)


def witt_to_integer(a: WittVector) -> int:
    """The integer mod p^n matching a vector of W_n(F_p)"""
    if len(a.ring.components) != 1 or a.ring.components[0].m != 1:
        raise StructuralError("Integer form exists only over the prime field")
    return to_series(a)[0][0]


def ghost(a: WittVector) -> List[Tuple[GRElem, ...]]:
    """
    Ghost components w_i = sum_{j <= i} p^j x_j^(p^(i-j)) of the vector of
    Teichmuller lifts x_j, computed in Z_q / p^n for each factor.
    """
    n = a.length
    out = []
    for i in range(n):
        row = []
        for j, f in enumerate(a.ring.components):
            gr = a.ring.galois_ring(j, n)
            w = gr.zero
            for k in range(i + 1):
                x = gr.teichmuller(a.digits[k][j])
                w = gr.add(w, gr.scalar(f.p ** k, gr.pow(x, f.p ** (i - k))))
            row.append(w)
        out.append(tuple(row))
    return out


# ============================================================================
# UNIVERSAL STRUCTURE POLYNOMIALS
# ============================================================================

@lru_cache(maxsize=None)
def structure_polynomials(p: int, n: int) -> Tuple[Tuple[Poly, ...], Tuple[Poly, ...]]:
    """
    Witt addition and multiplication polynomials S_0..S_{n-1}, P_0..P_{n-1}
    in X_0..X_{n-1}, Y_0..Y_{n-1} with integer coefficients, obtained by
    solving the ghost equations over Q.
    """
    xs = symbols(f'X0:{n}')
    ys = symbols(f'Y0:{n}')
    gens = xs + ys

    def poly(expr) -> Poly:
        return Poly(expr, *gens, domain='QQ')

    sums: List[Poly] = []
    for k in range(n):
        s = poly(xs[k] + ys[k])
        for i in range(k):
            e = p ** (k - i)
            s += (poly(xs[i] ** e + ys[i] ** e) - sums[i] ** e) * Rational(1, e)
        sums.append(s)

    prods: List[Poly] = []
    for k in range(n):
        xg = poly(sum(p ** i * xs[i] ** (p ** (k - i)) for i in range(k + 1)))
        yg = poly(sum(p ** i * ys[i] ** (p ** (k - i)) for i in range(k + 1)))
        prev = poly(0)
        for i in range(k):
            prev += prods[i] ** (p ** (k - i)) * (p ** i)
        prods.append((xg * yg - prev) * Rational(1, p ** k))

    logger.debug(f"Structure polynomials computed for p={p}, n={n}")
    return (tuple(s.set_domain(ZZ) for s in sums),
            tuple(q.set_domain(ZZ) for q in prods))


def _apply_structure(a: WittVector, b: WittVector, polys: Sequence[Poly]) -> WittVector:
    """Evaluate structure polynomials digitwise in each factor field"""
    n = a.length
    out_digits: List[List[int]] = [[] for _ in range(n)]
    for j, f in enumerate(a.ring.components):
        values = [a.digits[i][j] for i in range(n)] + [b.digits[i][j] for i in range(n)]
        for k, poly in enumerate(polys):
            acc = 0
            for monom, coeff in poly.terms():
                c = int(coeff) % f.p
                if c == 0:
                    continue
                term = f.from_int(c)
                for v, e in zip(values, monom):
                    if e:
                        term = f.mul(term, f.pow(v, e))
                acc = f.add(acc, term)
            out_digits[k].append(acc)
    return WittVector(a.ring, tuple(tuple(d) for d in out_digits))


# ============================================================================
# FINITE-LENGTH W(k)-MODULES AND THE GREENBERG FUNCTOR
# ============================================================================

@dataclass(frozen=True)
class ProfiniteModule:
    """
    Finite W(k)-module M = W_{l_1}(k) + ... + W_{l_s}(k).

    Every finite-length W(k)-module has this shape; the lengths are its
    elementary divisor exponents.
    """
    residue: FiniteField
    lengths: Tuple[int, ...]

    def __post_init__(self):
        if any(l < 1 for l in self.lengths):
            raise StructuralError(f"Summand lengths must be positive: {self.lengths}")

    @property
    def p(self) -> int:
        return self.residue.p

    @property
    def length(self) -> int:
        """Least l with p^l M = 0"""
        return max(self.lengths, default=0)

    @property
    def group(self) -> FinAbGroup:
        factors = []
        for l in sorted(self.lengths):
            factors.extend([self.p ** l] * self.residue.m)
        return group_from_factors(factors)

    @property
    def order(self) -> int:
        return self.residue.q ** sum(self.lengths)

    @classmethod
    def free(cls, residue: FiniteField, length: int) -> 'ProfiniteModule':
        return cls(residue, (length,))

    @classmethod
    def from_group(cls, group: FinAbGroup, p: int) -> 'ProfiniteModule':
        """A finite abelian p-group as a module over W(F_p) = Z_p"""
        lengths = []
        for d in group.invariant_factors:
            l, rest = 0, d
            while rest > 1 and rest % p == 0:
                rest //= p
                l += 1
            if d == 0 or rest != 1:
                raise StructuralError(f"{group} is not a finite {p}-group")
            lengths.append(l)
        return cls(GF(p, 1), tuple(lengths))


@dataclass(frozen=True)
class GreenbergPoints:
    """W(R) (x) M at finite length, with coordinates for its elements"""
    module: ProfiniteModule
    ring: PerfRing
    group: FinAbGroup

    def coordinates(self, vectors: Sequence[WittVector]) -> Tuple[int, ...]:
        """Presentation vector of (v_1, ..., v_s), v_i in W_{l_i}(R)"""
        if len(vectors) != len(self.module.lengths):
            raise StructuralError(f"Expected {len(self.module.lengths)} summand vectors")
        coords: List[int] = []
        for l, v in zip(self.module.lengths, vectors):
            if v.ring != self.ring or v.length != l:
                raise StructuralError(f"Summand vector must lie in W_{l}({self.ring})")
            for series in to_series(v):
                coords.extend(series)
        return tuple(coords)

    def classify(self, vectors: Sequence[WittVector]) -> Tuple[int, ...]:
        return self.group.classify(self.coordinates(vectors))


def _p_multiple(a: WittVector) -> WittVector:
    out = a
    for _ in range(a.ring.p - 1):
        out = witt_add(out, a)
    return out


def _additive_order(a: WittVector) -> Tuple[int, WittVector]:
    """(p^k, p^(k-1) a) for the additive order p^k of a != 0, by repeated addition"""
    zero = witt_zero(a.ring, a.length)
    order, bottom = 1, a
    x = _p_multiple(a)
    while x != zero:
        order, bottom = order * a.ring.p, x
        x = _p_multiple(x)
    return order * a.ring.p, bottom


def greenberg_points(module: ProfiniteModule, ring: PerfRing) -> GreenbergPoints:
    """
    Points of the perfect Greenberg functor of M on a finite perfect ring:
    W_l(R) (x)_{W_l(k)} M, computed summand by summand and factor by factor.

    Each W_l(F_{q_j}) is generated by the Teichmuller lifts of a basis of
    F_{q_j} over F_p. Their additive orders come from Witt addition, and the
    group is their direct sum once the socle elements p^(k-1) g are
    independent over F_p.
    """
    if ring.p != module.p:
        raise StructuralError(f"Ring {ring} and module over {module.residue} differ in characteristic")
    for f in ring.components:
        if f.m % module.residue.m:
            raise StructuralError(f"{f} is not an algebra over {module.residue}")

    p = ring.p
    factors: List[int] = []
    for l in module.lengths:
        for j, f in enumerate(ring.components):
            socle = []
            for b in range(f.m):
                digit = list(ring.zero)
                digit[j] = f.from_coeffs([0] * b + [1])
                order, bottom = _additive_order(teichmuller(ring, tuple(digit), l))
                factors.append(order)
                socle.append(f.to_coeffs(next(d[j] for d in bottom.digits if d[j])))
            if not subgroup_quotient(group_from_factors([p] * f.m), socle).is_trivial:
                raise StructuralError(f"Teichmuller basis of {f} is dependent in W_{l}")
    group = group_from_factors(sorted(factors))
    logger.debug(f"Greenberg points of {module.lengths} on {ring}: {group}")
    return GreenbergPoints(module, ring, group)
