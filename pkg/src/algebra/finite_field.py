"""
Finite Fields

F_{p^m} in a polynomial basis over F_p. Elements are encoded as integers
0 <= a < q whose base-p digits are the polynomial coefficients (lowest
degree first). Multiplication goes through exp/log tables of a primitive
element.
"""

import logging
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, List, Sequence, Tuple

from sympy import Poly, isprime, symbols

from utils.errors import StructuralError

_X = symbols('x')


def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    """Product of coefficient lists modulo a monic polynomial over F_p"""
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else [0]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for t in range(m + 1):
                prod[k - m + t] = (prod[k - m + t] - c * modulus[t]) % p
    prod = prod[:m] + [0] * max(0, m - len(prod))
    return prod


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Irreducibility of a polynomial over F_p (coefficients lowest degree first)"""
    if len(modulus) <= 2:
        return len(modulus) == 2 and modulus[1] % p != 0
    return Poly(list(reversed([c % p for c in modulus])), _X, modulus=p).is_irreducible


class FiniteField:
    """
    The finite field F_p[x]/(modulus).

    Args:
        p: Characteristic (prime)
        modulus: Monic irreducible polynomial, coefficients lowest degree first
    """

    def __init__(self, p: int, modulus: Sequence[int]):
        self.logger = logging.getLogger(__name__)
        if not isprime(p):
            raise StructuralError(f"Characteristic {p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise StructuralError(f"Defining polynomial {modulus} must be monic of degree >= 1")
        if not is_irreducible(p, modulus):
            raise StructuralError(f"Defining polynomial {modulus} is reducible over F_{p}")

        self.p = p
        self.modulus = modulus
        self.m = len(modulus) - 1
        self.q = p ** self.m
        self._build_tables()

        self.logger.debug(f"Built F_{self.q} with modulus {self.modulus}")

    # ------------------------------------------------------------------

    def _build_tables(self):
        """Find a primitive element and tabulate its powers"""
        q1 = self.q - 1
        for cand in range(1, self.q):
            if self.q == 2:
                self._exp = [1]
                break
            coeffs = list(self.to_coeffs(cand))
            power = [1] + [0] * (self.m - 1)
            exp: List[int] = []
            for _ in range(q1):
                exp.append(self.from_coeffs(power))
                power = _poly_mulmod(power, coeffs, self.modulus, self.p)
                if exp[-1] == 1 and len(exp) > 1:
                    break
            if len(exp) == q1 and self.from_coeffs(power) == 1 and len(set(exp)) == q1:
                self._exp = exp
                break
        self._log: Dict[int, int] = {a: i for i, a in enumerate(self._exp)}

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"F_{self.q}[{','.join(map(str, self.modulus))}]"

    # ------------------------------------------------------------------
    # Encoding
    # ------------------------------------------------------------------

    def to_coeffs(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        a = 0
        for c in reversed(list(coeffs)[:self.m]):
            a = a * self.p + (int(c) % self.p)
        return a

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q"""
        return n % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    @property
    def generator(self) -> int:
        """Primitive element of the multiplicative group"""
        return self._exp[1] if self.q > 2 else 1

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self.from_coeffs(x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_coeffs(-x for x in self.to_coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Inverse of zero in a finite field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("Negative power of zero")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def scalar(self, n: int, a: int) -> int:
        """n * a for an integer n"""
        return self.mul(self.from_int(n), a)

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k); negative k gives the inverse Frobenius"""
        return self.pow(a, pow(self.p, k % self.m, self.q - 1) if self.q > 2 else 1)

    def log(self, a: int) -> int:
        """Discrete logarithm to the primitive element"""
        if a == 0:
            raise ValueError("Logarithm of zero")
        return self._log[a]

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer mod p"""
        t = 0
        for k in range(self.m):
            t = self.add(t, self.frobenius(a, k))
        return t

    def evaluate(self, coeffs: Sequence[int], x: int) -> int:
        """Evaluate a polynomial with coefficients in this field"""
        acc = 0
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def roots(self, coeffs: Sequence[int]) -> List[int]:
        """All roots in this field, by exhaustion"""
        return [x for x in self.elements() if self.evaluate(coeffs, x) == 0]


# ============================================================================
# CONSTRUCTION AND EMBEDDINGS
# ============================================================================

@lru_cache(maxsize=None)
def GF(p: int, m: int = 1) -> FiniteField:
    """
    Standard field F_{p^m}: the least monic primitive polynomial of degree m
    in lexicographic order of coefficients, so the class of x generates F^x.
    """
    if m == 1:
        return FiniteField(p, (0, 1))
    for tail in product(range(p), repeat=m):
        modulus = tuple(tail) + (1,)
        if modulus[0] == 0 or not is_irreducible(p, modulus):
            continue
        field = FiniteField(p, modulus)
        if gcd(field.log(p), field.q - 1) == 1:
            return field
    raise StructuralError(f"No primitive polynomial of degree {m} over F_{p}")


class FieldEmbedding:
    """
    Field homomorphism F_{p^a} -> F_{p^b} fixed by the image of x.

    Args:
        source: Smaller field
        target: Larger field
        root: Root of source.modulus in target
    """

    def __init__(self, source: FiniteField, target: FiniteField, root: int):
        if source.p != target.p or target.m % source.m != 0:
            raise StructuralError(f"No embedding {source} -> {target}")
        if target.evaluate(source.modulus, root) != 0:
            raise StructuralError(f"{root} is not a root of {source.modulus} in {target}")
        self.source = source
        self.target = target
        self.root = root
        self._table = [self._image(a) for a in source.elements()]
        self._inverse = {b: a for a, b in enumerate(self._table)}

    def _image(self, a: int) -> int:
        coeffs = self.source.to_coeffs(a)
        return self.target.evaluate([self.target.from_int(c) for c in coeffs], self.root)

    def __call__(self, a: int) -> int:
        return self._table[a]

    def preimage(self, b: int) -> int:
        """Inverse on the image; raises KeyError outside it"""
        return self._inverse[b]

    def contains(self, b: int) -> bool:
        return b in self._inverse

    def compose_frobenius(self, k: int) -> 'FieldEmbedding':
        """This embedding followed by the p^k Frobenius of the target"""
        return FieldEmbedding(self.source, self.target, self.target.frobenius(self.root, k))


def embeddings(source: FiniteField, target: FiniteField) -> List[FieldEmbedding]:
    """All embeddings, ordered by the image of x"""
    if source.p != target.p or target.m % source.m != 0:
        return []
    return [FieldEmbedding(source, target, r) for r in target.roots(source.modulus)]


def standard_embedding(source: FiniteField, target: FiniteField) -> FieldEmbedding:
    """The embedding sending x to the least root"""
    found = embeddings(source, target)
    if not found:
        raise StructuralError(f"{source} does not embed in {target}")
    return found[0]
