"""
Finite Groups

Finite groups given by a multiplication table over the indices
0..n-1, the small named groups used by the cohomology checks, and the
abelianization G^ab as a finitely generated abelian group.
"""

import logging
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.abgroup import FinAbGroup, IntMatrix, cokernel
from utils.errors import StructuralError

logger = logging.getLogger(__name__)


class FiniteGroup:
    """
    A finite group on the elements 0..n-1.

    Args:
        table: table[a][b] is the index of a*b
        labels: Optional display names
        name: Optional display name of the group
    """

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: Optional[str] = None):
        self.logger = logging.getLogger(__name__)
        n = len(table)
        if n == 0:
            raise StructuralError("A group needs at least one element")
        self.table: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in table)
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise StructuralError("Multiplication table is not square over 0..n-1")

        identities = [e for e in range(n)
                      if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n))]
        if not identities:
            raise StructuralError("Multiplication table has no identity")
        self.identity = identities[0]

        inverse = []
        for a in range(n):
            found = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(found) != 1 or self.table[found[0]][a] != self.identity:
                raise StructuralError(f"Element {a} has no two-sided inverse")
            inverse.append(found[0])
        self._inverse = tuple(inverse)

        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise StructuralError(f"Associativity fails at ({a}, {b}, {c})")

        self.order = n
        self.labels = tuple(labels) if labels is not None else tuple(str(a) for a in range(n))
        self.name = name or f"G{n}"

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    @property
    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in self.elements)

    def cyclic_generator(self) -> int:
        for a in self.elements:
            if self.element_order(a) == self.order:
                return a
        raise StructuralError(f"{self.name} is not cyclic")

    # ------------------------------------------------------------------
    # Subgroups
    # ------------------------------------------------------------------

    def subgroup(self, gens: Sequence[int]) -> Tuple[int, ...]:
        """Sorted elements of the subgroup generated by gens"""
        found = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in found:
                    found.add(y)
                    frontier.append(y)
        return tuple(sorted(found))

    def is_subgroup(self, elements: Sequence[int]) -> bool:
        s = set(elements)
        if self.identity not in s:
            return False
        return all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def coset_representatives(self, h: Sequence[int]) -> List[int]:
        """Least element of each left coset gH, in increasing order"""
        if not self.is_subgroup(h):
            raise StructuralError(f"{tuple(h)} is not a subgroup of {self.name}")
        seen = set()
        reps = []
        for g in self.elements:
            if g in seen:
                continue
            reps.append(g)
            seen.update(self.mul(g, x) for x in h)
        return reps

    def restrict(self, h: Sequence[int]) -> Tuple['FiniteGroup', List[int]]:
        """The subgroup as a group in its own right, with its embedding"""
        h = sorted(h)
        if not self.is_subgroup(h):
            raise StructuralError(f"{tuple(h)} is not a subgroup of {self.name}")
        pos = {x: i for i, x in enumerate(h)}
        table = [[pos[self.mul(a, b)] for b in h] for a in h]
        return FiniteGroup(table, [self.labels[x] for x in h], f"sub({self.name})"), list(h)


# ============================================================================
# NAMED GROUPS
# ============================================================================

def cyclic(n: int) -> FiniteGroup:
    """Z/n with generator 1"""
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       [str(a) for a in range(n)], f"Z/{n}")


def klein() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


def symmetric3() -> FiniteGroup:
    """S_3 on permutations of (0, 1, 2) in lexicographic order; (st)(i) = s(t(i))"""
    perms = list(permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(s[t[i]] for i in range(3))] for t in perms] for s in perms]
    return FiniteGroup(table, ["".join(map(str, p)) for p in perms], "S3")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with (a, b) at index a * |H| + b"""
    n = h.order
    table = [[g.mul(a // n, c // n) * n + h.mul(a % n, c % n)
              for c in range(g.order * n)] for a in range(g.order * n)]
    labels = [f"({g.labels[a // n]},{h.labels[a % n]})" for a in range(g.order * n)]
    return FiniteGroup(table, labels, f"{g.name}x{h.name}")


NAMED_GROUPS = {
    'Z2': lambda: cyclic(2),
    'Z3': lambda: cyclic(3),
    'Z4': lambda: cyclic(4),
    'Z6': lambda: cyclic(6),
    'V4': klein,
    'S3': symmetric3,
}


def named_group(name: str) -> FiniteGroup:
    if name.startswith('Z') and name[1:].isdigit():
        return cyclic(int(name[1:]))
    if name not in NAMED_GROUPS:
        raise StructuralError(f"Unknown group '{name}'. Available: {list(NAMED_GROUPS)}")
    return NAMED_GROUPS[name]()


# ============================================================================
# ABELIANIZATION
# ============================================================================

def abelianization(g: FiniteGroup) -> Tuple[FinAbGroup, Dict[int, Tuple[int, ...]]]:
    """
    G^ab = Z[G-basis] / (e_a + e_b - e_ab).

    Returns:
        The group and the canonical coordinates of every element's class
    """
    n = g.order
    relations = []
    for a in range(n):
        for b in range(n):
            col = [0] * n
            col[a] += 1
            col[b] += 1
            col[g.mul(a, b)] -= 1
            relations.append(col)
    ab = cokernel(IntMatrix.from_columns(relations, n))
    images = {a: ab.classify(tuple(1 if i == a else 0 for i in range(n))) for a in range(n)}
    logger.debug(f"{g.name}^ab = {ab}")
    return ab, images
