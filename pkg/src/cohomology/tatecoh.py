"""
Tate Cohomology

Tate cohomology H^i(G, M) of a finite group G acting on a finitely
generated abelian group M, for any integer i, computed from the normalized
complete complex:

- C^i = maps (G - 1)^i -> M for i >= 0 with the inhomogeneous cochain
  differential,
- C^{-1} = M, with d_{-1} the norm N_G = sum_g g,
- C^{-k-1} = chains (G - 1)^k (x) M for k >= 1 with the bar boundary.

Cochain vectors are laid out slot by slot: entry t * n + j is generator j
of M in tuple slot t. For cyclic G the periodic Ker/Im description with
sigma - 1 and N_G is used instead unless the complex is requested.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.abgroup import (
    AbHom, FinAbGroup, IntMatrix, LatticeSolver, block_diagonal, cokernel, direct_sum,
    integer_kernel, iso_check, lattice_basis,
)
from utils.errors import StructuralError
from utils.report import CheckResult

from .groups import FiniteGroup, abelianization

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 4
AUTO = 'auto'
COMPLEX = 'complex'
CYCLIC = 'cyclic'


# ============================================================================
# G-MODULES
# ============================================================================

class GModule:
    """
    A finitely generated abelian group with a left G-action.

    Args:
        group: The finite group G
        module: M as a presentation Z^n / relations
        action: One n x n integer matrix per group element, acting on the
            presentation generators
        check: Verify the module axioms modulo relations
    """

    def __init__(self, group: FiniteGroup, module: FinAbGroup,
                 action: Sequence[IntMatrix], check: bool = True):
        self.logger = logging.getLogger(__name__)
        self.group = group
        self.module = module
        self.action: Tuple[IntMatrix, ...] = tuple(action)
        self.rank = module.generator_count
        self._complex: Optional['TateComplex'] = None
        if len(self.action) != group.order:
            raise StructuralError(f"Need {group.order} action matrices, got {len(self.action)}")
        for a in self.action:
            if (a.rows, a.cols) != (self.rank, self.rank):
                raise StructuralError(f"Action matrix of shape {a.rows}x{a.cols} on rank {self.rank}")
        if check:
            self._validate()

    def _validate(self):
        n, g = self.rank, self.group
        basis = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        for s, a in enumerate(self.action):
            for rel in self.module.presentation.columns():
                if not self.module.is_zero(a.apply(rel)):
                    raise StructuralError(f"Element {g.labels[s]} does not preserve the relations")
        for e in basis:
            if not self.module.is_zero(tuple(x - y for x, y in zip(self.act(g.identity, e), e))):
                raise StructuralError("The identity does not act trivially")
        for s in g.elements:
            for t in g.elements:
                st = g.mul(s, t)
                for e in basis:
                    lhs = self.act(s, self.act(t, e))
                    rhs = self.act(st, e)
                    if not self.module.is_zero(tuple(x - y for x, y in zip(lhs, rhs))):
                        raise StructuralError(f"Action is not multiplicative at "
                                              f"({g.labels[s]}, {g.labels[t]})")

    def __repr__(self) -> str:
        return f"GModule({self.group.name}, {self.module})"

    @classmethod
    def trivial(cls, group: FiniteGroup, module: FinAbGroup) -> 'GModule':
        n = module.generator_count
        return cls(group, module, [IntMatrix.identity(n)] * group.order, check=False)

    @classmethod
    def integers(cls, group: FiniteGroup) -> 'GModule':
        """Z with trivial action"""
        return cls.trivial(group, cokernel(IntMatrix.zeros(1, 0)))

    def act(self, g: int, x: Sequence[int]) -> Tuple[int, ...]:
        return self.action[g].apply(x)

    def norm_matrix(self) -> IntMatrix:
        arr = np.zeros((self.rank, self.rank), dtype=object)
        for a in self.action:
            arr = arr + a.array()
        return IntMatrix.from_array(arr) if self.rank else IntMatrix.zeros(0, 0)

    def direct_sum(self, other: 'GModule') -> 'GModule':
        if other.group != self.group:
            raise StructuralError("Direct sum of modules over different groups")
        module = direct_sum([self.module, other.module])
        action = [block_diagonal([a, b]) for a, b in zip(self.action, other.action)]
        return GModule(self.group, module, action, check=False)


def induced_module(group: FiniteGroup, h: Sequence[int], m: GModule) -> GModule:
    """
    Ind_H^G M = Z[G] (x)_{Z[H]} M, one copy of M per left coset g_i H.

    ``m`` is a module over the group returned by ``group.restrict(h)``.
    g (g_i (x) x) = g_j (x) (h x) where g g_i = g_j h.
    """
    sub, embedding = group.restrict(h)
    if m.group != sub:
        raise StructuralError("Module is not over the restricted subgroup")
    position = {x: i for i, x in enumerate(embedding)}
    reps = group.coset_representatives(embedding)
    k, n = len(reps), m.rank
    coset_of = {}
    for i, g in enumerate(reps):
        for x in embedding:
            coset_of[group.mul(g, x)] = i
    module = direct_sum([m.module] * k) if k else m.module
    action = []
    for g in group.elements:
        arr = np.zeros((k * n, k * n), dtype=object)
        for i, gi in enumerate(reps):
            ggi = group.mul(g, gi)
            j = coset_of[ggi]
            hh = group.mul(group.inv(reps[j]), ggi)
            block = m.action[position[hh]].array()
            arr[j * n:(j + 1) * n, i * n:(i + 1) * n] = block
        action.append(IntMatrix.from_array(arr) if k * n else IntMatrix.zeros(0, 0))
    out = GModule(group, module, action, check=False)
    logger.debug(f"Induced {m} from index-{k} subgroup: {out}")
    return out


# ============================================================================
# COMPLETE COMPLEX
# ============================================================================

@dataclass
class TateGroup:
    """
    H^i as cycles modulo boundaries: ``basis`` spans the cycle lattice (in
    cochain coordinates) and ``group`` is presented on that basis.
    """
    degree: int
    group: FinAbGroup
    basis: IntMatrix
    solver: Optional[LatticeSolver]

    def classify(self, cochain: Sequence[int]) -> Tuple[int, ...]:
        """Canonical coordinates of the class of a cycle"""
        if self.basis.cols == 0:
            if any(cochain):
                raise StructuralError(f"Vector is not a {self.degree}-cycle")
            return ()
        coords = self.solver.solve(cochain)
        if coords is None:
            raise StructuralError(f"Vector is not a {self.degree}-cycle")
        return self.group.classify(coords)

    def representative(self, coords: Sequence[int]) -> Tuple[int, ...]:
        return self.basis.apply(self.group.element(coords))

    @property
    def order(self) -> Optional[int]:
        return self.group.order


def _subquotient(degree: int, size: int, cycles: List[Sequence[int]],
                 boundaries: List[Sequence[int]]) -> TateGroup:
    """Lattice spanned by cycles modulo the lattice spanned by boundaries"""
    if size == 0 or not cycles:
        empty = cokernel(IntMatrix.zeros(0, 0))
        return TateGroup(degree, empty, IntMatrix.zeros(size, 0), None)
    basis = lattice_basis(IntMatrix.from_columns(cycles, size))
    if basis.cols == 0:
        return TateGroup(degree, cokernel(IntMatrix.zeros(0, 0)), basis, None)
    solver = LatticeSolver(basis)
    relations = []
    for b in boundaries:
        coords = solver.solve(b)
        if coords is None:
            raise StructuralError(f"Boundary in degree {degree} is not a cycle")
        relations.append(coords)
    rel = IntMatrix.from_columns(relations, basis.cols) if relations else IntMatrix.zeros(basis.cols, 0)
    return TateGroup(degree, cokernel(rel), basis, solver)


def _kernel_mod(d: IntMatrix, target_relations: IntMatrix) -> List[Tuple[int, ...]]:
    """Generators of {x : d.x lies in the target relation lattice}"""
    n = d.cols
    if n == 0:
        return []
    joined = d.hstack(target_relations) if target_relations.cols else d
    if joined.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    kernel = integer_kernel(joined)
    return [col[:n] for col in kernel.columns()]


class TateComplex:
    """
    The normalized complete complex of a G-module, built degree by degree
    on demand.

    Args:
        module: The G-module M
    """

    def __init__(self, module: GModule):
        self.logger = logging.getLogger(__name__)
        self.module = module
        self.group = module.group
        self.others = [g for g in self.group.elements if g != self.group.identity]
        self._tuples: Dict[int, List[Tuple[int, ...]]] = {}
        self._index: Dict[int, Dict[Tuple[int, ...], int]] = {}
        self._differentials: Dict[int, IntMatrix] = {}
        self._checked: set = set()
        self._cohomology: Dict[int, TateGroup] = {}

    def _tuple_length(self, i: int) -> int:
        """Length of the index tuples of C^i"""
        return i if i >= 0 else -i - 1

    def tuples(self, i: int) -> List[Tuple[int, ...]]:
        k = self._tuple_length(i)
        if k not in self._tuples:
            self._tuples[k] = [tuple(t) for t in product(self.others, repeat=k)]
            self._index[k] = {t: s for s, t in enumerate(self._tuples[k])}
        return self._tuples[k]

    def size(self, i: int) -> int:
        return len(self.tuples(i)) * self.module.rank

    def relations(self, i: int) -> IntMatrix:
        """Relation lattice of C^i (one copy of the module relations per slot)"""
        slots = len(self.tuples(i))
        rel = self.module.module.presentation
        if slots == 0 or rel.cols == 0:
            return IntMatrix.zeros(self.size(i), 0)
        return block_diagonal([rel] * slots)

    def differential(self, i: int) -> IntMatrix:
        """d_i : C^i -> C^{i+1}"""
        if i in self._differentials:
            return self._differentials[i]
        n = self.module.rank
        rows, cols = self.size(i + 1), self.size(i)
        arr = np.zeros((rows, cols), dtype=object)
        g = self.group
        ident = np.identity(n, dtype=object) if n else np.zeros((0, 0), dtype=object)

        def add_block(r: int, c: int, block):
            arr[r * n:(r + 1) * n, c * n:(c + 1) * n] += block

        if i == -1:
            if n:
                arr[:, :] = self.module.norm_matrix().array()
        elif i >= 0:
            self.tuples(i)
            index = self._index[i]
            for r, s in enumerate(self.tuples(i + 1)):
                add_block(r, index[s[1:]], self.module.action[s[0]].array())
                for j in range(1, i + 1):
                    prod_ = g.mul(s[j - 1], s[j])
                    if prod_ == g.identity:
                        continue
                    t = s[:j - 1] + (prod_,) + s[j + 1:]
                    add_block(r, index[t], (-1) ** j * ident)
                add_block(r, index[s[:i]], (-1) ** (i + 1) * ident)
        else:
            k = -i - 1
            self.tuples(-k)
            lower = self._index[k - 1]
            for c, t in enumerate(self.tuples(i)):
                add_block(lower[t[1:]], c, self.module.action[g.inv(t[0])].array())
                for j in range(1, k):
                    prod_ = g.mul(t[j - 1], t[j])
                    if prod_ == g.identity:
                        continue
                    s = t[:j - 1] + (prod_,) + t[j + 1:]
                    add_block(lower[s], c, (-1) ** j * ident)
                add_block(lower[t[:k - 1]], c, (-1) ** k * ident)

        d = IntMatrix.from_array(arr) if rows and cols else IntMatrix.zeros(rows, cols)
        self._differentials[i] = d
        self.logger.debug(f"d_{i}: {cols} -> {rows} over {g.name}")
        return d

    def check_square_zero(self, i: int):
        """d_i . d_{i-1} maps into the relations of C^{i+1}"""
        if i in self._checked:
            return
        comp = self.differential(i) @ self.differential(i - 1)
        rel = self.relations(i + 1)
        solver = LatticeSolver(rel) if rel.cols else None
        for col in comp.columns():
            if any(col) and (solver is None or solver.solve(col) is None):
                raise StructuralError(f"d_{i} o d_{i - 1} != 0 over {self.group.name}")
        self._checked.add(i)

    def cohomology(self, i: int) -> TateGroup:
        if i not in self._cohomology:
            self.check_square_zero(i)
            d = self.differential(i)
            cycles = _kernel_mod(d, self.relations(i + 1))
            boundaries = self.differential(i - 1).columns() + self.relations(i).columns()
            self._cohomology[i] = _subquotient(i, self.size(i), cycles, boundaries)
        return self._cohomology[i]


# ============================================================================
# COHOMOLOGY
# ============================================================================

def _cyclic_cohomology(m: GModule, i: int) -> TateGroup:
    """Periodic description: even degrees Ker(s - 1) / N M, odd degrees Ker N / (s - 1) M"""
    g = m.group
    s = g.cyclic_generator()
    n = m.rank
    rel = m.module.presentation
    diff = IntMatrix.from_array(m.action[s].array() - np.identity(n, dtype=object)) \
        if n else IntMatrix.zeros(0, 0)
    norm = m.norm_matrix()
    kill, image = (diff, norm) if i % 2 == 0 else (norm, diff)
    cycles = _kernel_mod(kill, rel)
    boundaries = image.columns() + rel.columns()
    return _subquotient(i, n, cycles, boundaries)


def tate_complex(m: GModule) -> TateComplex:
    """Complex of a module, reused across degrees"""
    if m._complex is None:
        m._complex = TateComplex(m)
    return m._complex


def tate_group(m: GModule, i: int, method: str = AUTO) -> TateGroup:
    """H^i with its classification data"""
    if m.group.order == 1 or m.rank == 0:
        return TateGroup(i, cokernel(IntMatrix.zeros(0, 0)), IntMatrix.zeros(m.rank, 0), None)
    if method == AUTO:
        method = CYCLIC if m.group.is_cyclic else COMPLEX
    if method == CYCLIC:
        return _cyclic_cohomology(m, i)
    if method == COMPLEX:
        return tate_complex(m).cohomology(i)
    raise StructuralError(f"Unknown method '{method}'. Available: {[AUTO, COMPLEX, CYCLIC]}")


def tate_cohomology(m: GModule, i: int, method: str = AUTO,
                    window: int = DEFAULT_WINDOW) -> FinAbGroup:
    """
    H^i(G, M).

    Args:
        m: The G-module
        i: Degree, |i| <= window
        method: 'auto' (cyclic fast path when G is cyclic), 'complex' or 'cyclic'
        window: Largest |i| accepted
    """
    if abs(i) > window:
        raise ValueError(f"Degree {i} outside the window [-{window}, {window}]")
    out = tate_group(m, i, method).group
    logger.debug(f"H^{i}({m.group.name}, {m.module}) = {out}")
    return out


def herbrand_quotient(m: GModule) -> Fraction:
    """|H^0| / |H^-1| for cyclic G and finite M"""
    if not m.group.is_cyclic:
        raise StructuralError("Herbrand quotient needs a cyclic group")
    h0 = tate_cohomology(m, 0).order
    h1 = tate_cohomology(m, -1).order
    if h0 is None or h1 is None:
        raise StructuralError("Herbrand quotient needs finite cohomology")
    return Fraction(h0, h1)


def group_abelianization(g: FiniteGroup) -> FinAbGroup:
    return abelianization(g)[0]


# ============================================================================
# SHAPIRO AND LONG EXACT SEQUENCES
# ============================================================================

def shapiro_check(group: FiniteGroup, h: Sequence[int], m: GModule, i: int) -> CheckResult:
    """H^i(G, Ind_H^G M) = H^i(H, M)"""
    induced = induced_module(group, h, m)
    lhs = tate_cohomology(induced, i)
    rhs = tate_cohomology(m, i)
    ok = iso_check(lhs, rhs)
    return CheckResult(
        name='shapiro',
        anchor="H^i(G, Ind_H^G M) = H^i(H, M)",
        verdict='pass' if ok else 'fail',
        inputs={'G': group.name, 'H': list(h), 'M': str(m.module), 'i': i},
        groups={'H^i(G, Ind M)': list(lhs.invariant_factors), 'H^i(H, M)': list(rhs.invariant_factors)},
        expected=str(rhs),
        message=f"{lhs} vs {rhs}",
    )


class ShortExactSequence:
    """
    0 -> A -> B -> C -> 0 of G-modules with maps on presentation generators.

    Raises:
        StructuralError: a map is not G-equivariant or the sequence is not exact,
            naming the failing position
    """

    def __init__(self, a: GModule, b: GModule, c: GModule, alpha: IntMatrix, beta: IntMatrix):
        self.logger = logging.getLogger(__name__)
        if not (a.group == b.group == c.group):
            raise StructuralError("Modules of a short exact sequence need one group")
        self.a, self.b, self.c = a, b, c
        self.alpha = AbHom(a.module, b.module, alpha)
        self.beta = AbHom(b.module, c.module, beta)
        self._check()
        # generator lifts through beta
        self._lift = self._lifting_matrix()
        self._alpha_solver = LatticeSolver(alpha.hstack(b.module.presentation)
                                           if b.module.presentation.cols else alpha)

    def _check(self):
        for name, f, src, dst in (('alpha', self.alpha, self.a, self.b),
                                  ('beta', self.beta, self.b, self.c)):
            if not f.is_well_defined():
                raise StructuralError(f"{name} does not respect relations")
            for g in src.group.elements:
                for j in range(src.rank):
                    e = tuple(1 if t == j else 0 for t in range(src.rank))
                    lhs = f(src.act(g, e))
                    rhs = dst.act(g, f(e))
                    if not dst.module.is_zero(tuple(x - y for x, y in zip(lhs, rhs))):
                        raise StructuralError(f"{name} is not equivariant at element "
                                              f"{src.group.labels[g]}, generator {j}")
        if not self.alpha.kernel().is_trivial:
            raise StructuralError("Sequence is not exact at A: alpha is not injective")
        if not self.beta.cokernel().is_trivial:
            raise StructuralError("Sequence is not exact at C: beta is not surjective")
        for col in self.alpha.matrix.columns():
            if not self.c.module.is_zero(self.beta(col)):
                raise StructuralError("Sequence is not exact at B: beta o alpha != 0")
        kernel = _kernel_mod(self.beta.matrix, self.c.module.presentation)
        for x in kernel:
            if not self.b.module.contains(self.alpha.matrix.columns(), x):
                raise StructuralError("Sequence is not exact at B: Ker(beta) exceeds Im(alpha)")

    def _lifting_matrix(self) -> IntMatrix:
        nb, nc = self.b.rank, self.c.rank
        gens = self.beta.matrix.hstack(self.c.module.presentation) \
            if self.c.module.presentation.cols else self.beta.matrix
        solver = LatticeSolver(gens)
        cols = []
        for j in range(nc):
            e = tuple(1 if t == j else 0 for t in range(nc))
            x = solver.solve(e)
            cols.append(x[:nb])
        return IntMatrix.from_columns(cols, nb) if cols else IntMatrix.zeros(nb, 0)

    def _slotwise(self, mat: IntMatrix, vec: Sequence[int], n_in: int) -> Tuple[int, ...]:
        out: List[int] = []
        for s in range(len(vec) // n_in if n_in else 0):
            out.extend(mat.apply(vec[s * n_in:(s + 1) * n_in]))
        return tuple(out)

    def induced_maps(self, i: int) -> Tuple[AbHom, AbHom, AbHom]:
        """alpha_*, beta_* in degree i and the connecting map H^i(C) -> H^{i+1}(A)"""
        ca, cb, cc = (tate_complex(self.a), tate_complex(self.b), tate_complex(self.c))
        ha, hb, hc = ca.cohomology(i), cb.cohomology(i), cc.cohomology(i)
        ha_next = ca.cohomology(i + 1)

        def matrix(src: TateGroup, dst: TateGroup, fn) -> IntMatrix:
            cols = [dst.classify(fn(src.representative(g))) for g in _canonical_units(src.group)]
            return IntMatrix.from_columns(cols, len(dst.group.invariant_factors)) \
                if cols else IntMatrix.zeros(len(dst.group.invariant_factors), 0)

        alpha_star = matrix(ha, hb, lambda v: self._slotwise(self.alpha.matrix, v, self.a.rank))
        beta_star = matrix(hb, hc, lambda v: self._slotwise(self.beta.matrix, v, self.b.rank))

        def connect(z: Sequence[int]) -> Tuple[int, ...]:
            y = self._slotwise(self._lift, z, self.c.rank)
            dy = cb.differential(i).apply(y)
            nb, out = self.b.rank, []
            for s in range(len(dy) // nb if nb else 0):
                sol = self._alpha_solver.solve(dy[s * nb:(s + 1) * nb])
                if sol is None:
                    raise StructuralError(f"Connecting map in degree {i} leaves Im(alpha)")
                out.extend(sol[:self.a.rank])
            return tuple(out)

        delta = matrix(hc, ha_next, connect)
        return (AbHom(_canonical(ha.group), _canonical(hb.group), alpha_star),
                AbHom(_canonical(hb.group), _canonical(hc.group), beta_star),
                AbHom(_canonical(hc.group), _canonical(ha_next.group), delta))


def _canonical(group: FinAbGroup) -> FinAbGroup:
    """The same group presented on its canonical generators"""
    return cokernel(IntMatrix.diagonal(list(group.invariant_factors)))


def _canonical_units(group: FinAbGroup) -> List[Tuple[int, ...]]:
    n = len(group.invariant_factors)
    return [tuple(1 if t == k else 0 for t in range(n)) for k in range(n)]


def _exact_at(incoming: AbHom, outgoing: AbHom) -> bool:
    """Im(incoming) = Ker(outgoing) by composite and order accounting"""
    comp = outgoing.compose(incoming)
    if any(not outgoing.codomain.is_zero(comp(g)) for g in _canonical_units(incoming.domain)):
        return False
    return incoming.image().order == outgoing.kernel().order


def long_exact_check(seq: ShortExactSequence, window: int = 2) -> CheckResult:
    """
    Exactness of ... -> H^i(A) -> H^i(B) -> H^i(C) -> H^{i+1}(A) -> ...
    at every node with degree in [-window, window].
    """
    failures = []
    groups = {}
    maps = {i: seq.induced_maps(i) for i in range(-window - 1, window + 1)}
    for i in range(-window, window + 1):
        a_s, b_s, d = maps[i]
        d_prev = maps[i - 1][2]
        for label, inc, out in ((f"H^{i}(A)", d_prev, a_s), (f"H^{i}(B)", a_s, b_s),
                                (f"H^{i}(C)", b_s, d)):
            if not _exact_at(inc, out):
                failures.append(label)
        groups[f"H^{i}"] = [str(a_s.domain), str(b_s.domain), str(b_s.codomain)]
    return CheckResult(
        name='long_exact',
        anchor="long exact sequence of Tate cohomology",
        verdict='pass' if not failures else 'fail',
        inputs={'G': seq.a.group.name, 'A': str(seq.a.module), 'B': str(seq.b.module),
                'C': str(seq.c.module), 'window': window},
        groups=groups,
        expected="exact at every node",
        message="not exact at " + ", ".join(failures) if failures else "exact at every node",
    )
