"""
Finitely Generated Abelian Groups

Exact integer linear algebra used by every cohomological computation:
Smith normal form with transforms, column echelon reduction, integer
kernels and solving, and finitely generated abelian groups presented as
cokernels of integer matrices.

Matrices are stored as numpy arrays of ``dtype=object`` so that entries
are Python integers of arbitrary size.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Integer matrix in row-major order with arbitrary-precision entries"""
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"IntMatrix needs {self.rows * self.cols} entries, "
                             f"got {len(self.entries)}")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> 'IntMatrix':
        """Build a matrix from nested sequences (cols needed for 0-row matrices)"""
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else (cols or 0)
        if cols is not None and n_rows and n_cols != cols:
            raise ValueError(f"Expected {cols} columns, got {n_cols}")
        flat = tuple(int(x) for row in rows for x in row)
        return cls(n_rows, n_cols, flat)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> 'IntMatrix':
        rows, cols = arr.shape
        return cls(rows, cols, tuple(int(x) for x in arr.reshape(-1)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> 'IntMatrix':
        """Build a matrix whose columns are the given vectors"""
        arr = np.zeros((rows, len(columns)), dtype=object)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"Column {j} has {len(col)} entries, expected {rows}")
            for i, x in enumerate(col):
                arr[i, j] = int(x)
        return cls.from_array(arr)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'IntMatrix':
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> 'IntMatrix':
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        arr = np.zeros((rows, cols), dtype=object)
        for i, v in enumerate(values):
            arr[i, i] = int(v)
        return cls.from_array(arr)

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def array(self) -> np.ndarray:
        """Fresh mutable object-array copy"""
        arr = np.empty((self.rows, self.cols), dtype=object)
        for k, x in enumerate(self.entries):
            arr[k // self.cols, k % self.cols] = x
        return arr

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_array(self.array().dot(other.array()))

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix-vector product"""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum(self.entries[i * self.cols + j] * vector[j]
                         for j in range(self.cols))
                     for i in range(self.rows))

    def transpose(self) -> 'IntMatrix':
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        if self.cols == 0:
            return other
        if other.cols == 0:
            return self
        return IntMatrix.from_array(np.hstack([self.array(), other.array()]))

    def vstack(self, other: 'IntMatrix') -> 'IntMatrix':
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    """Direct sum of matrices"""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    arr = np.zeros((rows, cols), dtype=object)
    r = c = 0
    for b in blocks:
        if b.rows and b.cols:
            arr[r:r + b.rows, c:c + b.cols] = b.array()
        r += b.rows
        c += b.cols
    return IntMatrix.from_array(arr)


# ============================================================================
# SMITH NORMAL FORM
# ============================================================================

def _smallest_nonzero(sub: np.ndarray) -> Optional[Tuple[int, int]]:
    rows, cols = np.nonzero(sub)
    if len(rows) == 0:
        return None
    best = min(range(len(rows)), key=lambda k: abs(sub[rows[k], cols[k]]))
    return int(rows[best]), int(cols[best])


def _snf_arrays(m: IntMatrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return (u, u_inv, d, v) with u.m.v = d"""
    a = m.array()
    r, c = m.rows, m.cols
    u = IntMatrix.identity(r).array() if r else np.zeros((0, 0), dtype=object)
    u_inv = IntMatrix.identity(r).array() if r else np.zeros((0, 0), dtype=object)
    v = IntMatrix.identity(c).array() if c else np.zeros((0, 0), dtype=object)

    def swap_rows(i, j):
        if i != j:
            a[[i, j]] = a[[j, i]]
            u[[i, j]] = u[[j, i]]
            u_inv[:, [i, j]] = u_inv[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            a[:, [i, j]] = a[:, [j, i]]
            v[:, [i, j]] = v[:, [j, i]]

    t = 0
    while t < min(r, c):
        pos = _smallest_nonzero(a[t:, t:])
        if pos is None:
            break
        while True:
            pi, pj = pos
            swap_rows(t, t + pi)
            swap_cols(t, t + pj)
            pivot = a[t, t]

            # Clear column t below the pivot
            if t + 1 < r:
                q = a[t + 1:, t] // pivot
                if any(q):
                    a[t + 1:] -= np.outer(q, a[t])
                    u[t + 1:] -= np.outer(q, u[t])
                    u_inv[:, t] += u_inv[:, t + 1:].dot(q)
            # Clear row t right of the pivot
            if t + 1 < c:
                q = a[t, t + 1:] // pivot
                if any(q):
                    a[:, t + 1:] -= np.outer(a[:, t], q)
                    v[:, t + 1:] -= np.outer(v[:, t], q)

            rest_col = [i for i in range(t + 1, r) if a[i, t] != 0]
            rest_row = [j for j in range(t + 1, c) if a[t, j] != 0]
            if rest_col or rest_row:
                sub = np.zeros_like(a[t:, t:])
                sub[0, :] = a[t, t:]
                sub[:, 0] = a[t:, t]
                pos = _smallest_nonzero(sub)
                continue

            # Divisibility: the pivot must divide the remaining block
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i, j] % pivot != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] += a[bad]
            u[t] += u[bad]
            u_inv[:, bad] -= u_inv[:, t]
            sub = np.zeros_like(a[t:, t:])
            sub[0, :] = a[t, t:]
            pos = _smallest_nonzero(sub)

        if a[t, t] < 0:
            a[t] = -a[t]
            u[t] = -u[t]
            u_inv[:, t] = -u_inv[:, t]
        t += 1
    return u, u_inv, a, v


def snf(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form with transforms.

    Args:
        m: Integer matrix

    Returns:
        (u, d, v) with u.m.v = d, d diagonal with d_i | d_{i+1} and zeros
        last, u and v unimodular
    """
    u, _, d, v = _snf_arrays(m)
    return (IntMatrix.from_array(u) if m.rows else IntMatrix.zeros(0, 0),
            IntMatrix.from_array(d) if m.rows and m.cols else IntMatrix.zeros(m.rows, m.cols),
            IntMatrix.from_array(v) if m.cols else IntMatrix.zeros(0, 0))


# ============================================================================
# COLUMN ECHELON, KERNELS AND SOLVING
# ============================================================================

class LatticeSolver:
    """
    Column echelon form A.V = H of an integer matrix, reusable for kernel
    and integer-solution queries against the same matrix.
    """

    def __init__(self, m: IntMatrix):
        self.matrix = m
        r, c = m.rows, m.cols
        h = m.array() if r and c else np.zeros((r, c), dtype=object)
        v = IntMatrix.identity(c).array() if c else np.zeros((0, 0), dtype=object)
        pivots: List[Tuple[int, int]] = []
        k = 0
        for i in range(r):
            if k >= c:
                break
            while True:
                nz = [j for j in range(k, c) if h[i, j] != 0]
                if not nz:
                    break
                j = min(nz, key=lambda jj: abs(h[i, jj]))
                if j != k:
                    h[:, [j, k]] = h[:, [k, j]]
                    v[:, [j, k]] = v[:, [k, j]]
                if k + 1 < c:
                    q = h[i, k + 1:] // h[i, k]
                    if any(q):
                        h[:, k + 1:] -= np.outer(h[:, k], q)
                        v[:, k + 1:] -= np.outer(v[:, k], q)
                if all(h[i, jj] == 0 for jj in range(k + 1, c)):
                    pivots.append((i, k))
                    k += 1
                    break
        self.rank = k
        self._h = h
        self._v = v
        self._pivots = pivots

    def kernel(self) -> IntMatrix:
        """Basis of the integer kernel, as columns"""
        c = self.matrix.cols
        if c == 0:
            return IntMatrix.zeros(0, 0)
        basis = self._v[:, self.rank:]
        if basis.shape[1] == 0:
            return IntMatrix.zeros(c, 0)
        return IntMatrix.from_array(basis)

    def image_basis(self) -> IntMatrix:
        """Basis of the column lattice, as columns"""
        if self.rank == 0:
            return IntMatrix.zeros(self.matrix.rows, 0)
        return IntMatrix.from_array(self._h[:, :self.rank])

    def solve(self, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Some integer x with A.x = b, or None"""
        r = self.matrix.rows
        if len(b) != r:
            raise ValueError(f"Right-hand side has {len(b)} entries, expected {r}")
        y = [0] * self.rank
        for t, (i, k) in enumerate(self._pivots):
            acc = int(b[i]) - sum(self._h[i, s] * y[s] for s in range(t))
            q, rem = divmod(acc, self._h[i, k])
            if rem != 0:
                return None
            y[t] = q
        # Rows without pivots must also agree
        for i in range(r):
            if sum(self._h[i, s] * y[s] for s in range(self.rank)) != b[i]:
                return None
        c = self.matrix.cols
        return tuple(sum(self._v[j, s] * y[s] for s in range(self.rank)) for j in range(c))


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Columns spanning {x in Z^cols : m.x = 0}"""
    return LatticeSolver(m).kernel()


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Some integer solution of m.x = b, or None"""
    return LatticeSolver(m).solve(b)


def lattice_basis(m: IntMatrix) -> IntMatrix:
    """Independent columns spanning the same lattice as the columns of m"""
    return LatticeSolver(m).image_basis()


# ============================================================================
# FINITELY GENERATED ABELIAN GROUPS
# ============================================================================

@dataclass(frozen=True)
class FinAbGroup:
    """
    Finitely generated abelian group Z^g / (column lattice of presentation).

    Invariant factors follow d_1 | d_2 | ... with free factors (0) last.
    ``change_of_basis`` holds (u, u^-1) from the Smith normal form of the
    presentation; canonical coordinates of a presentation vector x are the
    entries of u.x at the non-unit diagonal positions, reduced modulo the
    invariant factors.
    """
    invariant_factors: Tuple[int, ...]
    generator_count: int
    presentation: IntMatrix
    change_of_basis: Tuple[IntMatrix, IntMatrix] = field(repr=False)
    _positions: Tuple[int, ...] = field(repr=False, default=())

    # ------------------------------------------------------------------

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when there is a free factor"""
        if any(d == 0 for d in self.invariant_factors):
            return None
        return reduce(lambda x, y: x * y, self.invariant_factors, 1)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def is_trivial(self) -> bool:
        return len(self.invariant_factors) == 0

    @property
    def exponent(self) -> Optional[int]:
        if self.rank:
            return None
        return reduce(lambda x, y: x * y // math.gcd(x, y), self.invariant_factors, 1)

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.invariant_factors)

    # ------------------------------------------------------------------
    # Element bookkeeping
    # ------------------------------------------------------------------

    def classify(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Canonical coordinates (least non-negative residues) of a presentation vector"""
        if len(x) != self.generator_count:
            raise ValueError(f"Element has {len(x)} coordinates, expected {self.generator_count}")
        u = self.change_of_basis[0]
        coords = []
        for pos, d in zip(self._positions, self.invariant_factors):
            y = sum(u[pos, j] * x[j] for j in range(self.generator_count))
            coords.append(y % d if d else y)
        return tuple(coords)

    def element(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """Presentation vector of the element with given canonical coordinates"""
        if len(coords) != len(self.invariant_factors):
            raise ValueError(f"Expected {len(self.invariant_factors)} canonical coordinates")
        u_inv = self.change_of_basis[1]
        out = [0] * self.generator_count
        for pos, cval in zip(self._positions, coords):
            if cval:
                for i in range(self.generator_count):
                    out[i] += u_inv[i, pos] * cval
        return tuple(out)

    def canonical_generators(self) -> List[Tuple[int, ...]]:
        n = len(self.invariant_factors)
        return [self.element(tuple(1 if i == k else 0 for i in range(n))) for k in range(n)]

    def is_zero(self, x: Sequence[int]) -> bool:
        return all(c == 0 for c in self.classify(x))

    def elements(self) -> List[Tuple[int, ...]]:
        """All canonical coordinate tuples of a finite group"""
        if self.order is None:
            raise ValueError("Cannot enumerate an infinite group")
        result: List[Tuple[int, ...]] = [()]
        for d in self.invariant_factors:
            result = [t + (a,) for t in result for a in range(d)]
        return result

    def element_order(self, x: Sequence[int]) -> Optional[int]:
        coords = self.classify(x)
        n = 1
        for cval, d in zip(coords, self.invariant_factors):
            if d == 0:
                if cval != 0:
                    return None
                continue
            n = math.lcm(n, d // math.gcd(d, cval))
        return n

    # ------------------------------------------------------------------
    # Derived groups
    # ------------------------------------------------------------------

    def subgroup(self, gens: Sequence[Sequence[int]]) -> 'FinAbGroup':
        """Abstract structure of the subgroup generated by presentation vectors"""
        k = len(gens)
        if k == 0:
            return cokernel(IntMatrix.zeros(0, 0))
        g = IntMatrix.from_columns(gens, self.generator_count)
        joined = g.hstack(self.presentation)
        kernel = integer_kernel(joined)
        relations = [col[:k] for col in kernel.columns()]
        return cokernel(IntMatrix.from_columns(relations, k) if relations else IntMatrix.zeros(k, 0))

    def contains(self, gens: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
        """Whether x lies in the subgroup generated by gens"""
        cols = list(gens) + self.presentation.columns()
        if not cols:
            return all(v == 0 for v in x)
        return solve_integer(IntMatrix.from_columns(cols, self.generator_count), x) is not None


def cokernel(m: IntMatrix) -> FinAbGroup:
    """
    Z^rows modulo the column lattice of m.

    Args:
        m: Relation matrix, one relation per column

    Returns:
        FinAbGroup with classification data
    """
    r = m.rows
    if r == 0:
        return FinAbGroup((), 0, m, (IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0)), ())
    u, u_inv, d, _ = _snf_arrays(m)
    diag = [d[i, i] if i < m.cols else 0 for i in range(r)]
    positions = tuple(i for i in range(r) if diag[i] != 1)
    factors = tuple(int(diag[i]) for i in positions)
    group = FinAbGroup(factors, r, m,
                       (IntMatrix.from_array(u), IntMatrix.from_array(u_inv)),
                       positions)
    logger.debug(f"cokernel of {m.rows}x{m.cols} matrix: {group}")
    return group


def free_group(n: int) -> FinAbGroup:
    return cokernel(IntMatrix.zeros(n, 0))


def cyclic_group(n: int) -> FinAbGroup:
    return cokernel(IntMatrix.from_rows([[n]]))


def group_from_factors(factors: Sequence[int]) -> FinAbGroup:
    """Direct sum of Z/d (d = 0 meaning Z)"""
    return cokernel(IntMatrix.diagonal(list(factors)))


def subgroup_quotient(amb: FinAbGroup, gens: Sequence[Sequence[int]]) -> FinAbGroup:
    """
    Quotient of amb by the subgroup generated by presentation vectors.

    The result is presented on the same generators, so amb's presentation
    coordinates classify directly in the quotient.
    """
    for g in gens:
        if len(g) != amb.generator_count:
            raise ValueError(f"Generator {tuple(g)} needs {amb.generator_count} coordinates")
    if not gens:
        return cokernel(amb.presentation)
    extra = IntMatrix.from_columns(gens, amb.generator_count)
    return cokernel(amb.presentation.hstack(extra))


def direct_sum(groups: Sequence[FinAbGroup]) -> FinAbGroup:
    """Direct sum, presented on the concatenated generators"""
    return cokernel(block_diagonal([g.presentation for g in groups]))


def iso_check(a: FinAbGroup, b: FinAbGroup) -> bool:
    """Isomorphism test via invariant factors"""
    return a.invariant_factors == b.invariant_factors


@dataclass(frozen=True)
class AbHom:
    """Homomorphism given by an integer matrix on presentation generators"""
    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.codomain.generator_count,
                                                     self.domain.generator_count):
            raise ValueError("Homomorphism matrix has the wrong shape")

    def __call__(self, x: Sequence[int]) -> Tuple[int, ...]:
        return self.matrix.apply(x)

    def is_well_defined(self) -> bool:
        """Every domain relation must land in the codomain relation lattice"""
        for rel in self.domain.presentation.columns():
            if not self.codomain.is_zero(self.matrix.apply(rel)):
                return False
        return True

    def canonical_matrix(self) -> IntMatrix:
        """Matrix of canonical coordinates: column k is the image of canonical generator k"""
        cols = [self.codomain.classify(self(g)) for g in self.domain.canonical_generators()]
        return IntMatrix.from_columns(cols, len(self.codomain.invariant_factors))

    def image(self) -> FinAbGroup:
        return self.codomain.subgroup(self.matrix.columns())

    def cokernel(self) -> FinAbGroup:
        return subgroup_quotient(self.codomain, self.matrix.columns())

    def kernel(self) -> FinAbGroup:
        """Structure of the kernel"""
        joined = self.matrix.hstack(self.codomain.presentation)
        kernel = integer_kernel(joined)
        n = self.domain.generator_count
        gens = [col[:n] for col in kernel.columns()]
        return self.domain.subgroup(gens) if gens else cokernel(IntMatrix.zeros(0, 0))

    @property
    def kernel_order(self) -> Optional[int]:
        return self.kernel().order

    def compose(self, first: 'AbHom') -> 'AbHom':
        """self after first"""
        return AbHom(first.domain, self.codomain, self.matrix @ first.matrix)
