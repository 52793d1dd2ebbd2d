"""Tests for integer linear algebra and finitely generated abelian groups"""

import numpy as np
import pytest

from algebra.abgroup import (
    AbHom, IntMatrix, cokernel, cyclic_group, direct_sum, free_group,
    group_from_factors, integer_kernel, iso_check, snf, solve_integer,
    subgroup_quotient,
)


def test_snf_transforms_and_divisibility():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    u, d, v = snf(m)
    assert u @ m @ v == d
    assert d.is_diagonal()
    assert (d[0, 0], d[1, 1]) == (2, 4)


def test_snf_rectangular():
    m = IntMatrix.from_rows([[2, 0, 0], [0, 3, 0]])
    u, d, v = snf(m)
    assert u @ m @ v == d
    assert (d[0, 0], d[1, 1]) == (1, 6)


def test_cokernel_invariant_factors():
    g = cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert g.invariant_factors == (6,)
    assert g.order == 6
    assert str(g) == "Z/6"

    h = cokernel(IntMatrix.from_rows([[2, 0], [0, 4]]))
    assert h.invariant_factors == (2, 4)
    assert h.exponent == 4


def test_free_part_comes_last():
    g = cokernel(IntMatrix.from_rows([[4], [0]]))
    assert g.invariant_factors == (4, 0)
    assert g.rank == 1
    assert g.order is None
    assert free_group(2).rank == 2


def test_trivial_group():
    g = cokernel(IntMatrix.identity(3))
    assert g.is_trivial
    assert g.order == 1
    assert str(g) == "0"


def test_classification_respects_relations():
    g = group_from_factors([2, 4])
    assert g.is_zero((2, 4))
    assert not g.is_zero((1, 0))
    assert g.element_order((0, 1)) == 4
    assert g.element_order((1, 2)) == 2
    assert len(g.elements()) == 8
    for gen in g.canonical_generators():
        assert g.element_order(gen) in g.invariant_factors


def test_element_roundtrip_through_canonical_coordinates():
    g = cokernel(IntMatrix.from_rows([[2, 1], [0, 3]]))
    for coords in g.elements():
        assert g.classify(g.element(coords)) == coords


def test_solve_integer():
    m = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_integer(m, (4, 9)) == (2, 3)
    assert solve_integer(m, (1, 0)) is None


def test_integer_kernel():
    m = IntMatrix.from_rows([[1, 2, 3]])
    k = integer_kernel(m)
    assert k.cols == 2
    for col in k.columns():
        assert m.apply(col) == (0,)


def test_subgroup_and_quotient():
    z12 = cyclic_group(12)
    assert subgroup_quotient(z12, [(4,)]).invariant_factors == (4,)
    assert z12.subgroup([(4,)]).invariant_factors == (3,)
    assert z12.contains([(4,)], (8,))
    assert not z12.contains([(4,)], (2,))


@pytest.mark.parametrize("factors", [[2, 4, 12], [3, 9, 0], [2, 2, 2, 8]])
def test_subgroup_quotient_ignores_redundant_generators(factors):
    rng = np.random.default_rng(sum(factors))
    amb = group_from_factors(factors)
    n = amb.generator_count
    for _ in range(10):
        gens = [tuple(int(c) for c in rng.integers(-6, 7, n)) for _ in range(int(rng.integers(1, 4)))]
        base = subgroup_quotient(amb, gens)
        extra = []
        for _ in range(3):
            weights = rng.integers(-3, 4, len(gens))
            extra.append(tuple(int(sum(w * g[i] for w, g in zip(weights, gens))) for i in range(n)))
        relations = [tuple(c) for c in amb.presentation.columns()]
        shuffled = [gens[i] for i in rng.permutation(len(gens))]
        redundant = subgroup_quotient(amb, shuffled + extra + relations)
        assert redundant.invariant_factors == base.invariant_factors
        for _ in range(5):
            x = tuple(int(c) for c in rng.integers(-20, 21, n))
            assert redundant.is_zero(x) == base.is_zero(x)


def test_direct_sum():
    assert direct_sum([cyclic_group(2), cyclic_group(3)]).invariant_factors == (6,)
    assert direct_sum([cyclic_group(2), cyclic_group(2)]).invariant_factors == (2, 2)
    assert iso_check(direct_sum([cyclic_group(4), cyclic_group(2)]), group_from_factors([2, 4]))


def test_homomorphisms():
    z4, z2, z3 = cyclic_group(4), cyclic_group(2), cyclic_group(3)
    reduction = AbHom(z4, z2, IntMatrix.from_rows([[1]]))
    assert reduction.is_well_defined()
    assert reduction.kernel().invariant_factors == (2,)
    assert reduction.kernel_order == 2
    assert reduction.cokernel().is_trivial

    doubling = AbHom(z2, z4, IntMatrix.from_rows([[2]]))
    assert doubling.is_well_defined()
    assert doubling.kernel_order == 1
    assert doubling.image().invariant_factors == (2,)
    assert doubling.cokernel().invariant_factors == (2,)
    assert reduction.compose(doubling).matrix == IntMatrix.from_rows([[2]])

    assert not AbHom(z4, z3, IntMatrix.from_rows([[1]])).is_well_defined()


def test_bad_shapes_raise():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        AbHom(cyclic_group(2), cyclic_group(2), IntMatrix.identity(2))
    with pytest.raises(ValueError):
        cyclic_group(5).classify((1, 2))
