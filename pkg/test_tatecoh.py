"""Tests for finite groups and Tate cohomology"""

from fractions import Fraction

import numpy as np
import pytest

from algebra.abgroup import IntMatrix, cokernel, cyclic_group, free_group, iso_check
from cohomology.groups import FiniteGroup, abelianization, cyclic, klein, named_group, symmetric3
from cohomology.tatecoh import (
    GModule, ShortExactSequence, group_abelianization, herbrand_quotient, induced_module,
    long_exact_check, shapiro_check, tate_cohomology,
)
from utils.errors import StructuralError


def sign_module() -> GModule:
    """Z with the generator of Z/2 acting by -1"""
    g = cyclic(2)
    z = cokernel(IntMatrix.zeros(1, 0))
    action = [IntMatrix.from_rows([[(-1) ** a]]) for a in g.elements]
    return GModule(g, z, action)


def test_named_groups():
    assert named_group('Z5').order == 5
    assert klein().is_abelian and not klein().is_cyclic
    s3 = symmetric3()
    assert not s3.is_abelian
    assert abelianization(s3)[0].invariant_factors == (2,)
    assert abelianization(klein())[0].invariant_factors == (2, 2)
    with pytest.raises(StructuralError):
        named_group('Q8')


def test_bad_multiplication_table():
    with pytest.raises(StructuralError):
        FiniteGroup([[0, 1], [1, 1]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_integers_over_cyclic_groups(n):
    m = GModule.integers(cyclic(n))
    assert tate_cohomology(m, 0).invariant_factors == (n,)
    assert tate_cohomology(m, -1).is_trivial
    assert tate_cohomology(m, 1).is_trivial
    assert tate_cohomology(m, 2).invariant_factors == (n,)
    assert tate_cohomology(m, -2).invariant_factors == (n,)


def test_complex_agrees_with_periodic_description():
    m = GModule.integers(cyclic(2))
    for i in range(-2, 3):
        assert (tate_cohomology(m, i, method='complex').invariant_factors
                == tate_cohomology(m, i, method='cyclic').invariant_factors)


def test_sign_module():
    m = sign_module()
    assert tate_cohomology(m, 0).is_trivial
    assert tate_cohomology(m, -1).invariant_factors == (2,)
    assert tate_cohomology(m, 1).invariant_factors == (2,)
    assert herbrand_quotient(m) == Fraction(1, 2)


def test_klein_four_integers():
    m = GModule.integers(klein())
    assert tate_cohomology(m, -2).invariant_factors == (2, 2)
    assert tate_cohomology(m, -1).is_trivial
    assert tate_cohomology(m, 0).invariant_factors == (4,)
    assert tate_cohomology(m, 1).is_trivial
    assert tate_cohomology(m, 2).invariant_factors == (2, 2)


def test_symmetric3_integers():
    m = GModule.integers(symmetric3())
    assert tate_cohomology(m, -2).invariant_factors == (2,)
    assert tate_cohomology(m, 0).invariant_factors == (6,)
    assert tate_cohomology(m, 1).is_trivial


def test_herbrand_quotient():
    assert herbrand_quotient(GModule.integers(cyclic(3))) == 3
    finite = GModule.trivial(cyclic(2), cyclic_group(3))
    assert herbrand_quotient(finite) == 1
    with pytest.raises(StructuralError):
        herbrand_quotient(GModule.integers(klein()))


def test_window_is_enforced():
    with pytest.raises(ValueError):
        tate_cohomology(GModule.integers(cyclic(2)), 7, window=4)


def test_action_must_be_multiplicative():
    z = cokernel(IntMatrix.zeros(1, 0))
    with pytest.raises(StructuralError):
        GModule(cyclic(2), z, [IntMatrix.identity(1), IntMatrix.from_rows([[2]])])


def test_shapiro():
    g = cyclic(4)
    h = (0, 2)
    sub, _ = g.restrict(h)
    result = shapiro_check(g, h, GModule.integers(sub), 0)
    assert result.verdict == 'pass'
    assert result.groups['H^i(H, M)'] == [2]


def test_long_exact_sequence():
    g = cyclic(2)
    z = GModule.integers(g)
    z2 = GModule.trivial(g, cyclic_group(2))
    seq = ShortExactSequence(z, z, z2, IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[1]]))
    assert long_exact_check(seq, window=1).verdict == 'pass'


def test_short_exact_sequence_rejects_non_exact():
    g = cyclic(2)
    z = GModule.integers(g)
    z2 = GModule.trivial(g, cyclic_group(2))
    with pytest.raises(StructuralError):
        ShortExactSequence(z, z, z2, IntMatrix.from_rows([[4]]), IntMatrix.from_rows([[1]]))


def test_induced_module_from_trivial_subgroup():
    g = cyclic(4)
    sub, _ = g.restrict((0,))
    induced = induced_module(g, (0,), GModule.integers(sub))
    assert induced.rank == 4
    # Z[G] is cohomologically trivial
    for i in (-1, 0, 1):
        assert tate_cohomology(induced, i).is_trivial


def test_group_abelianization():
    assert group_abelianization(symmetric3()).invariant_factors == (2,)
    assert group_abelianization(cyclic(6)).invariant_factors == (6,)


def generator_action(group: FiniteGroup, rows) -> GModule:
    """Z^n with a generator of the cyclic ``group`` acting by the matrix ``rows``"""
    gen = group.cyclic_generator()
    step = IntMatrix.from_rows(rows)
    action = [IntMatrix.identity(len(rows))] * group.order
    current = IntMatrix.identity(len(rows))
    for k in range(group.order):
        action[group.power(gen, k)] = current
        current = step @ current
    return GModule(group, free_group(len(rows)), action)


TWISTS = {2: [[-1]], 3: [[0, -1], [1, -1]]}

SHAPIRO_CASES = (
    [('Z/4', (0, 2), i) for i in range(-3, 4)]
    + [('S3', (0, 3, 4), i) for i in range(-3, 3)]
)


@pytest.mark.parametrize("name, h, i", SHAPIRO_CASES)
def test_shapiro_for_several_modules(name, h, i):
    g = cyclic(4) if name == 'Z/4' else symmetric3()
    sub, _ = g.restrict(h)
    modules = [
        GModule.integers(sub),
        GModule.trivial(sub, cyclic_group(4)),
        generator_action(sub, TWISTS[sub.order]),
    ]
    for m in modules:
        assert shapiro_check(g, h, m, i).verdict == 'pass'


def test_shapiro_in_degree_three_over_symmetric3():
    g = symmetric3()
    sub, _ = g.restrict((0, 3, 4))
    result = shapiro_check(g, (0, 3, 4), GModule.integers(sub), 3)
    assert result.verdict == 'pass'
    assert result.groups['H^i(H, M)'] == []


def random_finite_module(rng) -> GModule:
    """A direct sum of trivial, induced and sign-twisted cyclic pieces of order at most 64"""
    n = int(rng.choice([2, 3, 4]))
    g = cyclic(n)
    pieces, size = [], 1
    for _ in range(4):
        d = int(rng.choice([2, 3, 4]))
        kind = int(rng.integers(0, 3))
        if kind == 1:
            k = int(rng.choice([k for k in range(1, n + 1) if n % k == 0]))
            h = tuple(range(0, n, k))
            sub, _ = g.restrict(h)
            piece = induced_module(g, h, GModule.trivial(sub, cyclic_group(d)))
        elif kind == 2 and n % 2 == 0:
            piece = GModule(g, cyclic_group(d), [IntMatrix.from_rows([[(-1) ** a]]) for a in g.elements])
        else:
            piece = GModule.trivial(g, cyclic_group(d))
        if size * piece.module.order > 64:
            continue
        pieces.append(piece)
        size *= piece.module.order
    module = GModule.trivial(g, cyclic_group(2)) if not pieces else pieces[0]
    for piece in pieces[1:]:
        module = module.direct_sum(piece)
    return module


def test_random_finite_modules_over_cyclic_groups():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        m = random_finite_module(rng)
        assert m.module.order <= 64
        groups = {i: tate_cohomology(m, i, method='complex') for i in (-2, -1, 0, 1)}
        assert iso_check(groups[-2], groups[0])
        assert iso_check(groups[-1], groups[1])
        assert iso_check(groups[0], tate_cohomology(m, 2, method='cyclic'))
        assert herbrand_quotient(m) == 1
