"""Tests for extension towers, Galois groups and tensor decompositions"""

import pytest

from algebra.finite_field import GF
from algebra.witt import PerfRing, ProfiniteModule, greenberg_points
from local_fields.extension import (
    Extension, base_change, base_change_lift, different_valuation, galois_group,
    hensel_roots, max_unramified_subext, ramified_restriction, ramified_subext, tensor_decompose,
    totally_ramified_part, weil_restriction_points,
)
from local_fields.localfield import padic_field
from utils.errors import UnsupportedInputError


@pytest.fixture(scope="module")
def q2():
    return padic_field(2, 1, 20)


@pytest.fixture(scope="module")
def q2_i(q2):
    return Extension(q2, [('eisenstein', [2, -2])])


@pytest.fixture(scope="module")
def q2_unram2(q2):
    return Extension(q2, [('unram', 2)])


def test_degrees(q2_i, q2_unram2):
    assert (q2_i.e, q2_i.f, q2_i.degree) == (2, 1, 2)
    assert (q2_unram2.e, q2_unram2.f, q2_unram2.degree) == (1, 2, 2)


def test_norm_and_trace_of_uniformizer(q2, q2_i):
    pi = q2_i.uniformizer()
    assert q2_i.norm(pi).equals(q2.from_int(2))
    assert q2_i.trace(pi).equals(q2.from_int(2))
    assert q2_i.norm(q2_i.include(q2.from_int(3))).equals(q2.from_int(9))


def test_ramified_galois_group(q2_i):
    gal = galois_group(q2_i)
    assert gal.order == 2
    assert gal.inertia() == (0, 1)
    pi = q2_i.uniformizer()
    # the other root of x^2 - 2x + 2 is 2 - pi
    assert gal.apply(1, pi).equals(pi * -1 + 2)
    assert gal.group.is_abelian


def test_unramified_galois_group(q2, q2_unram2):
    gal = galois_group(q2_unram2)
    assert gal.order == 2
    assert sorted(gal.leaf_power(i) for i in range(2)) == [0, 1]
    assert gal.inertia() == (0,)
    assert q2_unram2.norm(q2_unram2.include(q2.from_int(3))).equals(q2.from_int(9))


def test_non_galois_extension(q2):
    # x^3 + 2: the other cube roots need zeta_3, which is not in Q_2(2^(1/3))
    ext = Extension(q2.with_precision(12), [('eisenstein', [2, 0, 0])])
    assert not ext.is_galois()


def test_different(q2, q2_i):
    assert different_valuation(q2_i) == 2
    q3 = padic_field(3, 1, 12)
    assert different_valuation(Extension(q3, [('eisenstein', [3, 0])])) == 1


def test_hensel_roots_of_square_roots(q2):
    q17 = padic_field(17, 1, 8)
    roots = hensel_roots([q17.from_int(-2), q17.zero(100), q17.one()])
    assert len(roots) == 2
    for r in roots:
        assert (r * r).equals(q17.from_int(2))
    assert hensel_roots([q17.from_int(-3), q17.zero(100), q17.one()]) == []


def test_bad_towers(q2):
    with pytest.raises(UnsupportedInputError):
        Extension(q2, [('unram', 2), ('unram', 3)])
    with pytest.raises(UnsupportedInputError):
        Extension(q2, [('eisenstein', [2, -2]), ('unram', 2)])
    with pytest.raises(UnsupportedInputError):
        Extension(q2, [('eisenstein', [2])])


def test_base_change(q2_i):
    ext_r = base_change(q2_i, 2)
    assert ext_r.base.residue.q == 4
    assert (ext_r.e, ext_r.f) == (2, 1)
    lift = base_change_lift(q2_i, 2)
    assert lift[0] == 0
    assert sorted(lift.values()) == [0, 1]
    with pytest.raises(UnsupportedInputError):
        base_change(Extension(q2_i.base, [('unram', 2)]), 2)


def test_tensor_decomposition_unramified(q2_unram2):
    dec = tensor_decompose(q2_unram2, 2, samples=2)
    assert dec.factor_count == 2
    assert dec.frobenius_permutation == (1, 0)
    assert dec.verified


def test_weil_restriction_points():
    k, k2 = GF(2, 1), GF(2, 2)
    r1, r2 = PerfRing.from_degrees(2, [1]), PerfRing.from_degrees(2, [2])
    assert weil_restriction_points(k2, k, 'multiplicative', r1).invariant_factors == (3,)
    assert weil_restriction_points(k2, k, 'multiplicative', r2).invariant_factors == (3, 3)
    assert weil_restriction_points(k2, k, 'additive', r1).invariant_factors == (2, 2)


@pytest.mark.parametrize("degrees", [[1], [2], [1, 3], [2, 4]])
def test_additive_restriction_matches_greenberg_points(degrees):
    k, k2 = GF(2, 1), GF(2, 2)
    ring = PerfRing.from_degrees(2, degrees)
    restricted = weil_restriction_points(k2, k, 'additive', ring)
    computed = greenberg_points(ProfiniteModule(k, (1, 1)), ring).group
    assert restricted.invariant_factors == computed.invariant_factors


def test_max_unramified_subextension(q2_i, q2_unram2):
    assert max_unramified_subext(q2_i).degree == 1
    sub = max_unramified_subext(q2_unram2)
    assert (sub.e, sub.f) == (1, 2)


def test_ramified_subfield_of_a_tower(q2):
    tower = Extension(q2.with_precision(12), [('unram', 2), ('eisenstein', [2, -2])])
    sub, restrict = ramified_restriction(tower)
    assert (sub.e, sub.f) == (2, 1)
    gal = galois_group(tower)
    # Gal(L/K) = Gal(K_f/K) x Gal(F/K)
    pairs = {(gal.leaf_power(i), restrict[i]) for i in range(gal.order)}
    assert pairs == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert totally_ramified_part(tower).base == tower.middle
    with pytest.raises(UnsupportedInputError):
        ramified_subext(Extension(q2, [('unram', 2), ('eisenstein', [[0, 2], 0])]))
