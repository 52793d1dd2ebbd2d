"""Tests for local field arithmetic, unit groups and unramified enlargements"""

import pytest

from algebra.finite_field import GF
from algebra.witt import PerfRing
from local_fields.localfield import (
    AbovePrecision, Enlargement, LocalField, laurent_field, padic_field,
    points_split_check, unit_decompose, unit_group_quotient, unramified_extension,
)
from utils.errors import PrecisionError, StructuralError


@pytest.fixture(scope="module")
def q2():
    return padic_field(2, 1, 20)


@pytest.fixture(scope="module")
def q2_i():
    return LocalField('mixed', GF(2, 1), [[2, -2]], 20)


def test_integer_arithmetic(q2):
    assert q2.from_int(12).valuation() == 2
    assert (q2.from_int(3) * q2.from_int(5)).equals(q2.from_int(15))
    assert (q2.from_int(7) - q2.from_int(7)).is_zero
    assert q2.from_int(12).digits()[:2] == [1, 1]


def test_inverse_and_division(q2):
    x = q2.from_int(6)
    y = x.inverse()
    assert y.valuation() == -1
    assert (x * y).equals(q2.one())
    assert (q2.from_int(10) / q2.from_int(5)).equals(q2.from_int(2))


def test_zero_has_bounded_valuation(q2):
    z = q2.zero(7)
    assert z.valuation() == AbovePrecision(7)
    with pytest.raises(PrecisionError):
        z.inverse()


def test_eisenstein_layer(q2_i):
    pi = q2_i.uniformizer()
    # pi^2 - 2 pi + 2 = 0
    assert (pi * pi - pi * 2 + 2).is_zero
    assert q2_i.from_int(2).valuation() == 2
    K = q2_i.subfield(0)
    assert q2_i.layer_norm(pi, 0).equals(K.from_int(2))
    assert q2_i.layer_trace(pi, 0).equals(K.from_int(2))


def test_not_eisenstein():
    with pytest.raises(StructuralError):
        LocalField('mixed', GF(2, 1), [[1, 0]], 10)
    with pytest.raises(StructuralError):
        LocalField('mixed', GF(2, 1), [[4, 0]], 10)
    with pytest.raises(StructuralError):
        LocalField('other', GF(2, 1))


@pytest.mark.parametrize("p,level,factors", [
    (2, 2, (2,)),
    (2, 3, (2, 2)),
    (2, 4, (2, 4)),
    (3, 1, (2,)),
    (3, 2, (6,)),
])
def test_padic_unit_quotients(p, level, factors):
    uq = unit_group_quotient(padic_field(p, 1, 12), level)
    assert uq.group.invariant_factors == factors


def test_ramified_unit_quotient_order(q2_i):
    assert unit_group_quotient(q2_i, 4).group.order == 8


def test_laurent_unit_quotient():
    uq = unit_group_quotient(laurent_field(2, 1, 12), 3)
    assert uq.group.invariant_factors == (4,)


def test_unit_quotient_classification_roundtrip(q2_i):
    uq = unit_group_quotient(q2_i, 4)
    for coords in uq.group.elements():
        assert uq.to_group(uq.from_group(coords)) == coords


def test_unit_quotient_rejects_non_units(q2):
    uq = unit_group_quotient(q2, 3)
    with pytest.raises(ValueError):
        uq.coordinates(q2.from_int(2))
    with pytest.raises(PrecisionError):
        unit_group_quotient(padic_field(2, 1, 4), 50)


def test_enlargement(q2):
    E = Enlargement(q2, 2)
    x = q2.from_int(3)
    y = E.include(x)
    assert E.norm(y).equals(x * x)
    assert E.trace(y).equals(x * 2)
    z = E.top.teichmuller(E.top.residue.generator)
    assert E.frobenius(E.frobenius(z)).equals(z)
    assert not E.frobenius(z).equals(z)
    assert E.norm(z).equals(q2.one())


def test_points_split(q2):
    result = points_split_check(padic_field(2, 1, 8), PerfRing.from_degrees(2, [1, 2]), samples=3)
    assert result.verdict == 'pass'


POINT_RINGS = [[1], [2], [1, 1], [1, 3]]


@pytest.mark.parametrize("degrees", POINT_RINGS, ids=lambda d: "x".join(f"F{2 ** m}" for m in d))
@pytest.mark.parametrize("make_field", [padic_field, laurent_field], ids=['mixed', 'equal'])
def test_points_split_over_product_rings(make_field, degrees):
    result = points_split_check(make_field(2, 1, 8), PerfRing.from_degrees(2, degrees), samples=4, seed=7)
    assert result.verdict == 'pass'
    assert result.groups['Z(R)'] == [0] * len(degrees)


def test_integer_zero_takes_the_working_precision(q2):
    x = q2.from_int(12)
    assert (x + 0).equals(x)
    assert (x + 0).precision == x.precision
    assert (x * 0).is_zero
    assert (x * 0).precision == x.lead + x.precision
    assert (q2.one() * 0).precision == q2.cap


def test_unit_decompose(q2, q2_i):
    n, u = unit_decompose(q2.from_int(12))
    assert n == 2
    assert u.equals(q2.from_int(3))
    n, u = unit_decompose(q2_i.from_int(2))
    assert n == 2
    assert u.is_unit()


def test_unramified_extension_degree(q2):
    E = unramified_extension(q2, 3)
    assert E.top.residue.q == 8
    assert E.norm(E.include(q2.from_int(5))).equals(q2.from_int(125))
