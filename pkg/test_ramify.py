"""Tests for ramification filtrations, Herbrand functions and norm filtrations"""

from fractions import Fraction

import pytest

from local_fields.extension import Extension
from local_fields.localfield import laurent_field, padic_field
from local_fields.ramify import (
    INFINITY, different_check, graded_norm_check, hasse_arf_holds, herbrand_phi,
    herbrand_psi, i_G, lower_filtration, norm_filtration_check, ramification_table,
    upper_breaks, upper_group,
)
from utils.errors import UnsupportedInputError


@pytest.fixture(scope="module")
def q2_i():
    return Extension(padic_field(2, 1, 20), [('eisenstein', [2, -2])])


@pytest.fixture(scope="module")
def q3_tame():
    return Extension(padic_field(3, 1, 16), [('eisenstein', [3, 0])])


@pytest.fixture(scope="module")
def artin_schreier():
    return Extension(laurent_field(2, 1, 16), [('eisenstein', [[0, 1], [0, 1]])])


def test_wild_quadratic_filtration(q2_i):
    d = lower_filtration(q2_i)
    assert i_G(q2_i, 0) == INFINITY
    assert i_G(q2_i, 1) == 2
    assert len(d.lower_group(1)) == 2
    assert len(d.lower_group(2)) == 1
    assert upper_breaks(d) == [Fraction(1)]
    assert hasse_arf_holds(d)
    assert different_check(d) == (2, 2)


def test_herbrand_functions(q2_i):
    d = lower_filtration(q2_i)
    assert herbrand_phi(d, 1) == 1
    assert herbrand_phi(d, 3) == 2
    assert herbrand_psi(d, 2) == 3
    assert herbrand_phi(d, -1) == -1
    for v in [Fraction(1, 2), 1, Fraction(5, 3), 4]:
        assert herbrand_phi(d, herbrand_psi(d, v)) == v
    assert len(upper_group(d, 1)) == 2
    assert len(upper_group(d, Fraction(3, 2))) == 1


def test_tame_quadratic_filtration(q3_tame):
    d = lower_filtration(q3_tame)
    assert d.inertia_order == 2
    assert len(d.lower_group(1)) == 1
    assert upper_breaks(d) == [Fraction(0)]
    assert herbrand_phi(d, 2) == 1
    assert herbrand_psi(d, 1) == 2
    assert different_check(d) == (1, 1)


def test_artin_schreier_filtration(artin_schreier):
    d = lower_filtration(artin_schreier)
    assert i_G(artin_schreier, 1) == 2
    assert upper_breaks(d) == [Fraction(1)]
    assert different_check(d) == (2, 2)


def test_ramification_table(q2_i):
    table = ramification_table(lower_filtration(q2_i))
    assert list(table.columns) == ['u', 'order_G_u', 'phi_u', 'order_G_upper_phi_u']
    assert (table['order_G_u'] == table['order_G_upper_phi_u']).all()
    assert table.loc[table['u'] == 2, 'order_G_u'].item() == 1


def test_graded_norm(q2_i):
    for m in (1, 2, 3):
        assert graded_norm_check(q2_i, m).verdict == 'pass'


def test_norm_filtration_past_the_break(q2_i):
    assert norm_filtration_check(q2_i, 2).verdict == 'pass'


def test_norm_filtration_below_the_break(q2_i):
    # -1 lies in U^1 but is not a norm from Q_2(i)
    assert norm_filtration_check(q2_i, 1).verdict == 'fail'


def test_norm_filtration_needs_total_ramification():
    ext = Extension(padic_field(2, 1, 10), [('unram', 2)])
    with pytest.raises(UnsupportedInputError):
        norm_filtration_check(ext, 1)
    with pytest.raises(ValueError):
        graded_norm_check(ext, 0)


def test_cyclotomic_eighth_roots_filtration():
    zeta8 = Extension(padic_field(2, 1, 10), [('eisenstein', [2, 4, 6, 4])])
    d = lower_filtration(zeta8)
    assert len(d.lower_group(1)) == 4
    assert len(d.lower_group(2)) == 2
    assert len(d.lower_group(3)) == 2
    assert len(d.lower_group(4)) == 1
    assert upper_breaks(d) == [Fraction(1), Fraction(2)]
    assert hasse_arf_holds(d)
    assert different_check(d) == (8, 8)
