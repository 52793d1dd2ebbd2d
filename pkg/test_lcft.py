"""Tests for unit G-modules, norm equations, norm cosets and reciprocity symbols"""

import pytest

from local_fields.extension import Extension, base_change, galois_group, inertia_embedding
from local_fields.localfield import Enlargement, laurent_field, padic_field, unit_group_quotient
from reciprocity.lcft import (
    artin_reciprocity_check, artin_symbol, base_change_check, h_minus_one_check,
    hilbert90_check, norm_coset_check, norm_coset_group, norm_equation,
    ramification_reciprocity_check, vanishing_approx, vanishing_check,
)
from reciprocity.unit_modules import (
    h_minus_one_stabilized, stabilized_cohomology, stable_levels, unit_gmodule,
)
from utils.config import build_tower, job_from_dict
from utils.errors import InconclusiveError, UnsupportedInputError


@pytest.fixture(scope="module")
def q2():
    return padic_field(2, 1, 20)


@pytest.fixture(scope="module")
def q2_i(q2):
    return Extension(q2, [('eisenstein', [2, -2])])


@pytest.fixture(scope="module")
def q2_unram2(q2):
    return Extension(q2, [('unram', 2)])


@pytest.fixture(scope="module")
def q2_unram3(q2):
    return Extension(q2, [('unram', 3)])


@pytest.fixture(scope="module")
def q4_i(q2):
    return Extension(q2.with_precision(12), [('unram', 2), ('eisenstein', [2, -2])])


# ----------------------------------------------------------------------------
# Unit modules
# ----------------------------------------------------------------------------

def test_stable_levels(q2_i):
    assert stable_levels(q2_i) == (4, 8)


def test_unit_module_action(q2_i):
    module = unit_gmodule(q2_i, 4)
    assert module.group.order == 8
    pi = q2_i.uniformizer()
    u = pi + 1
    # the action matrices agree with applying sigma and classifying
    for idx in range(2):
        lhs = module.gmodule.act(idx, module.embed(u))
        rhs = module.realised_coordinates(module.apply(idx, u))
        assert module.group.classify(lhs) == module.group.classify(rhs)


def test_h_minus_one_is_the_galois_group(q2_i):
    h = h_minus_one_stabilized(q2_i)
    assert h.group.invariant_factors == (2,)
    assert not any(h.classes[0])
    assert any(h.classes[1])
    assert h.is_homomorphism()
    assert h.is_onto()
    assert h_minus_one_check(q2_i).verdict == 'pass'


def test_hilbert90(q2_i):
    h1 = stabilized_cohomology(q2_i, 1, multiplicative=True)
    assert h1.group.is_trivial
    assert hilbert90_check(q2_i).verdict == 'pass'


HILBERT90_TOWERS = {
    'q3_sqrt_m3': lambda: Extension(padic_field(3, 1, 12), [('eisenstein', [3, 0])]),
    'q2_unram2': lambda: Extension(padic_field(2, 1, 12), [('unram', 2)]),
    'artin_schreier': lambda: Extension(laurent_field(2, 1, 16), [('eisenstein', [[0, 1], [0, 1]])]),
}


@pytest.mark.parametrize("name", sorted(HILBERT90_TOWERS))
def test_hilbert90_on_tame_unramified_and_equal_characteristic(name):
    ext = HILBERT90_TOWERS[name]()
    h1 = stabilized_cohomology(ext, 1, multiplicative=True)
    assert h1.group.is_trivial
    result = hilbert90_check(ext)
    assert result.verdict == 'pass'
    assert result.groups['H^1'] == '0'


def test_stabilization_beyond_precision_is_inconclusive(q2_i):
    with pytest.raises(InconclusiveError):
        stabilized_cohomology(q2_i, -1, levels=(4, 10 ** 6))


# ----------------------------------------------------------------------------
# Norms
# ----------------------------------------------------------------------------

def test_norm_equation(q2, q2_i):
    five = q2.from_int(5)
    sol = norm_equation(q2_i, five, level=3)
    assert sol.solved
    uk = unit_group_quotient(q2, 3)
    assert uk.to_group(q2_i.norm(sol.beta)) == uk.to_group(five)

    minus_one = norm_equation(q2_i, q2.from_int(-1), level=3)
    assert not minus_one.solved
    assert any(minus_one.obstruction)


def test_norm_equation_rejects_non_units(q2, q2_i):
    with pytest.raises(ValueError):
        norm_equation(q2_i, q2.from_int(2), level=3)


def test_vanishing(q2, q2_i):
    sol = vanishing_approx(q2_i, q2.from_int(-1), 3, rmax=4)
    assert sol.r == 2
    assert vanishing_check(q2_i, [-1, 3, 5], 3, rmax=4).verdict == 'pass'
    with pytest.raises(UnsupportedInputError):
        vanishing_approx(Extension(q2, [('unram', 2)]), q2.from_int(3), 3)


def test_vanishing_at_level_four(q2, q2_i):
    found = {n: vanishing_approx(q2_i, q2.from_int(n), 4, rmax=4).r for n in (-1, 3, 5)}
    assert found == {-1: 2, 3: 2, 5: 1}
    for beta in (q2_i.uniformizer() + 1, q2_i.uniformizer() + 3):
        assert vanishing_approx(q2_i, q2_i.norm(beta), 4, rmax=4).r == 1


@pytest.mark.parametrize("n", [-1, 3, 5])
def test_vanishing_witness_descends_one_level(q2, q2_i, n):
    u = q2.from_int(n)
    sol = vanishing_approx(q2_i, u, 4, rmax=4)
    assert vanishing_approx(q2_i, u, 3, rmax=4).r <= sol.r
    # the witness at U^4 is also a witness at U^3
    ext_r = base_change(q2_i, sol.r)
    uk = unit_group_quotient(ext_r.base, 3)
    target = ext_r.base.coerce(Enlargement(q2, sol.r).include(u))
    assert uk.to_group(ext_r.norm(sol.beta)) == uk.to_group(target)


def test_norm_cosets_wild(q2, q2_i):
    ncg = norm_coset_group(q2_i)
    assert ncg.order == 2
    assert any(ncg.classify(q2.from_int(-1)))
    assert any(ncg.classify(q2.from_int(3)))
    assert not any(ncg.classify(q2.from_int(2)))
    assert not any(ncg.classify(q2.from_int(5)))
    assert len(ncg.representatives()) == 2
    assert norm_coset_check(q2_i).verdict == 'pass'


def test_norm_cosets_unramified(q2, q2_unram2):
    ncg = norm_coset_group(q2_unram2)
    assert ncg.order == 2
    assert any(ncg.classify(q2.from_int(2)))
    assert not any(ncg.classify(q2.from_int(3)))


# ----------------------------------------------------------------------------
# Reciprocity
# ----------------------------------------------------------------------------

def test_unramified_symbol_is_frobenius(q2, q2_unram3):
    gal = galois_group(q2_unram3)
    assert gal.leaf_power(artin_symbol(q2_unram3, q2.from_int(2))) == 2
    assert gal.leaf_power(artin_symbol(q2_unram3, q2.from_int(4))) == 1
    assert artin_symbol(q2_unram3, q2.from_int(3)) == 0
    assert artin_reciprocity_check(q2_unram3).verdict == 'pass'


def test_ramified_symbol(q2, q2_i):
    assert artin_symbol(q2_i, q2_i.norm(q2_i.uniformizer())) == 0
    assert artin_symbol(q2_i, q2.from_int(-1)) == 1
    assert artin_reciprocity_check(q2_i).verdict == 'pass'


def test_tower_symbol_combines_frobenius_and_ramified_parts(q4_i):
    gal = galois_group(q4_i)
    K = q4_i.base
    two = artin_symbol(q4_i, K.from_int(2))
    minus_one = artin_symbol(q4_i, K.from_int(-1))
    assert gal.leaf_power(two) == 1
    assert gal.leaf_power(minus_one) == 0
    assert minus_one != gal.identity
    assert artin_symbol(q4_i, K.from_int(5)) == gal.identity
    assert artin_symbol(q4_i, K.from_int(-3)) == gal.identity
    assert artin_symbol(q4_i, K.from_int(-2)) == gal.group.mul(two, minus_one)
    assert artin_reciprocity_check(q4_i).verdict == 'pass'


def test_tower_base_change_over_unramified_subfield(q4_i):
    ext_e, embed = inertia_embedding(q4_i)
    assert (ext_e.e, ext_e.f) == (2, 1)
    assert sorted(embed.values()) == sorted(galois_group(q4_i).inertia())
    result = base_change_check(q4_i, 2)
    assert result.verdict == 'pass'
    assert result.groups['E^x/NL^x'] == 'Z/2'


def test_ramification_reciprocity(q2_i):
    assert ramification_reciprocity_check(q2_i).verdict == 'pass'


def test_base_change(q2_i):
    assert base_change_check(q2_i, 2).verdict == 'pass'


def test_cyclotomic_eighth_roots_reciprocity():
    job = job_from_dict({'scenario': 'q2_zeta8'})
    assert job.precision == 10
    q2, zeta8 = build_tower(job)
    assert galois_group(zeta8).group.is_abelian
    assert not galois_group(zeta8).group.is_cyclic
    ncg = norm_coset_group(zeta8)
    assert ncg.order == 4
    assert ncg.group.invariant_factors == (2, 2)
    assert ncg.certificate['levels'] == [3, 4]
    # N(1 - zeta_8) = 2 and 1 + 8Z_2 lies in the norm group
    assert not any(ncg.classify(q2.from_int(2)))
    assert not any(ncg.classify(q2.from_int(17)))
    for n in (-1, 3, 5):
        assert any(ncg.classify(q2.from_int(n)))
    assert norm_coset_check(zeta8).verdict == 'pass'
    assert ramification_reciprocity_check(zeta8).verdict == 'pass'
