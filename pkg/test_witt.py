"""Tests for Witt vectors, Galois rings and the Greenberg functor"""

from itertools import product

import numpy as np
import pytest
import sympy

from algebra.abgroup import cyclic_group
from algebra.finite_field import GF
from algebra.witt import (
    GaloisRing, PerfRing, ProfiniteModule, WittVector, frobenius, greenberg_points,
    ghost, structure_polynomials, teichmuller, verschiebung, witt_add, witt_from_integer,
    witt_mul, witt_to_integer, witt_vector,
)
from utils.errors import StructuralError


def test_prime_field_witt_vectors_are_integers_mod_p_power():
    ring = PerfRing.from_degrees(2, [1])
    one = witt_vector(ring, [1, 0])
    assert (one + one).digits == ((0,), (1,))
    for a, b in product(range(8), repeat=2):
        x, y = witt_from_integer(ring, 3, a), witt_from_integer(ring, 3, b)
        assert witt_to_integer(x + y) == (a + b) % 8
        assert witt_to_integer(x * y) == (a * b) % 8


def test_series_and_polynomial_arithmetic_agree():
    ring = PerfRing.from_degrees(2, [2])
    vectors = [witt_vector(ring, digits) for digits in product(range(4), repeat=2)]
    for a in vectors[:6]:
        for b in vectors:
            assert witt_add(a, b) == witt_add(a, b, method='polynomial')
            assert witt_mul(a, b) == witt_mul(a, b, method='polynomial')


def test_p_is_verschiebung_after_frobenius():
    ring = PerfRing.from_degrees(3, [2])
    for digits in [(1, 0), (4, 7), (8, 2)]:
        a = witt_vector(ring, digits)
        assert a + a + a == verschiebung(frobenius(a))


def test_teichmuller_is_multiplicative():
    ring = PerfRing.from_degrees(2, [3])
    f = ring.components[0]
    for x, y in [(2, 3), (5, 7), (6, 6)]:
        tx, ty = teichmuller(ring, (x,), 3), teichmuller(ring, (y,), 3)
        assert tx * ty == teichmuller(ring, (f.mul(x, y),), 3)


def test_product_rings_act_componentwise():
    ring = PerfRing.from_degrees(2, [1, 2])
    a = WittVector(ring, ((1, 2), (0, 3)))
    b = WittVector(ring, ((1, 1), (1, 0)))
    s = a + b
    for j in range(2):
        single = PerfRing([ring.components[j]])
        aj = WittVector(single, tuple((d[j],) for d in a.digits))
        bj = WittVector(single, tuple((d[j],) for d in b.digits))
        assert tuple(d[0] for d in (aj + bj).digits) == tuple(d[j] for d in s.digits)


def test_structure_polynomials_low_degree():
    sums, prods = structure_polynomials(2, 2)
    x0, x1, y0, y1 = sympy.symbols('X0 X1 Y0 Y1')
    assert sympy.expand(sums[0].as_expr() - (x0 + y0)) == 0
    assert sympy.expand(sums[1].as_expr() - (x1 + y1 - x0 * y0)) == 0
    assert sympy.expand(prods[0].as_expr() - x0 * y0) == 0


def test_galois_ring_teichmuller_and_inverse():
    gr = GaloisRing(GF(2, 2), 4)
    for x in range(1, 4):
        t = gr.teichmuller(x)
        assert gr.pow(t, 3) == gr.one
        assert gr.residue(t) == x
        assert gr.mul(t, gr.inverse(t)) == gr.one
    assert gr.valuation(gr.from_int(8)) == 3
    assert gr.valuation(gr.zero) == 4


def test_greenberg_points_group():
    module = ProfiniteModule(GF(2, 1), (2,))
    ring = PerfRing.from_degrees(2, [1, 2])
    points = greenberg_points(module, ring)
    assert points.group.invariant_factors == (4, 4, 4)
    assert ProfiniteModule.free(GF(2, 2), 3).group.invariant_factors == (8, 8)
    assert ProfiniteModule.free(GF(2, 2), 3).order == 64


def test_greenberg_points_split_over_ring_factors():
    module = ProfiniteModule(GF(3, 1), (1, 3))
    whole = greenberg_points(module, PerfRing.from_degrees(3, [2, 1])).group
    left = greenberg_points(module, PerfRing.from_degrees(3, [2])).group
    right = greenberg_points(module, PerfRing.from_degrees(3, [1])).group
    assert whole.invariant_factors == (3, 3, 3, 27, 27, 27)
    assert sorted(left.invariant_factors + right.invariant_factors) == list(whole.invariant_factors)
    assert whole.order == left.order * right.order


def test_structural_errors():
    with pytest.raises(StructuralError):
        PerfRing([GF(2, 1), GF(3, 1)])
    with pytest.raises(StructuralError):
        witt_vector(PerfRing.from_degrees(2, [1]), [2])
    with pytest.raises(StructuralError):
        ProfiniteModule.from_group(cyclic_group(12), 2)
    a = witt_vector(PerfRing.from_degrees(2, [1]), [1])
    b = witt_vector(PerfRing.from_degrees(2, [1]), [1, 0])
    with pytest.raises(StructuralError):
        a + b


def test_ghost_components_of_integers():
    ring = PerfRing.from_degrees(2, [1])
    for a in range(8):
        w = ghost(witt_from_integer(ring, 3, a))
        for i in range(3):
            assert w[i][0][0] % 2 ** (i + 1) == a % 2 ** (i + 1)


def test_ghost_is_additive_in_low_digits():
    ring = PerfRing.from_degrees(3, [2])
    x, y = witt_vector(ring, (4, 7)), witt_vector(ring, (2, 5))
    gx, gy, gs = ghost(x), ghost(y), ghost(x + y)
    gr = ring.galois_ring(0, 2)
    # ghost of the sum agrees modulo 3^(i+1)
    for i in range(2):
        diff = gr.sub(gr.add(gx[i][0], gy[i][0]), gs[i][0])
        assert all(c % 3 ** (i + 1) == 0 for c in diff)


PRIME_POWERS = [(p, n) for p in sympy.primerange(2, 126) for n in range(1, 8) if p ** n <= 125]


def _congruent(a, b, modulus: int) -> bool:
    return all((x - y) % modulus == 0 for x, y in zip(a, b))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_arithmetic_matches_ghost_components(p):
    rng = np.random.default_rng(p)
    for trial in range(500):
        n = 1 + trial % 4
        m = 1 + (trial // 4) % 2
        ring = PerfRing.from_degrees(p, [m])
        q = p ** m
        x = witt_vector(ring, [int(d) for d in rng.integers(0, q, n)])
        y = witt_vector(ring, [int(d) for d in rng.integers(0, q, n)])
        gr = ring.galois_ring(0, n)
        gx, gy = ghost(x), ghost(y)
        gs, gp = ghost(witt_add(x, y)), ghost(witt_mul(x, y))
        # Teichmuller lifts pin the i-th ghost component down modulo p^(i+1)
        for i in range(n):
            assert _congruent(gs[i][0], gr.add(gx[i][0], gy[i][0]), p ** (i + 1))
            assert _congruent(gp[i][0], gr.mul(gx[i][0], gy[i][0]), p ** (i + 1))


@pytest.mark.parametrize("p, n", PRIME_POWERS)
def test_prime_field_witt_vectors_exhaustively(p, n):
    ring = PerfRing.from_degrees(p, [1])
    size = p ** n
    vectors = [witt_from_integer(ring, n, a) for a in range(size)]
    assert len({v.digits for v in vectors}) == size
    assert [witt_to_integer(v) for v in vectors] == list(range(size))
    if n > 1:
        assert witt_vector(ring, [0, 1] + [0] * (n - 2)) == vectors[p]
    for a, b in product(range(size), repeat=2):
        assert witt_to_integer(vectors[a] + vectors[b]) == (a + b) % size
        assert witt_to_integer(vectors[a] * vectors[b]) == (a * b) % size
