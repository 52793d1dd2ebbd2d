"""Tests for finite fields and their embeddings"""

import pytest

from algebra.finite_field import GF, FiniteField, embeddings, standard_embedding
from utils.errors import StructuralError


@pytest.mark.parametrize("p,m", [(2, 1), (2, 3), (3, 2), (5, 1)])
def test_field_axioms(p, m):
    f = GF(p, m)
    assert f.q == p ** m
    for a in f.units():
        assert f.mul(a, f.inv(a)) == f.one
        assert f.pow(a, f.q - 1) == f.one
        assert f.add(a, f.neg(a)) == f.zero


def test_generator_is_primitive():
    f = GF(2, 4)
    g = f.generator
    powers = {f.pow(g, k) for k in range(f.q - 1)}
    assert len(powers) == f.q - 1


def test_frobenius_has_order_m():
    f = GF(3, 2)
    for a in f.elements():
        assert f.frobenius(f.frobenius(a)) == a
        assert f.frobenius(a) == f.pow(a, 3)


def test_trace_lands_in_prime_field():
    f = GF(2, 3)
    traces = [f.trace(a) for a in f.elements()]
    assert set(traces) == {0, 1}
    assert traces.count(0) == 4


def test_roots():
    f = GF(2, 2)
    assert len(f.roots([1, 1, 1])) == 2
    assert GF(2, 1).roots([1, 1, 1]) == []


def test_embeddings():
    assert len(embeddings(GF(2, 2), GF(2, 4))) == 2
    assert embeddings(GF(2, 2), GF(2, 3)) == []
    emb = standard_embedding(GF(2, 2), GF(2, 4))
    small, big = GF(2, 2), GF(2, 4)
    for a in small.elements():
        for b in small.elements():
            assert emb(small.mul(a, b)) == big.mul(emb(a), emb(b))
        assert emb.preimage(emb(a)) == a
    with pytest.raises(StructuralError):
        standard_embedding(GF(2, 2), GF(2, 3))


def test_invalid_fields():
    with pytest.raises(StructuralError):
        FiniteField(4, (1, 1, 1))
    with pytest.raises(StructuralError):
        FiniteField(2, (1, 0, 1))
    with pytest.raises(StructuralError):
        FiniteField(2, (1, 1, 0))
