from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from favard.poly import (
    Polynomial,
    coordinate_multiply,
    evaluate,
    graded_component,
    monomial,
    one,
)

exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
scalars = st.fractions(max_denominator=20)


def polys(d=2):
    return st.dictionaries(exponents, scalars, max_size=4).map(
        lambda t: Polynomial(d, t)
    )


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(polys())
def test_additive_structure(p):
    z = Polynomial(2, {})
    assert p + z == p
    assert p - p == z
    assert p * one(2) == p
    assert Fraction(3) * p == p * Fraction(3)


@given(polys(), st.tuples(scalars, scalars))
def test_evaluation_is_a_homomorphism(p, point):
    q = p * p + p
    assert evaluate(q, point) == evaluate(p, point) ** 2 + evaluate(p, point)


def test_monomial_and_degree():
    m = monomial(3, (2, 0, 1))
    assert m.degree() == 3
    assert m.coefficient((2, 0, 1)) == 1
    assert Polynomial(2, {}).degree() == -1
    assert one(2).degree() == 0
    assert Polynomial(2, {(1, 0): Fraction(0)}).is_zero()


def test_coordinate_multiply():
    p = monomial(2, (1, 1)) + 2 * one(2)
    xp = coordinate_multiply(p, 2)
    assert xp == monomial(2, (1, 2)) + 2 * monomial(2, (0, 1))
    with pytest.raises(ValueError):
        coordinate_multiply(p, 3)


@given(polys())
def test_graded_components_partition(p):
    total = Polynomial(2, {})
    for n in range(p.degree() + 1):
        c = graded_component(p, n)
        for m in c.terms:
            assert sum(m) == n
        total = total + c
    assert total == p


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        monomial(2, (1, 0)) + monomial(3, (1, 0, 0))
    with pytest.raises(ValueError):
        Polynomial(2, {(1, 0, 0): Fraction(1)})
    with pytest.raises(ValueError):
        Polynomial(2, {(-1, 0): Fraction(1)})
