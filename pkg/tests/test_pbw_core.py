import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.pbw_core import (
    GenIndex,
    UEAElement,
    add,
    commutator,
    filtration_degree,
    is_central,
    multiply,
    normal_order,
    permute_indices,
)
from core.errors import DimensionError, PreconditionError
from conftest import e, elements, one


def test_generator_order_is_lexicographic():
    d = 3
    labels = [GenIndex(r, c) for r in range(1, d + 1) for c in range(1, d + 1)]
    assert sorted(labels) == labels
    assert [g.code(d) for g in labels] == list(range(d * d))
    assert GenIndex.from_code(5, 3) == GenIndex(2, 3)


def test_normal_order_examples():
    assert normal_order([GenIndex(1, 1)], 2) == e(1, 1, 2)
    assert normal_order([GenIndex(2, 1), GenIndex(1, 2)], 2) == (
        e(1, 2, 2) * e(2, 1, 2) + e(2, 2, 2) - e(1, 1, 2)
    )
    assert normal_order([], 3) == one(3)


def test_normal_order_rejects_out_of_range_index():
    with pytest.raises(DimensionError):
        normal_order([GenIndex(3, 1)], 2)
    with pytest.raises(DimensionError):
        UEAElement.generator(0, 1, 2)


def test_add_examples():
    d = 2
    assert add(e(1, 1, d), e(1, 1, d) * -1).is_zero
    assert add(e(1, 2, d), e(1, 2, d)) == e(1, 2, d) * 2
    total = add(e(1, 1, d) + e(2, 2, d), e(1, 2, d))
    assert set(total.terms) == {(0,), (3,), (1,)}


def test_zero_coefficients_are_never_stored():
    a = UEAElement(2, {(0,): 1, (1,): 0})
    assert dict(a.terms) == {(0,): Fraction(1)}
    assert (a - a).terms == {}


def test_multiply_examples():
    d = 2
    x = e(1, 2, d) * 3 + e(2, 1, d)
    assert multiply(one(d), x) == x
    assert multiply(x, one(d)) == x
    assert multiply(e(2, 1, d), e(1, 2, d)) == normal_order([GenIndex(2, 1), GenIndex(1, 2)], d)
    square = multiply(e(1, 1, d), e(1, 1, d))
    assert dict(square.terms) == {(0, 0): Fraction(1)}


def test_commutator_examples():
    d = 2
    assert commutator(e(1, 2, d), e(2, 1, d)) == e(1, 1, d) - e(2, 2, d)
    x = e(1, 2, d) * e(2, 1, d) + e(1, 1, d)
    assert commutator(x, x).is_zero
    assert commutator(e(1, 1, d), e(2, 2, d)).is_zero


def test_filtration_degree_examples():
    d = 2
    assert filtration_degree(one(d)) == 0
    assert filtration_degree(e(1, 2, d) * e(2, 1, d) + e(1, 1, d)) == 2
    assert filtration_degree(commutator(e(1, 2, d), e(2, 1, d))) == 1
    assert filtration_degree(UEAElement.zero(d)) == -1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_relation_soundness_exhaustive(d):
    indices = range(1, d + 1)
    for i, j, p, q in itertools.product(indices, repeat=4):
        expected = UEAElement.zero(d)
        if p == j:
            expected = expected + e(i, q, d)
        if i == q:
            expected = expected - e(p, j, d)
        assert commutator(e(i, j, d), e(p, q, d)) == expected, (i, j, p, q)


@settings(max_examples=500)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(st.just(d), st.lists(st.integers(0, d * d - 1), max_size=6))), st.randoms())
def test_rewrite_order_does_not_change_normal_form(case, rnd):
    d, codes = case
    word = [GenIndex.from_code(c, d) for c in codes]
    chosen = normal_order(word, d, choose=lambda descents: rnd.randrange(len(descents)))
    assert chosen == normal_order(word, d)


def test_rewrite_order_rightmost_first():
    rnd = random.Random(7)
    d = 3
    for _ in range(100):
        word = [GenIndex.from_code(rnd.randrange(d * d), d) for _ in range(rnd.randint(0, 6))]
        assert normal_order(word, d, choose=lambda descents: len(descents) - 1) == normal_order(word, d)


def test_normal_order_is_idempotent():
    d = 2
    x = normal_order([GenIndex(2, 2), GenIndex(2, 1), GenIndex(1, 2), GenIndex(1, 1)], d)
    again = UEAElement.zero(d)
    for word, coeff in x.terms.items():
        again = again + normal_order([GenIndex.from_code(c, d) for c in word], d) * coeff
    assert again == x


@settings(max_examples=200)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d), elements(d), elements(d))))
def test_multiplication_is_associative(triple):
    a, b, c = triple
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def _jacobi(a, b, c):
    return commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b)


@pytest.mark.parametrize("d", [1, 2])
def test_jacobi_on_generators(d):
    gens = [e(i, j, d) for i in range(1, d + 1) for j in range(1, d + 1)]
    for a, b, c in itertools.product(gens, repeat=3):
        assert _jacobi(a, b, c).is_zero


@pytest.mark.slow
def test_jacobi_on_generators_d3():
    d = 3
    gens = [e(i, j, d) for i in range(1, d + 1) for j in range(1, d + 1)]
    for a, b, c in itertools.product(gens, repeat=3):
        assert _jacobi(a, b, c).is_zero


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d, max_degree=2), elements(d, max_degree=2), elements(d, max_degree=2))))
def test_jacobi_on_random_elements(triple):
    assert _jacobi(*triple).is_zero


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d), elements(d))))
def test_filtration_degree_bounds(pair):
    a, b = pair
    if a.is_zero or b.is_zero:
        return
    assert filtration_degree(multiply(a, b)) <= filtration_degree(a) + filtration_degree(b)
    assert filtration_degree(commutator(a, b)) <= filtration_degree(a) + filtration_degree(b) - 1


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        multiply(e(1, 1, 2), e(1, 1, 3))
    with pytest.raises(DimensionError):
        add(e(1, 1, 2), e(1, 1, 3))
    with pytest.raises(DimensionError):
        commutator(e(1, 1, 2), e(1, 1, 3))


def test_is_central():
    d = 2
    casimir = e(1, 1, d) * e(1, 1, d) + e(1, 2, d) * e(2, 1, d) + e(2, 1, d) * e(1, 2, d) + e(2, 2, d) * e(2, 2, d)
    assert is_central(casimir)
    assert is_central(one(d) * 3)
    assert not is_central(e(1, 2, d))


def test_scalar_helpers():
    d = 2
    x = e(1, 2, d) * e(2, 1, d) - e(1, 1, d) + 3
    assert x.top_part() == e(1, 2, d) * e(2, 1, d)
    assert x.homogeneous_part(0) == one(d) * 3
    assert (x / 2) * 2 == x
    assert (e(1, 1, d) + 1) ** 2 == e(1, 1, d) * e(1, 1, d) + e(1, 1, d) * 2 + 1
    assert UEAElement.scalar(Fraction(3, 2), d).scalar_value() == Fraction(3, 2)
    assert e(1, 1, d).scalar_value() is None


def test_scalars_hash_like_rationals():
    d = 2
    assert UEAElement.scalar(3, d) == 3
    assert hash(UEAElement.scalar(3, d)) == hash(3)
    assert hash(UEAElement.zero(d)) == hash(0)
    assert UEAElement.scalar(Fraction(1, 2), d) in {Fraction(1, 2)}
    assert {UEAElement.scalar(3, d): "x"}[3] == "x"
    assert len({e(1, 2, d), e(1, 2, d) * 1, UEAElement.scalar(3, d), 3}) == 2


def test_negative_power_is_rejected():
    with pytest.raises(PreconditionError) as info:
        e(1, 1, 2) ** -1
    assert info.value.contract == "power_exponent"


@given(st.integers(2, 3).flatmap(lambda d: st.tuples(elements(d), elements(d), st.permutations(range(1, d + 1)))))
def test_permute_indices_is_an_automorphism(case):
    a, b, perm = case
    assert permute_indices(multiply(a, b), perm) == multiply(permute_indices(a, perm), permute_indices(b, perm))


def test_permute_indices_on_generator():
    assert permute_indices(e(1, 2, 3), [2, 3, 1]) == e(2, 3, 3)
    with pytest.raises(DimensionError):
        permute_indices(e(1, 2, 3), [1, 1, 2])
