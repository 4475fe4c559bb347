import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from algebra.classical import (
    SymElement,
    char_poly_generators,
    classical_derive,
    classical_shift_check,
    is_poisson_central,
    iterate_classical_derive,
    partial_derive,
    poisson_bracket,
    symbol_of_degree,
    symmetrize,
    top_symbol,
)
from algebra.matrix_calc import ShiftMatrix
from algebra.pbw_core import UEAElement, commutator, filtration_degree, is_central, multiply
from core.errors import DimensionError, PreconditionError
from conftest import DENSE_XI_2, DIAGONAL_XI_3, e, elements, one, shift_matrices, sym_elements


def s(row: int, col: int, dim: int) -> SymElement:
    return SymElement.generator(row, col, dim)


def test_generator_brackets_match_lie_relations():
    d = 2
    assert poisson_bracket(s(1, 2, d), s(2, 1, d)) == s(1, 1, d) - s(2, 2, d)
    assert poisson_bracket(s(1, 1, d), s(2, 2, d)).is_zero
    assert poisson_bracket(s(1, 1, d), s(1, 2, d)) == s(1, 2, d)


def test_bracket_leibniz_example():
    d = 2
    f = s(1, 1, d) * s(2, 2, d)
    assert poisson_bracket(f, s(1, 2, d)) == -(s(1, 1, d) * s(1, 2, d)) + s(1, 2, d) * s(2, 2, d)


def test_bracket_with_scalars_vanishes():
    d = 2
    assert poisson_bracket(SymElement.scalar(3, d), s(1, 2, d)).is_zero


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(sym_elements(d, max_degree=3), sym_elements(d, max_degree=3))))
def test_bracket_is_antisymmetric(pair):
    f, g = pair
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(*(sym_elements(d, max_terms=3, max_degree=3) for _ in range(3)))))
def test_bracket_jacobi_and_leibniz(triple):
    f, g, h = triple
    jacobi = (
        poisson_bracket(f, poisson_bracket(g, h))
        + poisson_bracket(g, poisson_bracket(h, f))
        + poisson_bracket(h, poisson_bracket(f, g))
    )
    assert jacobi.is_zero
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)


def test_partial_derive_examples():
    d = 2
    f = s(1, 2, d) * s(2, 1, d) + s(1, 1, d) ** 2
    # ∂^1_2 differentiates in e^2_1
    assert partial_derive(1, 2, f) == s(1, 2, d)
    assert partial_derive(1, 1, f) == s(1, 1, d) * 2
    assert partial_derive(2, 2, f).is_zero
    with pytest.raises(DimensionError):
        partial_derive(3, 1, f)


def test_classical_derive_examples():
    d = 2
    xi = ShiftMatrix([[3, 1], [Fraction(1, 2), -1]])
    i1, i2 = char_poly_generators(d)
    assert classical_derive(xi, i1) == SymElement.scalar(2, d)
    assert classical_derive(xi, s(1, 2, d)) == SymElement.scalar(Fraction(1, 2), d)
    assert classical_derive(ShiftMatrix.identity(d), i2) == i1
    with pytest.raises(DimensionError):
        classical_derive(ShiftMatrix.identity(3), i1)


def test_iterated_classical_derive():
    d = 2
    xi = ShiftMatrix.identity(d)
    _, i2 = char_poly_generators(d)
    assert iterate_classical_derive(xi, i2, 0) == i2
    assert iterate_classical_derive(xi, i2, 2) == SymElement.scalar(2, d)
    assert iterate_classical_derive(xi, i2, 3).is_zero
    with pytest.raises(PreconditionError) as info:
        iterate_classical_derive(xi, i2, -1)
    assert info.value.contract == "shift_order"


def test_symmetrize_examples():
    d = 2
    assert symmetrize(s(1, 2, d) * s(2, 1, d)) == e(1, 2, d) * e(2, 1, d) + (e(2, 2, d) - e(1, 1, d)) / 2
    assert symmetrize(s(1, 1, d) ** 3) == e(1, 1, d) ** 3
    assert symmetrize(SymElement.scalar(4, d)) == one(d) * 4
    assert symmetrize(SymElement.zero(d)).is_zero


def test_symmetrize_degree_limit():
    with pytest.raises(PreconditionError) as info:
        symmetrize(s(1, 1, 2) ** 9)
    assert info.value.contract == "symmetrization_degree"


def test_char_poly_generators_d2():
    d = 2
    i1, i2 = char_poly_generators(d)
    assert i1 == s(1, 1, d) + s(2, 2, d)
    assert i2 == s(1, 1, d) * s(2, 2, d) - s(1, 2, d) * s(2, 1, d)


def test_char_poly_generators_d3_determinant():
    d = 3
    i3 = char_poly_generators(d)[2]
    assert len(i3.terms) == 6
    assert i3.terms[(0, 4, 8)] == 1
    assert i3.terms[(1, 3, 8)] == -1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_char_poly_generators_are_poisson_central(d):
    for invariant in char_poly_generators(d):
        assert is_poisson_central(invariant)
    if d > 1:
        assert not is_poisson_central(s(1, 1, d) * s(1, 1, d))


@pytest.mark.parametrize("d", [2, 3])
def test_symmetrized_invariants_are_central(d):
    for invariant in char_poly_generators(d):
        assert is_central(symmetrize(invariant))


def test_char_poly_dimension_limit():
    with pytest.raises(PreconditionError) as info:
        char_poly_generators(5)
    assert info.value.contract == "char_poly_dimension"


def test_top_symbol_examples():
    d = 2
    x = e(2, 1, d) * e(1, 2, d) + e(1, 1, d) * 3
    assert top_symbol(x) == s(1, 2, d) * s(2, 1, d)
    # e^2_1 e^1_2 = e^1_2 e^2_1 + e^2_2 - e^1_1
    assert symbol_of_degree(x, 1) == s(1, 1, d) * 2 + s(2, 2, d)
    assert top_symbol(one(d) * 5) == SymElement.scalar(5, d)
    with pytest.raises(PreconditionError) as info:
        top_symbol(UEAElement.zero(d))
    assert info.value.contract == "nonzero_element"


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d), elements(d))))
def test_commutator_symbol_is_poisson_bracket(pair):
    a, b = pair
    if a.is_zero or b.is_zero:
        return
    degree = filtration_degree(a) + filtration_degree(b) - 1
    expected = poisson_bracket(top_symbol(a), top_symbol(b))
    assert symbol_of_degree(commutator(a, b), degree) == expected


@given(st.integers(1, 3).flatmap(lambda d: st.tuples(elements(d), elements(d))))
def test_top_symbol_is_multiplicative(pair):
    a, b = pair
    if a.is_zero or b.is_zero:
        return
    assert top_symbol(multiply(a, b)) == top_symbol(a) * top_symbol(b)


@pytest.mark.parametrize("xi", DENSE_XI_2, ids=str)
def test_classical_shifts_commute_d2(xi):
    i1, i2 = char_poly_generators(2)
    for p, q in itertools.product(range(3), repeat=2):
        assert classical_shift_check(xi, p, q, i2, i2)
        assert classical_shift_check(xi, p, q, i1, i2)


@pytest.mark.parametrize("xi", DIAGONAL_XI_3, ids=str)
def test_classical_shifts_commute_d3(xi):
    invariants = char_poly_generators(3)
    for f, g in itertools.combinations_with_replacement(invariants, 2):
        for p, q in itertools.product(range(3), repeat=2):
            assert classical_shift_check(xi, p, q, f, g)


@given(shift_matrices(2))
def test_classical_shift_pairs_commute_for_random_shift(xi):
    _, i2 = char_poly_generators(2)
    assert classical_shift_check(xi, 1, 0, i2, i2)
    assert classical_shift_check(xi, 1, 1, i2, i2)


def test_classical_shift_check_requires_central_inputs():
    d = 2
    _, i2 = char_poly_generators(d)
    with pytest.raises(PreconditionError) as info:
        classical_shift_check(ShiftMatrix.identity(d), 1, 1, s(1, 2, d), i2)
    assert info.value.contract == "poisson_central"


def test_sym_element_arithmetic():
    d = 2
    f = s(1, 1, d) + 2
    assert (f * f).degree == 2
    assert (f - f).is_zero
    assert SymElement.zero(d).degree == -1
    assert not (f * f).is_homogeneous()
    assert (s(1, 2, d) * s(2, 1, d)).is_homogeneous()
    with pytest.raises(DimensionError):
        s(1, 1, 2) + s(1, 1, 3)


def test_sym_element_power_and_scalar_hash():
    d = 2
    f = s(1, 1, d) + s(2, 2, d)
    assert f ** 0 == 1
    assert f ** 2 == f * f
    with pytest.raises(PreconditionError) as info:
        f ** -1
    assert info.value.contract == "power_exponent"
    assert SymElement.scalar(4, d) == 4
    assert hash(SymElement.scalar(4, d)) == hash(4)
    assert hash(SymElement.zero(d)) == hash(0)
    assert {SymElement.scalar(Fraction(2, 3), d)} == {Fraction(2, 3)}
