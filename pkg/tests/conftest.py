from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from algebra.classical import SymElement
from algebra.matrix_calc import ShiftMatrix
from algebra.pbw_core import UEAElement

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv("QUASISHIFT_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.delenv("QUASISHIFT_TERM_BUDGET", raising=False)
    return tmp_path / "config"


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def words(draw, dim, max_length=3):
    return tuple(draw(st.lists(st.integers(0, dim * dim - 1), max_size=max_length)))


@st.composite
def elements(draw, dim, max_terms=4, max_degree=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(words(dim, max_degree))] = draw(coefficients)
    return UEAElement(dim, terms)


@st.composite
def sym_elements(draw, dim, max_terms=4, max_degree=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        terms[draw(words(dim, max_degree))] = draw(coefficients)
    return SymElement(dim, terms)


@st.composite
def shift_matrices(draw, dim):
    entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return ShiftMatrix([[draw(entries) for _ in range(dim)] for _ in range(dim)])


def e(row: int, col: int, dim: int) -> UEAElement:
    return UEAElement.generator(row, col, dim)


def one(dim: int) -> UEAElement:
    return UEAElement.one(dim)


DENSE_XI_2 = [
    ShiftMatrix([[1, 2], [-1, 3]]),
    ShiftMatrix([[Fraction(1, 2), -3], [2, Fraction(5, 3)]]),
    ShiftMatrix([[0, 1], [1, 0]]),
]
DIAGONAL_XI_2 = [
    ShiftMatrix.diag([2, 1]),
    ShiftMatrix.diag([Fraction(1, 3), -2]),
    ShiftMatrix.diag([5, 0]),
]
DENSE_XI_3 = [
    ShiftMatrix([[1, 2, 0], [-1, 3, 1], [0, 1, -2]]),
    ShiftMatrix([[Fraction(1, 2), 0, 1], [1, 1, Fraction(-1, 3)], [2, 0, 1]]),
    ShiftMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
]
DIAGONAL_XI_3 = [
    ShiftMatrix.diag([3, 2, 1]),
    ShiftMatrix.diag([Fraction(1, 2), -1, 4]),
    ShiftMatrix.diag([0, 7, Fraction(-2, 5)]),
]
