"""Quasi-derivations on U(gl_d).

Both variants satisfy ∂^i_j(1) = 0 and ∂^i_j(e^p_q) = δ^p_j δ^i_q. On a word
split as e^p_q · rest they extend by

    hat: ∂̂^i_j(x·rest) = δ^p_j δ^i_q rest + x·∂̂^i_j(rest) + δ^p_j ∂̂^i_q(rest)
    bar: ∂̄^i_j(x·rest) = δ^p_j δ^i_q rest + x·∂̄^i_j(rest) - δ^i_q ∂̄^p_j(rest)

The matrix operator puts ∂^c_r f at row r, column c, so that the directional
operator is ∂_ξ f = tr(ξ·D(f)) = Σ_{a,b} ξ_ab ∂^a_b f.
"""

import itertools
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Tuple

import sympy

from algebra.matrix_calc import (
    ElementMatrix,
    ShiftMatrix,
    matrix_polynomial,
    power_entry,
    power_matrix,
    trace_power,
)
from algebra.pbw_core import UEAElement, Word, check_index, filtration_degree, is_central, multiply
from core.errors import DecompositionError, DimensionError, PreconditionError
from core.logger import logger

__all__ = [
    "Variant",
    "PlusMinusPoly",
    "ShiftMatrix",
    "quasi_derive",
    "bar_quasi_derive",
    "matrix_quasi_derive",
    "directional_derive",
    "power_formula_oracle",
    "central_decomposition",
]


class Variant(str, Enum):
    HAT = "hat"
    BAR = "bar"


@lru_cache(maxsize=None)
def _word_partials(variant: Variant, dim: int, word: Word) -> Tuple[UEAElement, ...]:
    """All d² partials of one normal word, indexed by (i - 1) * d + (j - 1)."""
    size = dim * dim
    if not word:
        zero = UEAElement.zero(dim)
        return (zero,) * size

    head, rest = word[0], word[1:]
    p, q = divmod(head, dim)
    rest_element = UEAElement._from_normal(dim, {rest: Fraction(1)})
    x = UEAElement._from_normal(dim, {(head,): Fraction(1)})
    rest_partials = _word_partials(variant, dim, rest)

    out = []
    for i in range(dim):
        for j in range(dim):
            value = multiply(x, rest_partials[i * dim + j])
            if p == j and i == q:
                value = value + rest_element
            if variant is Variant.HAT and p == j:
                value = value + rest_partials[i * dim + q]
            elif variant is Variant.BAR and i == q:
                value = value - rest_partials[p * dim + j]
            out.append(value)
    return tuple(out)


def _derive(variant: Variant, i: int, j: int, f: UEAElement) -> UEAElement:
    d = f.dim
    check_index(i, d)
    check_index(j, d)
    slot = (i - 1) * d + (j - 1)
    total = UEAElement.zero(d)
    for word, coeff in f.terms.items():
        total = total + _word_partials(variant, d, word)[slot] * coeff
    return total


def quasi_derive(i: int, j: int, f: UEAElement) -> UEAElement:
    return _derive(Variant.HAT, i, j, f)


def bar_quasi_derive(i: int, j: int, f: UEAElement) -> UEAElement:
    return _derive(Variant.BAR, i, j, f)


def derive(i: int, j: int, f: UEAElement, variant: Variant = Variant.HAT) -> UEAElement:
    return _derive(Variant(variant), i, j, f)


def matrix_quasi_derive(f: UEAElement, variant: Variant = Variant.HAT) -> ElementMatrix:
    variant = Variant(variant)
    d = f.dim
    return ElementMatrix(
        [[_derive(variant, c, r, f) for c in range(1, d + 1)] for r in range(1, d + 1)]
    )


def directional_derive(xi: ShiftMatrix, f: UEAElement, variant: Variant = Variant.HAT) -> UEAElement:
    variant = Variant(variant)
    d = f.dim
    if xi.dim != d:
        raise DimensionError(f"shift matrix of dimension {xi.dim} against an element of dimension {d}")
    weights = [
        (a * d + b, xi.rows[a][b]) for a in range(d) for b in range(d) if xi.rows[a][b]
    ]
    total = UEAElement.zero(d)
    for word, coeff in f.terms.items():
        partials = _word_partials(variant, d, word)
        for slot, weight in weights:
            total = total + partials[slot] * (coeff * weight)
    return total


class PlusMinusPoly:
    """f^{(n)}_±(x) = ((x + 1)^n ± (x - 1)^n) / 2.

    These satisfy f^{(n+1)}_± = x·f^{(n)}_± + f^{(n)}_∓.
    """

    __slots__ = ("plus", "n", "coefficients")

    def __init__(self, n: int, plus: bool):
        if n < 0:
            raise PreconditionError("power_order", f"polynomial index must be non-negative, got {n}")
        self.n = n
        self.plus = plus
        sign = 1 if plus else -1
        coefficients = [
            Fraction(comb(n, m) * (1 + sign * (-1) ** (n - m)), 2) for m in range(n + 1)
        ]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients: Tuple[Fraction, ...] = tuple(coefficients)

    @property
    def sign(self) -> str:
        return "+" if self.plus else "-"

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return sum((c * x**m for m, c in enumerate(self.coefficients)), Fraction(0))

    def evaluate_on_generator_matrix(self, d: int) -> ElementMatrix:
        return matrix_polynomial(self.coefficients, d)

    def __eq__(self, other):
        if not isinstance(other, PlusMinusPoly):
            return NotImplemented
        return (self.n, self.plus) == (other.n, other.plus)

    def __hash__(self):
        return hash((self.n, self.plus))

    def __repr__(self):
        return f"PlusMinusPoly(n={self.n}, sign={self.sign!r}, coefficients={[str(c) for c in self.coefficients]})"


@lru_cache(maxsize=None)
def _hat_weights(s_max: int, d: int) -> Tuple[UEAElement, ...]:
    """Central weights c_0 = 1, c_s = Σ_{m<s} τ_m c_{s-1-m}, with τ_0 = d."""
    weights = [UEAElement.one(d)]
    for s in range(1, s_max + 1):
        total = UEAElement.zero(d)
        for m in range(s):
            total = total + multiply(trace_power(m, d), weights[s - 1 - m])
        weights.append(total)
    return tuple(weights)


def _hat_power_formula(n: int, i: int, j: int, d: int) -> ElementMatrix:
    weights = _hat_weights(max(n - 1, 0), d)
    rows = []
    for r in range(1, d + 1):
        row = []
        for c in range(1, d + 1):
            total = UEAElement.zero(d)
            for a in range(n):
                for b in range(n - a):
                    term = multiply(power_entry(a, i, r, d), power_entry(b, c, j, d))
                    total = total + multiply(weights[n - 1 - a - b], term)
            row.append(total)
        rows.append(row)
    return ElementMatrix(rows)


def _bar_power_formula(n: int, i: int, j: int, d: int) -> ElementMatrix:
    f_plus = [PlusMinusPoly(n - 1 - m, plus=True).evaluate_on_generator_matrix(d) for m in range(n)]
    f_minus = [PlusMinusPoly(n - 1 - m, plus=False).evaluate_on_generator_matrix(d) for m in range(n)]
    rows = []
    for r in range(1, d + 1):
        row = []
        for c in range(1, d + 1):
            total = UEAElement.zero(d)
            for m in range(n):
                total = total + multiply(f_plus[m].entry(i, r), power_entry(m, c, j, d))
                total = total - multiply(f_minus[m].entry(i, j), power_entry(m, c, r, d))
            row.append(total)
        rows.append(row)
    return ElementMatrix(rows)


def power_formula_oracle(
    n: int, d: int, variant: Variant = Variant.HAT
) -> Callable[[int, int], ElementMatrix]:
    """Closed form of D((e^n)^i_j), returned as a function of (i, j).

    bar: entry (r, c) is Σ_{m<n} f^{(n-1-m)}_+(e)^i_r (e^m)^c_j - f^{(n-1-m)}_-(e)^i_j (e^m)^c_r.
    hat: entry (r, c) is Σ_{a+b<n} c_{n-1-a-b} (e^a)^i_r (e^b)^c_j with the central
    weights of ``_hat_weights``.
    """
    if n < 0:
        raise PreconditionError("power_order", f"power must be non-negative, got {n}")
    variant = Variant(variant)

    def oracle(i: int, j: int) -> ElementMatrix:
        check_index(i, d)
        check_index(j, d)
        if variant is Variant.HAT:
            return _hat_power_formula(n, i, j, d)
        return _bar_power_formula(n, i, j, d)

    return oracle


@lru_cache(maxsize=None)
def _tau_monomials(weight: int, d: int) -> Tuple[Tuple[Tuple[int, ...], UEAElement], ...]:
    """Products τ_{k1}···τ_{kr} (1 <= k <= d) of total weight at most ``weight``."""
    out = [((), UEAElement.one(d))]
    for length in range(1, weight + 1):
        for ks in itertools.combinations_with_replacement(range(1, d + 1), length):
            if sum(ks) > weight:
                continue
            product = UEAElement.one(d)
            for k in ks:
                product = multiply(product, trace_power(k, d))
            out.append((ks, product))
    return tuple(out)


def central_decomposition(f: UEAElement) -> List[Tuple[int, UEAElement]]:
    """Central a_k with D̂(f) = Σ_k a_k (e^k)^T, for k = 0..deg(f) - 1.

    The a_k are sought in the span of τ-monomials of matching weight and solved
    for exactly over Q; free parameters of an underdetermined system are set to 0.
    """
    d = f.dim
    if not is_central(f):
        raise PreconditionError("central_seed", "central_decomposition needs a central element")
    degree = filtration_degree(f)
    if degree <= 0:
        return []

    target = matrix_quasi_derive(f, Variant.HAT)
    unknowns: List[Tuple[int, UEAElement]] = []
    columns: List[ElementMatrix] = []
    for k in range(degree):
        transposed_power = power_matrix(k, d).transpose()
        for _, monomial in _tau_monomials(degree - 1 - k, d):
            unknowns.append((k, monomial))
            columns.append(monomial * transposed_power)

    keys = set()
    for r in range(1, d + 1):
        for c in range(1, d + 1):
            keys.update((r, c, w) for w in target.entry(r, c).terms)
            for column in columns:
                keys.update((r, c, w) for w in column.entry(r, c).terms)
    keys = sorted(keys)
    logger.debug(f"central decomposition: {len(keys)} equations, {len(unknowns)} unknowns")

    def rational(value: Fraction) -> sympy.Rational:
        return sympy.Rational(value.numerator, value.denominator)

    system = sympy.Matrix(
        [[rational(column.entry(r, c).terms.get(w, Fraction(0))) for column in columns] for r, c, w in keys]
    )
    rhs = sympy.Matrix([rational(target.entry(r, c).terms.get(w, Fraction(0))) for r, c, w in keys])
    try:
        solution, params = system.gauss_jordan_solve(rhs)
    except ValueError as e:
        raise DecompositionError(f"no central decomposition for an element of degree {degree}: {e}") from None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})

    coefficients: Dict[int, UEAElement] = {k: UEAElement.zero(d) for k in range(degree)}
    for (k, monomial), value in zip(unknowns, solution):
        value = sympy.Rational(value)
        if value:
            coefficients[k] = coefficients[k] + monomial * Fraction(int(value.p), int(value.q))
    return sorted(coefficients.items())
