"""The symmetric algebra S(gl_d) with its Lie-Poisson bracket.

Monomials are sorted tuples of generator codes, so e^1_2·e^2_1·e^1_2 and
e^1_2·e^1_2·e^2_1 share the key (1, 1, 2) at d = 2.
"""

import itertools
from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import multiset_permutations

from algebra.matrix_calc import ShiftMatrix
from algebra.pbw_core import Scalar, UEAElement, Word, check_dim, filtration_degree
from core.errors import DimensionError, PreconditionError

MAX_SYMMETRIZE_DEGREE = 8
MAX_CHAR_POLY_DIM = 4


class SymElement:
    """Immutable rational polynomial in the commuting variables e^i_j."""

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Optional[Mapping[Word, Scalar]] = None):
        check_dim(dim)
        size = dim * dim
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for monomial, coeff in (terms or {}).items():
            if not coeff:
                continue
            key = tuple(sorted(monomial))
            if any(not 0 <= code < size for code in key):
                raise DimensionError(f"monomial {key} outside the {dim}x{dim} basis")
            acc[key] += Fraction(coeff)
        self._dim = dim
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def zero(cls, dim: int) -> "SymElement":
        return cls(dim)

    @classmethod
    def scalar(cls, value: Scalar, dim: int) -> "SymElement":
        return cls(dim, {(): value})

    @classmethod
    def generator(cls, row: int, col: int, dim: int) -> "SymElement":
        if not (1 <= row <= dim and 1 <= col <= dim):
            raise DimensionError(f"generator e[{row},{col}] outside 1..{dim}")
        return cls(dim, {((row - 1) * dim + (col - 1),): 1})

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(len(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self._terms}) <= 1

    def _coerce(self, other) -> Optional["SymElement"]:
        if isinstance(other, SymElement):
            if other._dim != self._dim:
                raise DimensionError(f"dimension mismatch: {self._dim} vs {other._dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return SymElement.scalar(other, self._dim)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return SymElement(self._dim, acc)

    __radd__ = __add__

    def __neg__(self):
        return SymElement(self._dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                acc[tuple(sorted(m1 + m2))] += c1 * c2
        return SymElement(self._dim, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("power_exponent", f"exponent must be a non-negative integer, got {exponent!r}")
        result = SymElement.scalar(1, self._dim)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.scalar(other, self._dim)
        if not isinstance(other, SymElement):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if set(self._terms) <= {()}:
                self._hash = hash(self._terms.get((), Fraction(0)))
            else:
                self._hash = hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        from algebra.codec import format_sym_element

        return format_sym_element(self)

    def __repr__(self):
        return f"SymElement(d={self._dim}, {str(self)!r})"


def derivative_by_code(f: SymElement, code: int) -> SymElement:
    """Ordinary partial derivative with respect to the variable with this code."""
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for monomial, coeff in f.terms.items():
        power = monomial.count(code)
        if power:
            k = monomial.index(code)
            acc[monomial[:k] + monomial[k + 1:]] += coeff * power
    return SymElement(f.dim, acc)


def partial_derive(i: int, j: int, f: SymElement) -> SymElement:
    """∂^i_j with ∂^i_j(e^p_q) = δ^p_j δ^i_q, i.e. differentiation in e^j_i."""
    d = f.dim
    if not (1 <= i <= d and 1 <= j <= d):
        raise DimensionError(f"index pair ({i},{j}) outside 1..{d}")
    return derivative_by_code(f, (j - 1) * d + (i - 1))


def _variables(f: SymElement) -> List[int]:
    return sorted({code for monomial in f.terms for code in monomial})


def generator_bracket(a: int, b: int, dim: int) -> SymElement:
    """{e^i_j, e^p_q} = δ^p_j e^i_q - δ^i_q e^p_j on codes."""
    i, j = divmod(a, dim)
    p, q = divmod(b, dim)
    terms = {}
    if p == j:
        terms[(i * dim + q,)] = 1
    if i == q:
        key = (p * dim + j,)
        terms[key] = terms.get(key, 0) - 1
    return SymElement(dim, terms)


def poisson_bracket(f: SymElement, g: SymElement) -> SymElement:
    if f.dim != g.dim:
        raise DimensionError(f"dimension mismatch: {f.dim} vs {g.dim}")
    d = f.dim
    total = SymElement.zero(d)
    g_partials = {b: derivative_by_code(g, b) for b in _variables(g)}
    for a in _variables(f):
        fa = derivative_by_code(f, a)
        for b, gb in g_partials.items():
            bracket = generator_bracket(a, b, d)
            if bracket:
                total = total + fa * gb * bracket
    return total


def is_poisson_central(f: SymElement) -> bool:
    d = f.dim
    return all(
        poisson_bracket(f, SymElement.generator(i, j, d)).is_zero
        for i in range(1, d + 1)
        for j in range(1, d + 1)
    )


def classical_derive(xi: ShiftMatrix, f: SymElement) -> SymElement:
    """∂_ξ f = Σ_{a,b} ξ_ab ∂^a_b f."""
    d = f.dim
    if xi.dim != d:
        raise DimensionError(f"shift matrix of dimension {xi.dim} against an element of dimension {d}")
    total = SymElement.zero(d)
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            weight = xi.entry(a, b)
            if weight:
                total = total + partial_derive(a, b, f) * weight
    return total


def iterate_classical_derive(xi: ShiftMatrix, f: SymElement, p: int) -> SymElement:
    if p < 0:
        raise PreconditionError("shift_order", f"order must be non-negative, got {p}")
    for _ in range(p):
        f = classical_derive(xi, f)
    return f


def symmetrize(f: SymElement) -> UEAElement:
    """σ: average each monomial over its distinct orderings and normal-order in U(gl_d)."""
    d = f.dim
    if f.degree > MAX_SYMMETRIZE_DEGREE:
        raise PreconditionError(
            "symmetrization_degree", f"degree {f.degree} exceeds {MAX_SYMMETRIZE_DEGREE}"
        )
    terms: Dict[Word, Fraction] = defaultdict(Fraction)
    for monomial, coeff in f.terms.items():
        orderings = [tuple(p) for p in multiset_permutations(list(monomial))] or [()]
        weight = coeff / len(orderings)
        for word in orderings:
            terms[word] += weight
    return UEAElement(d, terms)


def _principal_minor(rows: Tuple[int, ...], d: int) -> SymElement:
    total = SymElement.zero(d)
    for image in itertools.permutations(range(len(rows))):
        sign = Permutation(list(image)).signature()
        monomial = tuple((rows[s] - 1) * d + (rows[image[s]] - 1) for s in range(len(rows)))
        total = total + SymElement(d, {monomial: sign})
    return total


def char_poly_generators(d: int) -> List[SymElement]:
    """I_1..I_d with det(e - λ) = Σ_k (-1)^{d-k} λ^{d-k} I_k; I_k sums the principal k-minors."""
    check_dim(d)
    if d > MAX_CHAR_POLY_DIM:
        raise PreconditionError("char_poly_dimension", f"d = {d} exceeds {MAX_CHAR_POLY_DIM}")
    generators = []
    for k in range(1, d + 1):
        total = SymElement.zero(d)
        for rows in itertools.combinations(range(1, d + 1), k):
            total = total + _principal_minor(rows, d)
        generators.append(total)
    return generators


def symbol_of_degree(f: UEAElement, m: int) -> SymElement:
    """The length-m words of f read as commutative monomials."""
    return SymElement(f.dim, {w: c for w, c in f.terms.items() if len(w) == m})


def top_symbol(f: UEAElement) -> SymElement:
    if f.is_zero:
        raise PreconditionError("nonzero_element", "the zero element has no top symbol")
    return symbol_of_degree(f, filtration_degree(f))


def classical_shift_check(xi: ShiftMatrix, p: int, q: int, f: SymElement, g: SymElement) -> bool:
    """Whether {∂_ξ^p f, ∂_ξ^q g} vanishes for Poisson-central f and g."""
    for name, h in (("f", f), ("g", g)):
        if not is_poisson_central(h):
            raise PreconditionError("poisson_central", f"{name} is not Poisson-central")
    shifted_f = iterate_classical_derive(xi, f, p)
    shifted_g = iterate_classical_derive(xi, g, q)
    return poisson_bracket(shifted_f, shifted_g).is_zero

