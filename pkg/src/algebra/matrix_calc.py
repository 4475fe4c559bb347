"""Calculus of the generator matrix e = (e^i_j) over U(gl_d).

Matrix positions are 1-based (row, col) throughout; the generator matrix has
e^i_j at row i, column j.
"""

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

from algebra.pbw_core import (
    Scalar,
    UEAElement,
    check_dim,
    check_index,
    check_permutation,
    multiply,
)
from core.errors import DimensionError, PreconditionError


class ShiftMatrix:
    """A d x d rational matrix ξ, the direction of an argument shift."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[Union[Scalar, str]]]):
        rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionError("shift matrix must be square and non-empty")
        self._rows = rows

    @classmethod
    def diag(cls, values: Sequence[Union[Scalar, str]]) -> "ShiftMatrix":
        d = len(values)
        return cls([[values[r] if r == c else 0 for c in range(d)] for r in range(d)])

    @classmethod
    def identity(cls, d: int) -> "ShiftMatrix":
        check_dim(d)
        return cls.diag([1] * d)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def entry(self, row: int, col: int) -> Fraction:
        return self._rows[row - 1][col - 1]

    def diagonal(self) -> Tuple[Fraction, ...]:
        return tuple(self._rows[k][k] for k in range(self.dim))

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def is_diagonal(self) -> bool:
        return all(
            self._rows[r][c] == 0 for r in range(self.dim) for c in range(self.dim) if r != c
        )

    def is_regular_diagonal(self) -> bool:
        diagonal = self.diagonal()
        return self.is_diagonal() and len(set(diagonal)) == len(diagonal)

    def require_regular_diagonal(self) -> None:
        if not self.is_diagonal():
            raise PreconditionError("regular_diagonal", "shift matrix must be diagonal")
        if not self.is_regular_diagonal():
            raise PreconditionError(
                "regular_diagonal", f"diagonal entries {list(map(str, self.diagonal()))} must be pairwise distinct"
            )

    def permuted(self, perm: Sequence[int]) -> "ShiftMatrix":
        """Conjugate by the permutation matrix of ``perm``: entry (a, b) moves to (perm(a), perm(b))."""
        perm = check_permutation(perm, self.dim)
        rows = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for a in range(self.dim):
            for b in range(self.dim):
                rows[perm[a] - 1][perm[b] - 1] = self._rows[a][b]
        return ShiftMatrix(rows)

    def __eq__(self, other):
        if not isinstance(other, ShiftMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"ShiftMatrix({[[str(v) for v in row] for row in self._rows]})"


class ElementMatrix:
    """A d x d matrix with entries in U(gl_d). Products respect entry order."""

    __slots__ = ("_dim", "_entries")

    def __init__(self, entries: Sequence[Sequence[UEAElement]]):
        entries = tuple(tuple(row) for row in entries)
        d = len(entries)
        if d == 0 or any(len(row) != d for row in entries):
            raise DimensionError("element matrix must be square and non-empty")
        for row in entries:
            for entry in row:
                if entry.dim != d:
                    raise DimensionError(f"entry of dimension {entry.dim} in a {d}x{d} matrix")
        self._dim = d
        self._entries = entries

    @classmethod
    def zero(cls, d: int) -> "ElementMatrix":
        check_dim(d)
        z = UEAElement.zero(d)
        return cls([[z] * d for _ in range(d)])

    @classmethod
    def identity(cls, d: int) -> "ElementMatrix":
        return cls.scalar_diagonal(UEAElement.one(d))

    @classmethod
    def scalar_diagonal(cls, value: UEAElement) -> "ElementMatrix":
        d = value.dim
        z = UEAElement.zero(d)
        return cls([[value if r == c else z for c in range(d)] for r in range(d)])

    @classmethod
    def unit(cls, row: int, col: int, d: int) -> "ElementMatrix":
        """Matrix unit E_{row,col}."""
        check_dim(d)
        check_index(row, d)
        check_index(col, d)
        one, z = UEAElement.one(d), UEAElement.zero(d)
        return cls([[one if (r, c) == (row, col) else z for c in range(1, d + 1)] for r in range(1, d + 1)])

    @property
    def dim(self) -> int:
        return self._dim

    def entry(self, row: int, col: int) -> UEAElement:
        return self._entries[row - 1][col - 1]

    def transpose(self) -> "ElementMatrix":
        return ElementMatrix(list(zip(*self._entries)))

    def trace(self) -> UEAElement:
        total = UEAElement.zero(self._dim)
        for k in range(self._dim):
            total = total + self._entries[k][k]
        return total

    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self._entries for entry in row)

    def _check(self, other: "ElementMatrix") -> None:
        if self._dim != other._dim:
            raise DimensionError(f"matrix dimension mismatch: {self._dim} vs {other._dim}")

    def __add__(self, other):
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        self._check(other)
        return ElementMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._entries, other._entries)]
        )

    def __neg__(self):
        return ElementMatrix([[-a for a in row] for row in self._entries])

    def __sub__(self, other):
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        self._check(other)
        d = self._dim
        out = []
        for r in range(d):
            row = []
            for c in range(d):
                acc = UEAElement.zero(d)
                for k in range(d):
                    acc = acc + multiply(self._entries[r][k], other._entries[k][c])
                row.append(acc)
            out.append(row)
        return ElementMatrix(out)

    def __mul__(self, other):
        """Right multiplication of every entry by a scalar or an element."""
        if isinstance(other, (int, Fraction, UEAElement)):
            return ElementMatrix([[a * other for a in row] for row in self._entries])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, UEAElement):
            return ElementMatrix([[multiply(other, a) for a in row] for row in self._entries])
        return NotImplemented

    def left_scale(self, xi: ShiftMatrix) -> "ElementMatrix":
        """The product ξ·X for a rational matrix ξ."""
        if xi.dim != self._dim:
            raise DimensionError(f"shift matrix of dimension {xi.dim} against a {self._dim}x{self._dim} matrix")
        d = self._dim
        out = []
        for r in range(d):
            row = []
            for c in range(d):
                acc = UEAElement.zero(d)
                for k in range(d):
                    weight = xi.rows[r][k]
                    if weight:
                        acc = acc + self._entries[k][c] * weight
                row.append(acc)
            out.append(row)
        return ElementMatrix(out)

    def commutator(self, other: "ElementMatrix") -> "ElementMatrix":
        return (self @ other) - (other @ self)

    def __eq__(self, other):
        if not isinstance(other, ElementMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return f"ElementMatrix(d={self._dim}, {[[str(a) for a in row] for row in self._entries]})"


def generator_matrix(d: int) -> ElementMatrix:
    check_dim(d)
    return ElementMatrix(
        [[UEAElement.generator(i, j, d) for j in range(1, d + 1)] for i in range(1, d + 1)]
    )


def _check_power(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise PreconditionError("power_order", f"power must be a non-negative integer, got {n!r}")


@lru_cache(maxsize=None)
def _power_entry(n: int, i: int, j: int, d: int) -> UEAElement:
    if n == 0:
        return UEAElement.scalar(1 if i == j else 0, d)
    words = {}
    for inner in itertools.product(range(1, d + 1), repeat=n - 1):
        path = (i,) + inner + (j,)
        word = tuple((path[k] - 1) * d + (path[k + 1] - 1) for k in range(n))
        words[word] = words.get(word, 0) + 1
    return UEAElement(d, words)


def power_entry(n: int, i: int, j: int, d: int) -> UEAElement:
    """(e^n)^i_j expanded from its defining sum over index paths i -> ... -> j."""
    check_dim(d)
    _check_power(n)
    check_index(i, d)
    check_index(j, d)
    return _power_entry(n, i, j, d)


def power_matrix(n: int, d: int) -> ElementMatrix:
    return ElementMatrix(
        [[power_entry(n, i, j, d) for j in range(1, d + 1)] for i in range(1, d + 1)]
    )


def trace_power(k: int, d: int) -> UEAElement:
    """tr(e^k) for k >= 0, so trace_power(0, d) = d·1."""
    _check_power(k)
    total = UEAElement.zero(d)
    for i in range(1, d + 1):
        total = total + power_entry(k, i, i, d)
    return total


def tau(k: int, d: int) -> UEAElement:
    if not isinstance(k, int) or k < 1:
        raise PreconditionError("tau_order", f"tau needs k >= 1, got {k!r}")
    return trace_power(k, d)


def xi_twisted_trace(xi: ShiftMatrix, k: int) -> UEAElement:
    """tr(ξ·(e^k)^T) = Σ_{a,b} ξ_ab (e^k)^a_b."""
    d = xi.dim
    _check_power(k)
    total = UEAElement.zero(d)
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            weight = xi.entry(a, b)
            if weight:
                total = total + power_entry(k, a, b, d) * weight
    return total


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def power_commutator_oracle_3(p: int, i: int, j: int, k: int, l: int, d: int) -> UEAElement:
    """δ^k_j (e^p)^i_l - (e^p)^k_j δ^i_l, the closed form of [(e^p)^i_j, e^k_l]."""
    for index in (i, j, k, l):
        check_index(index, d)
    return power_entry(p, i, l, d) * _delta(k, j) - power_entry(p, k, j, d) * _delta(i, l)


def power_commutator_oracle_4(m: int, n: int, i: int, j: int, k: int, l: int, d: int) -> UEAElement:
    """Closed form of [(e^m)^i_j, (e^n)^k_l]."""
    for index in (i, j, k, l):
        check_index(index, d)
    _check_power(m)
    _check_power(n)
    total = UEAElement.zero(d)
    for a in range(1, min(m, n) + 1):
        total = total + multiply(power_entry(a - 1, k, j, d), power_entry(m + n - a, i, l, d))
        total = total - multiply(power_entry(m + n - a, k, j, d), power_entry(a - 1, i, l, d))
    return total


def trace_pairing(xi: ShiftMatrix, x: ElementMatrix, y: ElementMatrix) -> UEAElement:
    """tr(ξ·(XY - YX))."""
    return x.commutator(y).left_scale(xi).trace()


def matrix_polynomial(coefficients: Sequence[Scalar], d: int) -> ElementMatrix:
    """Σ_m c_m e^m for rational coefficients listed from the constant term up."""
    total = ElementMatrix.zero(d)
    for m, c in enumerate(coefficients):
        if c:
            total = total + power_matrix(m, d) * Fraction(c)
    return total

