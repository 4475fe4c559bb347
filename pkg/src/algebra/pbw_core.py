"""PBW normal ordering and exact arithmetic in U(gl_d).

Words are stored as tuples of generator codes ``(row - 1) * d + (col - 1)``;
the code order is lexicographic on ``(row, col)`` so a word is PBW-normal
exactly when its codes are non-decreasing.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Dict, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from core.errors import DimensionError, PreconditionError

Word = Tuple[int, ...]
Scalar = Union[int, Fraction]
DescentChooser = Callable[[Sequence[int]], int]


class GenIndex(NamedTuple):
    """Generator label e^row_col. Tuple ordering is the PBW generator order."""

    row: int
    col: int

    def code(self, dim: int) -> int:
        check_index(self.row, dim)
        check_index(self.col, dim)
        return (self.row - 1) * dim + (self.col - 1)

    @classmethod
    def from_code(cls, code: int, dim: int) -> "GenIndex":
        return cls(code // dim + 1, code % dim + 1)

    def __str__(self) -> str:
        return f"e[{self.row},{self.col}]"


def check_dim(dim: int) -> None:
    if not isinstance(dim, int) or dim < 1:
        raise DimensionError(f"dimension must be a positive integer, got {dim!r}")


def check_index(index: int, dim: int) -> None:
    if not 1 <= index <= dim:
        raise DimensionError(f"index {index} outside 1..{dim}")


def is_normal(word: Word) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


def _descents(word: Word) -> list:
    return [k for k in range(len(word) - 1) if word[k] > word[k + 1]]


def _rewrite(word: Word, k: int, dim: int) -> list:
    """Apply e^i_j e^p_q -> e^p_q e^i_j + δ^p_j e^i_q - δ^i_q e^p_j at position k."""
    x, y = word[k], word[k + 1]
    i, j = divmod(x, dim)
    p, q = divmod(y, dim)
    head, tail = word[:k], word[k + 2:]
    out = [(head + (y, x) + tail, 1)]
    if p == j:
        out.append((head + (i * dim + q,) + tail, 1))
    if i == q:
        out.append((head + (p * dim + j,) + tail, -1))
    return out


@lru_cache(maxsize=None)
def _normal_form(word: Word, dim: int) -> Tuple[Tuple[Word, Fraction], ...]:
    descents = _descents(word)
    if not descents:
        return ((word, Fraction(1)),)
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for rewritten, sign in _rewrite(word, descents[0], dim):
        for w, c in _normal_form(rewritten, dim):
            acc[w] += sign * c
    return tuple((w, c) for w, c in acc.items() if c)


def _normal_form_chosen(word: Word, dim: int, choose: DescentChooser) -> Dict[Word, Fraction]:
    descents = _descents(word)
    if not descents:
        return {word: Fraction(1)}
    k = descents[choose(descents) % len(descents)]
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for rewritten, sign in _rewrite(word, k, dim):
        for w, c in _normal_form_chosen(rewritten, dim, choose).items():
            acc[w] += sign * c
    return {w: c for w, c in acc.items() if c}


class UEAElement:
    """Immutable rational combination of PBW-normal words in U(gl_d).

    Construction accepts arbitrary words and normal-orders them, so the stored
    term map is always canonical and equality is term-map equality.
    """

    __slots__ = ("_dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Optional[Mapping[Word, Scalar]] = None):
        check_dim(dim)
        size = dim * dim
        acc: Dict[Word, Fraction] = defaultdict(Fraction)
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if not coeff:
                continue
            for code in word:
                if not 0 <= code < size:
                    raise DimensionError(f"generator code {code} outside the {dim}x{dim} basis")
            if is_normal(word):
                acc[word] += Fraction(coeff)
            else:
                for w, c in _normal_form(word, dim):
                    acc[w] += Fraction(coeff) * c
        self._dim = dim
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _from_normal(cls, dim: int, terms: Dict[Word, Fraction]) -> "UEAElement":
        obj = cls.__new__(cls)
        obj._dim = dim
        obj._terms = {w: c for w, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim: int) -> "UEAElement":
        check_dim(dim)
        return cls._from_normal(dim, {})

    @classmethod
    def scalar(cls, value: Scalar, dim: int) -> "UEAElement":
        check_dim(dim)
        return cls._from_normal(dim, {(): Fraction(value)})

    @classmethod
    def one(cls, dim: int) -> "UEAElement":
        return cls.scalar(1, dim)

    @classmethod
    def generator(cls, row: int, col: int, dim: int) -> "UEAElement":
        check_dim(dim)
        return cls._from_normal(dim, {(GenIndex(row, col).code(dim),): Fraction(1)})

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
        return filtration_degree(self)

    def scalar_value(self) -> Optional[Fraction]:
        """The rational c when the element equals c·1, else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {()}:
            return self._terms[()]
        return None

    def homogeneous_part(self, m: int) -> "UEAElement":
        return UEAElement._from_normal(
            self._dim, {w: c for w, c in self._terms.items() if len(w) == m}
        )

    def top_part(self) -> "UEAElement":
        return self.homogeneous_part(filtration_degree(self))

    def _coerce(self, other) -> Optional["UEAElement"]:
        if isinstance(other, UEAElement):
            _check_same_dim(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return UEAElement.scalar(other, self._dim)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = defaultdict(Fraction, self._terms)
        for w, c in other._terms.items():
            acc[w] += c
        return UEAElement._from_normal(self._dim, acc)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._from_normal(self._dim, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            return UEAElement._from_normal(self._dim, {w: c * value for w, c in self._terms.items()})
        if not isinstance(other, UEAElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("power_exponent", f"exponent must be a non-negative integer, got {exponent!r}")
        result = UEAElement.one(self._dim)
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_value() == other
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            # scalars compare equal to plain rationals, so they hash like them
            value = self.scalar_value()
            self._hash = hash(value) if value is not None else hash((self._dim, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        from algebra.codec import format_element

        return format_element(self)

    def __repr__(self):
        return f"UEAElement(d={self._dim}, {str(self)!r})"


def _check_same_dim(a: UEAElement, b: UEAElement) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def normal_order(
    word: Sequence[GenIndex], dim: int, choose: Optional[DescentChooser] = None
) -> UEAElement:
    """Normal-order a word of generators.

    By default the leftmost out-of-order pair is rewritten first. ``choose``
    receives the list of descent positions and returns which one to rewrite,
    which lets callers exercise other rewrite orders.
    """
    check_dim(dim)
    codes = tuple(GenIndex(*g).code(dim) for g in word)
    if choose is None:
        return UEAElement._from_normal(dim, dict(_normal_form(codes, dim)))
    return UEAElement._from_normal(dim, _normal_form_chosen(codes, dim, choose))


def add(a: UEAElement, b: UEAElement) -> UEAElement:
    _check_same_dim(a, b)
    return a + b


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    _check_same_dim(a, b)
    dim = a.dim
    acc: Dict[Word, Fraction] = defaultdict(Fraction)
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            scale = cu * cv
            if not u or not v or u[-1] <= v[0]:
                acc[u + v] += scale
                continue
            for w, cw in _normal_form(u + v, dim):
                acc[w] += scale * cw
    return UEAElement._from_normal(dim, acc)


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return multiply(a, b) - multiply(b, a)


def filtration_degree(a: UEAElement) -> int:
    """Maximum word length; -1 for the zero element."""
    if a.is_zero:
        return -1
    return max(len(w) for w in a.terms)


def is_central(a: UEAElement) -> bool:
    d = a.dim
    return all(
        commutator(a, UEAElement.generator(i, j, d)).is_zero
        for i in range(1, d + 1)
        for j in range(1, d + 1)
    )


def check_permutation(perm: Sequence[int], dim: int) -> Tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, dim + 1)):
        raise DimensionError(f"{perm} is not a permutation of 1..{dim}")
    return perm


def permute_indices(a: UEAElement, perm: Sequence[int]) -> UEAElement:
    """Relabel e^i_j as e^{perm(i)}_{perm(j)}, the action of a permutation matrix in GL_d."""
    d = a.dim
    perm = check_permutation(perm, d)

    def image(code: int) -> int:
        i, j = divmod(code, d)
        return (perm[i] - 1) * d + (perm[j] - 1)

    return UEAElement(d, {tuple(image(c) for c in w): c0 for w, c0 in a.terms.items()})
