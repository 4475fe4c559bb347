"""Text and JSON formats for elements and shift matrices.

Grammar::

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
    factor  := 'e[' int ',' int ']'
    coeff   := int | int '/' int
"""

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

import pyparsing as pp
from pydantic import BaseModel, ValidationError

from algebra.classical import SymElement
from algebra.matrix_calc import ElementMatrix, ShiftMatrix
from algebra.pbw_core import GenIndex, UEAElement, check_dim, check_index
from core.errors import DimensionError, ParseError


class TermPayload(BaseModel):
    coeff: str
    word: List[Tuple[int, int]]


class ElementPayload(BaseModel):
    d: int
    terms: List[TermPayload]


class MatrixPayload(BaseModel):
    d: int
    entries: List[List[ElementPayload]]


def _parse_coeff(s, loc, toks):
    numerator = int(toks["num"])
    denominator = int(toks["den"]) if toks.get("den") else 1
    if denominator == 0:
        raise pp.ParseException(s, loc, "zero denominator")
    return Fraction(numerator, denominator)


def _build_grammar() -> pp.ParserElement:
    coeff = pp.Regex(r"(?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?").set_parse_action(_parse_coeff)
    factor = pp.Regex(r"e\s*\[\s*(?P<row>\d+)\s*,\s*(?P<col>\d+)\s*\]").set_parse_action(
        lambda toks: [GenIndex(int(toks["row"]), int(toks["col"]))]
    )
    factors = factor + pp.ZeroOrMore(pp.Suppress("*") + factor)
    term = pp.Group(
        (coeff + pp.Optional(pp.Suppress("*") + factors)) | factors
    ).set_name("term")
    sign = pp.one_of("+ -")
    element = pp.Optional(sign, default="+") + term + pp.ZeroOrMore(sign + term)
    return element


_GRAMMAR = _build_grammar()


def _parse_terms(text: str) -> List[Tuple[Fraction, Tuple[GenIndex, ...]]]:
    try:
        tokens = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ParseError(e.msg, e.lineno, e.col) from None

    out = []
    for sign, term in zip(tokens[0::2], tokens[1::2]):
        coeff = Fraction(1)
        factors = []
        for item in term:
            if isinstance(item, GenIndex):
                factors.append(item)
            else:
                coeff *= item
        out.append((coeff if sign == "+" else -coeff, tuple(factors)))
    return out


def parse_element(text: str, dim: int) -> UEAElement:
    """Parse an element; words need not be normal and are normal-ordered on the way in."""
    check_dim(dim)
    terms = {}
    for coeff, factors in _parse_terms(text):
        for g in factors:
            check_index(g.row, dim)
            check_index(g.col, dim)
        word = tuple(g.code(dim) for g in factors)
        terms[word] = terms.get(word, Fraction(0)) + coeff
    return UEAElement(dim, terms)


def parse_sym_element(text: str, dim: int) -> SymElement:
    check_dim(dim)
    terms = {}
    for coeff, factors in _parse_terms(text):
        monomial = tuple(sorted(g.code(dim) for g in factors))
        terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
    return SymElement(dim, terms)


def sort_key(word: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Top degree first, then lexicographic on generator codes."""
    return (-len(word), tuple(word))


def _format_terms(terms, dim: int, separator: str = "*") -> str:
    if not terms:
        return "0"
    pieces = []
    for word in sorted(terms, key=sort_key):
        coeff = terms[word]
        magnitude = abs(coeff)
        factors = separator.join(str(GenIndex.from_code(c, dim)) for c in word)
        if not word:
            body = str(magnitude)
        elif magnitude == 1:
            body = factors
        else:
            body = f"{magnitude}*{factors}"
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(pieces)


def format_element(a: UEAElement) -> str:
    return _format_terms(a.terms, a.dim)


def format_sym_element(f: SymElement) -> str:
    return _format_terms(f.terms, f.dim)


def element_to_payload(a: UEAElement) -> ElementPayload:
    terms = []
    for word in sorted(a.terms, key=sort_key):
        terms.append(
            TermPayload(
                coeff=str(a.terms[word]),
                word=[tuple(GenIndex.from_code(c, a.dim)) for c in word],
            )
        )
    return ElementPayload(d=a.dim, terms=terms)


def element_from_payload(payload: ElementPayload) -> UEAElement:
    check_dim(payload.d)
    terms = {}
    for term in payload.terms:
        word = tuple(GenIndex(r, c).code(payload.d) for r, c in term.word)
        terms[word] = terms.get(word, Fraction(0)) + Fraction(term.coeff)
    return UEAElement(payload.d, terms)


def element_to_json(a: UEAElement) -> str:
    return element_to_payload(a).model_dump_json()


def element_from_json(text: str) -> UEAElement:
    try:
        payload = ElementPayload.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid element JSON: {e.errors()[0]['msg']}", 1, 1) from None
    return element_from_payload(payload)


def matrix_to_payload(m: ElementMatrix) -> MatrixPayload:
    return MatrixPayload(
        d=m.dim,
        entries=[[element_to_payload(m.entry(r, c)) for c in range(1, m.dim + 1)] for r in range(1, m.dim + 1)],
    )


_ROW = re.compile(r"\[([^\[\]]*)\]")


def _parse_rational(text: str, spec: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {text.strip()!r} in {spec!r}", 1, max(1, spec.find(text) + 1)) from None


def parse_shift_matrix(spec: str, dim: int) -> ShiftMatrix:
    """Parse ``diag:a,b,...`` or ``full:[[a,b],[c,d]]`` with rational entries ``p/q``."""
    check_dim(dim)
    spec = spec.strip()
    if spec.startswith("diag:"):
        values = [_parse_rational(v, spec) for v in spec[len("diag:"):].split(",")]
        if len(values) != dim:
            raise DimensionError(f"diag spec has {len(values)} entries, expected {dim}")
        return ShiftMatrix.diag(values)
    if spec.startswith("full:"):
        body = spec[len("full:"):].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError("full spec must be a bracketed list of rows", 1, len("full:") + 1)
        rows = [[_parse_rational(v, spec) for v in row.split(",")] for row in _ROW.findall(body[1:-1])]
        if len(rows) != dim or any(len(row) != dim for row in rows):
            raise DimensionError(f"full spec must be {dim}x{dim}")
        return ShiftMatrix(rows)
    raise ParseError("shift matrix must start with 'diag:' or 'full:'", 1, 1)


def format_shift_matrix(xi: ShiftMatrix) -> str:
    if xi.is_diagonal():
        return "diag:" + ",".join(str(v) for v in xi.diagonal())
    rows = ",".join("[" + ",".join(str(v) for v in row) + "]" for row in xi.rows)
    return f"full:[{rows}]"

