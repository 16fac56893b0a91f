"""JSON encoding helpers for exact rationals, matrices and Laurent polynomials."""

from __future__ import annotations

import re
from typing import Any, List, Sequence

from sympy import Rational
from sympy.polys.domains import QQ, ZZ
from sympy.polys.fields import field
from sympy.polys.matrices import DomainMatrix

from .errors import MalformedInput

# Laurent polynomials in the torus coordinate live in QQ(t); they are exactly the
# elements whose denominator is a single term.
LAURENT, T = field("t", QQ)
LAURENT_DOMAIN = LAURENT.to_domain()

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: Any, path: str = "$") -> Rational:
    if isinstance(value, bool):
        raise MalformedInput("expected a rational, got a boolean", path)
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match:
            numerator = int(match.group(1))
            denominator = int(match.group(2) or 1)
            if denominator == 0:
                raise MalformedInput("zero denominator", path)
            return Rational(numerator, denominator)
    raise MalformedInput(f"expected a rational 'p/q', got {value!r}", path)


def format_rational(value: Any) -> str:
    """Lowest terms with positive denominator; integers print without '/1'."""
    return str(Rational(value))


def parse_int(value: Any, path: str = "$", *, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f"expected an integer, got {value!r}", path)
    if minimum is not None and value < minimum:
        raise MalformedInput(f"expected an integer >= {minimum}, got {value}", path)
    return value


def expect_list(value: Any, path: str) -> List[Any]:
    if not isinstance(value, list):
        raise MalformedInput(f"expected an array, got {type(value).__name__}", path)
    return value


def expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise MalformedInput(f"expected an object, got {type(value).__name__}", path)
    return value


def require(payload: dict, key: str, path: str) -> Any:
    if key not in payload:
        raise MalformedInput(f"missing field {key!r}", path)
    return payload[key]


def rational_matrix(rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    """Build a QQ matrix from ints, sympy Rationals or 'p/q' strings."""
    converted = [[QQ.from_sympy(parse_rational(e) if isinstance(e, str) else Rational(e))
                  for e in row] for row in rows]
    ncols = len(converted[0]) if converted else 0
    return DomainMatrix(converted, (len(converted), ncols), QQ)


def integer_matrix(rows: Sequence[Sequence[int]]) -> DomainMatrix:
    converted = [[ZZ(int(e)) for e in row] for row in rows]
    ncols = len(converted[0]) if converted else 0
    return DomainMatrix(converted, (len(converted), ncols), ZZ)


def matrix_from_json(payload: Any, path: str = "$", *, square: bool = True) -> DomainMatrix:
    rows = expect_list(payload, path)
    if not rows:
        raise MalformedInput("matrix must have at least one row", path)
    parsed: List[List[Rational]] = []
    width = None
    for i, row in enumerate(rows):
        row_path = f"{path}[{i}]"
        entries = expect_list(row, row_path)
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise MalformedInput("ragged matrix rows", row_path)
        parsed.append([parse_rational(e, f"{row_path}[{j}]") for j, e in enumerate(entries)])
    if not width:
        raise MalformedInput("matrix rows must be non-empty", path)
    if square and width != len(parsed):
        raise MalformedInput(f"expected a square matrix, got {len(parsed)}x{width}", path)
    return rational_matrix(parsed)


def matrix_to_json(matrix: DomainMatrix) -> List[List[str]]:
    domain = matrix.domain
    return [[format_rational(domain.to_sympy(e)) for e in row] for row in matrix.to_list()]


def integer_matrix_to_json(matrix: DomainMatrix) -> List[List[int]]:
    domain = matrix.domain
    return [[int(domain.to_sympy(e)) for e in row] for row in matrix.to_list()]


def laurent(terms: Sequence[tuple]) -> Any:
    """Element of QQ(t) from (exponent, coefficient) pairs."""
    value = LAURENT.zero
    for exponent, coefficient in terms:
        value += LAURENT(Rational(coefficient)) * T ** int(exponent)
    return value


def is_laurent(value: Any) -> bool:
    return value.denom.is_term


def laurent_terms(value: Any) -> List[tuple]:
    """(exponent, Rational) pairs in increasing exponent order."""
    if not is_laurent(value):
        raise ValueError(f"{value} is not a Laurent polynomial")
    ((shift,), scale), = value.denom.terms()
    terms = [
        (monom[0] - shift, QQ.to_sympy(coefficient / scale))
        for monom, coefficient in value.numer.terms()
    ]
    return sorted(terms)


def laurent_from_json(payload: Any, path: str = "$") -> Any:
    obj = expect_object(payload, path)
    terms = expect_list(require(obj, "terms", path), f"{path}.terms")
    pairs = []
    for i, term in enumerate(terms):
        term_path = f"{path}.terms[{i}]"
        term = expect_object(term, term_path)
        exponent = parse_int(require(term, "exp", term_path), f"{term_path}.exp")
        coefficient = parse_rational(require(term, "coef", term_path), f"{term_path}.coef")
        pairs.append((exponent, coefficient))
    return laurent(pairs)


def laurent_to_json(value: Any) -> dict:
    return {
        "terms": [
            {"exp": exponent, "coef": format_rational(coefficient)}
            for exponent, coefficient in laurent_terms(value)
        ]
    }
