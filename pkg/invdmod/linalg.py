"""Exact matrix helpers over QQ built on sympy's DomainMatrix."""

from __future__ import annotations

import logging
from typing import List, Sequence

from sympy import Poly, Rational, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatch, IrrationalSpectrum

logger = logging.getLogger(__name__)

_X = Symbol("x")


def dense(rows: Sequence[Sequence], domain=QQ) -> DomainMatrix:
    rows = [[domain.convert(entry) for entry in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), domain)


def identity(n: int, domain=QQ) -> DomainMatrix:
    return dense([[domain.one if i == j else domain.zero for j in range(n)] for i in range(n)], domain)


def zero_matrix(n: int, domain=QQ) -> DomainMatrix:
    return dense([[domain.zero] * n for _ in range(n)], domain)


def diagonal(values: Sequence, domain=QQ) -> DomainMatrix:
    n = len(values)
    return dense(
        [[domain.convert(values[i]) if i == j else domain.zero for j in range(n)] for i in range(n)],
        domain,
    )


def scalar(n: int, value: Rational, domain=QQ) -> DomainMatrix:
    return diagonal([domain.from_sympy(Rational(value))] * n, domain)


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Entrywise equality regardless of sparse/dense storage."""
    return a.shape == b.shape and a.to_list() == b.to_list()


def is_zero(a: DomainMatrix) -> bool:
    return all(entry == a.domain.zero for row in a.to_list() for entry in row)


def commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    return a * b - b * a


def check_square(a: DomainMatrix, n: int) -> None:
    if a.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix, got {a.shape[0]}x{a.shape[1]}")


def rational_spectrum(a: DomainMatrix) -> List[Rational]:
    """Distinct eigenvalues of ``a``, sorted; raises if the characteristic polynomial
    does not split over QQ."""
    coefficients = [a.domain.to_sympy(c) for c in a.charpoly()]
    poly = Poly.from_list(coefficients, _X, domain=QQ)
    _, factors = poly.factor_list()
    roots = set()
    for factor, _ in factors:
        if factor.degree() != 1:
            raise IrrationalSpectrum(
                f"characteristic polynomial {poly.as_expr()} does not split over QQ"
            )
        lead, constant = factor.all_coeffs()
        roots.add(Rational(-constant, lead))
    return sorted(roots)


def jordan_block_sizes(a: DomainMatrix, eigenvalue: Rational) -> List[int]:
    """Jordan block sizes of ``a`` at ``eigenvalue``, descending, from the ranks of
    ``(a - eigenvalue)^k``."""
    n = a.shape[0]
    shifted = a - scalar(n, eigenvalue, a.domain)
    ranks = [n]
    power = identity(n, a.domain)
    while True:
        power = power * shifted
        rank = power.rank()
        if rank == ranks[-1]:
            break
        ranks.append(rank)
    # at_least[k-1] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes: List[int] = []
    for k, count in enumerate(at_least, start=1):
        following = at_least[k] if k < len(at_least) else 0
        sizes.extend([k] * (count - following))
    logger.debug("ranks of (A - %s)^k: %s -> blocks %s", eigenvalue, ranks, sizes)
    return sorted(sizes, reverse=True)


def is_diagonalizable(a: DomainMatrix) -> bool:
    return all(
        max(jordan_block_sizes(a, lam), default=1) == 1 for lam in rational_spectrum(a)
    )


def mod_one(value: Rational) -> Rational:
    """Representative of ``value`` mod ZZ in ``[0, 1)``."""
    value = Rational(value)
    return value - (value.p // value.q)
