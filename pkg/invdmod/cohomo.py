"""Weyl degrees, Poincare polynomials and Betti numbers of invariant D-modules.

``H^*_dR(G)`` of a semisimple group is an exterior algebra on generators of degree
``2 d_j - 1``; it only depends on the simply connected form.  For the module attached to
a representation ``V`` of ``Gamma`` the cohomology is ``H^*(G^sc) (x) V^Gamma``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd, lcm, prod
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, Poly, Symbol, cyclotomic_poly
from sympy.polys.domains import ZZ

from .errors import GroupMismatch, InvalidRank, PreconditionFailed
from .finab import RepClass, character_order, invariants_dim, tensor, trivial_class
from .rootdata import CartanType, FiniteAbelianGroup, SemisimpleGroup, cartan_matrix

logger = logging.getLogger(__name__)

_Q = Symbol("q")
MAX_EXCEPTIONAL_RANK = 8


def _degree_table(t: CartanType) -> Tuple[int, ...]:
    r = t.rank
    if t.series == "A":
        return tuple(range(2, r + 2))
    if t.series in ("B", "C"):
        return tuple(range(2, 2 * r + 1, 2))
    if t.series == "D":
        return tuple(sorted(list(range(2, 2 * r - 1, 2)) + [r]))
    table = {
        ("E", 6): (2, 5, 6, 8, 9, 12),
        ("E", 7): (2, 6, 8, 10, 12, 14, 18),
        ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
        ("F", 4): (2, 6, 8, 12),
        ("G", 2): (2, 6),
    }
    try:
        return table[(t.series, r)]
    except KeyError:
        raise InvalidRank(f"no degree data for {t.label}") from None


def weyl_group_order(t: CartanType) -> int:
    r = t.rank
    if t.series == "A":
        return factorial(r + 1)
    if t.series in ("B", "C"):
        return 2 ** r * factorial(r)
    if t.series == "D":
        return 2 ** (r - 1) * factorial(r)
    table = {
        ("E", 6): 51840,
        ("E", 7): 2903040,
        ("E", 8): 696729600,
        ("F", 4): 1152,
        ("G", 2): 12,
    }
    try:
        return table[(t.series, r)]
    except KeyError:
        raise InvalidRank(f"no Weyl group order for {t.label}") from None


@dataclass(frozen=True)
class WeylDegrees:
    cartan_type: CartanType
    degrees: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))
        if len(self.degrees) != self.cartan_type.rank:
            raise PreconditionFailed(
                f"{self.cartan_type.label} needs {self.cartan_type.rank} degrees, got {self.degrees}"
            )
        order = weyl_group_order(self.cartan_type)
        if prod(self.degrees) != order:
            raise PreconditionFailed(
                f"degrees {self.degrees} multiply to {prod(self.degrees)}, |W({self.cartan_type.label})| = {order}"
            )

    @property
    def exponents(self) -> Tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    def to_json(self) -> Dict[str, object]:
        return {"type": self.cartan_type.to_json(), "degrees": list(self.degrees)}


@lru_cache(maxsize=None)
def weyl_degrees(t: CartanType) -> WeylDegrees:
    return WeylDegrees(t, _degree_table(t))


def exponents(t: CartanType) -> Tuple[int, ...]:
    return weyl_degrees(t).exponents


def coxeter_number(t: CartanType) -> int:
    return max(weyl_degrees(t).degrees)


def coxeter_element(t: CartanType) -> Matrix:
    """``s_1 s_2 ... s_r`` acting on the root lattice, ``s_i(a_j) = a_j - a_ij a_i``."""
    a = cartan_matrix(t).to_matrix()
    r = t.rank
    element = Matrix.eye(r)
    for i in range(r):
        reflection = Matrix.eye(r)
        for j in range(r):
            reflection[i, j] -= a[i, j]
        element = element * reflection
    return element


def _multiplicative_order(m: Matrix, bound: int = 1000) -> int:
    identity = Matrix.eye(m.rows)
    power = m
    for k in range(1, bound + 1):
        if power == identity:
            return k
        power = power * m
    raise RuntimeError(f"Coxeter element has order > {bound}")


def coxeter_degrees(t: CartanType) -> Tuple[int, ...]:
    """Degrees read off the eigenvalues ``exp(2 pi i m_j / h)`` of a Coxeter element.

    The characteristic polynomial is a product of cyclotomic polynomials; ``Phi_k``
    contributes the exponents ``(h / k) u`` with ``gcd(u, k) = 1``.
    """
    c = coxeter_element(t)
    h = _multiplicative_order(c)
    x = Symbol("x")
    charpoly = Poly(c.charpoly(x).as_expr(), x, domain=ZZ)
    _, factors = charpoly.factor_list()
    cyclotomics = {k: Poly(cyclotomic_poly(k, x), x, domain=ZZ) for k in range(1, h + 1) if h % k == 0}
    found: List[int] = []
    orders: List[int] = []
    for factor, multiplicity in factors:
        matches = [k for k, phi in cyclotomics.items() if phi == factor]
        if not matches:
            raise RuntimeError(f"non-cyclotomic factor {factor.as_expr()} for {t.label}")
        k = matches[0]
        orders.append(k)
        for u in range(1, k + 1):
            if gcd(u, k) == 1:
                found.extend([(h // k) * u] * multiplicity)
    if lcm(*orders) != h:
        raise RuntimeError(f"cyclotomic orders of {t.label} do not generate h={h}")
    logger.debug("%s: Coxeter order %s, exponents %s", t.label, h, sorted(found))
    return tuple(sorted(m + 1 for m in found))


@dataclass(frozen=True)
class PoincarePolynomial:
    """Coefficients of ``q^0, q^1, ...``; trailing zeros stripped."""

    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        coefficients = list(self.coefficients)
        while len(coefficients) > 1 and coefficients[-1] == 0:
            coefficients.pop()
        if not coefficients or any(c < 0 for c in coefficients):
            raise PreconditionFailed("Poincare coefficients must be non-negative integers")
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def exterior(cls, generator_degrees: Sequence[int]) -> "PoincarePolynomial":
        result = cls((1,))
        for d in generator_degrees:
            result = result * cls((1,) + (0,) * (d - 1) + (1,))
        return result

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return PoincarePolynomial(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def evaluate(self, q: int) -> int:
        return sum(c * q ** i for i, c in enumerate(self.coefficients))

    @property
    def is_palindromic(self) -> bool:
        return self.coefficients == self.coefficients[::-1]

    def as_expr(self):
        return sum(c * _Q ** i for i, c in enumerate(self.coefficients))

    def to_json(self) -> Dict[str, object]:
        return {"poincare": list(self.coefficients)}


def poincare(g: SemisimpleGroup) -> PoincarePolynomial:
    """``prod_j (1 + q^(2 d_j - 1))`` over all factors; ``gamma`` plays no role."""
    generators = [2 * d - 1 for t in g.factors for d in weyl_degrees(t).degrees]
    return PoincarePolynomial.exterior(generators)


def group_dimension(g: SemisimpleGroup) -> int:
    return poincare(g).degree


def _check_rep(g: SemisimpleGroup, v: RepClass) -> None:
    if v.group != g.fundamental_group:
        raise GroupMismatch(
            f"representation of {v.group.invariant_factors} given for "
            f"{g.label} with Gamma = {g.fundamental_group.invariant_factors}"
        )


def dmod_betti(g: SemisimpleGroup, v: RepClass, i: int) -> int:
    """``dim H^i_dR(G, M_V) = b_i(G^sc) * dim V^Gamma``."""
    _check_rep(g, v)
    return poincare(g).coefficient(i) * invariants_dim(v)


def local_system_betti(g: SemisimpleGroup, v: RepClass, i: int) -> int:
    """``dim (H^i(G^sc) (x) V)^Gamma`` with Gamma acting trivially on ``H^i(G^sc)``."""
    _check_rep(g, v)
    betti = poincare(g).coefficient(i)
    if betti == 0:
        return 0
    return invariants_dim(tensor(trivial_class(v.group, betti), v))


@dataclass(frozen=True)
class MonodromyFactorization:
    """The monodromy ``pi_1(G) = Gamma -> GL_n`` of the local system of ``V``."""

    gamma: FiniteAbelianGroup
    representation: RepClass
    image_order: int

    @property
    def is_finite(self) -> bool:
        return True

    def to_json(self) -> Dict[str, object]:
        return {
            "gamma": self.gamma.to_json(),
            "characters": self.representation.to_json()["entries"],
            "image_order": self.image_order,
            "finite": self.is_finite,
        }


def monodromy_factors_through(g: SemisimpleGroup, v: RepClass) -> MonodromyFactorization:
    _check_rep(g, v)
    order = lcm(*(character_order(v.group, chi) for chi, _ in v.entries))
    return MonodromyFactorization(g.fundamental_group, v, order)
