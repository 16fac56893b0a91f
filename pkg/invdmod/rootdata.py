"""Cartan data, Smith normal form and the centers of simply connected groups.

A semisimple group is specified at root-datum level as ``G = G^sc / Gamma``: a list of
simple Cartan types (the simply connected cover) together with a subgroup ``Gamma`` of
the center ``Z(G^sc)``.  The center is computed as the cokernel of the Cartan matrix,
read off from its Smith normal form, so no classical table is consulted.

Cartan matrices use Bourbaki node ordering with ``a_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)``.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Matrix, Rational, ZZ, diag
from sympy.matrices.normalforms import smith_normal_decomp

from .codec import expect_list, expect_object, parse_int, require
from .errors import DimensionMismatch, InvalidRank, MalformedInput, PreconditionFailed

logger = logging.getLogger(__name__)

SERIES = ("A", "B", "C", "D", "E", "F", "G")

Element = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class CartanType:
    """A simple Cartan type such as A_2 or E_8."""

    series: str
    rank: int

    def __post_init__(self) -> None:
        if self.series not in SERIES:
            raise InvalidRank(f"Unknown series {self.series!r}")
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise InvalidRank(f"Rank must be an integer, got {self.rank!r}")
        allowed = {
            "A": self.rank >= 1,
            "B": self.rank >= 2,
            "C": self.rank >= 2,
            "D": self.rank >= 3,
            "E": self.rank in (6, 7, 8),
            "F": self.rank == 4,
            "G": self.rank == 2,
        }[self.series]
        if not allowed:
            raise InvalidRank(f"{self.series}_{self.rank} is not a valid Cartan type")

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "CartanType":
        obj = expect_object(payload, path)
        series = require(obj, "series", path)
        if not isinstance(series, str):
            raise MalformedInput("series must be a string", f"{path}.series")
        rank = parse_int(require(obj, "rank", path), f"{path}.rank")
        return cls(series=series.upper(), rank=rank)

    def to_json(self) -> Dict[str, object]:
        return {"series": self.series, "rank": self.rank}


_TYPE_RE = re.compile(r"^\s*([A-Ga-g])_?(\d+)\s*$")


def parse_cartan_type(text: str) -> CartanType:
    """Parse ``A2``, ``A_2`` or ``e8``."""
    match = _TYPE_RE.match(text)
    if not match:
        raise MalformedInput(f"Cannot parse Cartan type {text!r}")
    return CartanType(match.group(1).upper(), int(match.group(2)))


@dataclass(frozen=True)
class CartanMatrix:
    """Square integer Cartan matrix."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != size:
                raise ValueError("Cartan matrix must be square")
            for j, value in enumerate(row):
                if i == j and value != 2:
                    raise ValueError(f"Diagonal entry ({i},{j}) must be 2")
                if i != j:
                    if value not in (0, -1, -2, -3):
                        raise ValueError(f"Off-diagonal entry ({i},{j}) = {value} out of range")
                    if (value == 0) != (self.entries[j][i] == 0):
                        raise ValueError(f"Zero pattern not symmetric at ({i},{j})")
        if size and self.to_matrix().det() <= 0:
            raise ValueError("Cartan matrix must have positive determinant")

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_matrix(self) -> Matrix:
        return Matrix(self.entries)

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


def _dynkin_edges(t: CartanType) -> List[Tuple[int, int, int]]:
    """Edges (i, j, a_ij) of the Dynkin diagram, 0-based Bourbaki numbering."""
    r = t.rank
    chain = [(i, i + 1, -1) for i in range(r - 1)]
    if t.series == "A":
        return chain + [(i + 1, i, -1) for i in range(r - 1)]
    if t.series in ("B", "C"):
        edges = [(i, i + 1, -1) for i in range(r - 2)] + [(i + 1, i, -1) for i in range(r - 2)]
        long_short = (r - 1, r - 2, -2) if t.series == "B" else (r - 2, r - 1, -2)
        other = (long_short[1], long_short[0], -1)
        return edges + [long_short, other]
    if t.series == "D":
        pairs = [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
        return [(i, j, -1) for i, j in pairs] + [(j, i, -1) for i, j in pairs]
    if t.series == "E":
        pairs = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, r - 1)]
        return [(i, j, -1) for i, j in pairs] + [(j, i, -1) for i, j in pairs]
    if t.series == "F":
        pairs = [(0, 1, -1), (1, 0, -1), (1, 2, -1), (2, 1, -2), (2, 3, -1), (3, 2, -1)]
        return pairs
    # G2: alpha_1 short, alpha_2 long.
    return [(0, 1, -3), (1, 0, -1)]


@lru_cache(maxsize=None)
def cartan_matrix(t: CartanType) -> CartanMatrix:
    r = t.rank
    rows = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j, value in _dynkin_edges(t):
        rows[i][j] = value
    return CartanMatrix(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class SmithDecomposition:
    """``left * matrix * right == diagonal`` with unimodular transforms."""

    diagonal: Matrix
    left: Matrix
    right: Matrix

    @property
    def factors(self) -> Tuple[int, ...]:
        size = min(self.diagonal.shape)
        return tuple(int(self.diagonal[i, i]) for i in range(size))


def smith_normal_form(m: Sequence[Sequence[int]] | Matrix) -> SmithDecomposition:
    matrix = Matrix(m)
    if 0 in matrix.shape:
        return SmithDecomposition(
            diagonal=matrix, left=Matrix.eye(matrix.rows), right=Matrix.eye(matrix.cols)
        )
    diagonal, left, right = smith_normal_decomp(matrix, domain=ZZ)
    if left * matrix * right != diagonal:
        raise RuntimeError("Smith decomposition failed its postcondition")
    decomposition = SmithDecomposition(diagonal=diagonal, left=left, right=right)
    logger.debug("SNF of %sx%s matrix: %s", matrix.rows, matrix.cols, decomposition.factors)
    return decomposition


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 x ... x Z/d_k`` with ``d_1 | d_2 | ... | d_k`` and each ``d_i >= 2``."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise ValueError(f"Invariant factors must be >= 2, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"Invariant factors must form a divisibility chain, got {factors}")

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self) -> List[Element]:
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def reduce(self, coordinates: Sequence[int]) -> Element:
        return tuple(int(a) % d for a, d in zip(coordinates, self.invariant_factors))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "FiniteAbelianGroup":
        obj = expect_object(payload, path)
        factors = expect_list(require(obj, "invariant_factors", path), f"{path}.invariant_factors")
        parsed = tuple(
            parse_int(d, f"{path}.invariant_factors[{i}]", minimum=2) for i, d in enumerate(factors)
        )
        try:
            return cls(parsed)
        except ValueError as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        return {"invariant_factors": list(self.invariant_factors)}


TRIVIAL_GROUP = FiniteAbelianGroup(())


@dataclass(frozen=True)
class SubgroupSpec:
    """Generators of a subgroup, in the ambient group's coordinates."""

    generators: Tuple[Element, ...] = ()

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "SubgroupSpec":
        obj = expect_object(payload, path)
        gens = expect_list(require(obj, "generators", path), f"{path}.generators")
        parsed = []
        for i, gen in enumerate(gens):
            gen_path = f"{path}.generators[{i}]"
            coords = expect_list(gen, gen_path)
            parsed.append(tuple(parse_int(a, f"{gen_path}[{j}]") for j, a in enumerate(coords)))
        return cls(tuple(parsed))

    def to_json(self) -> Dict[str, object]:
        return {"generators": [list(g) for g in self.generators]}


@dataclass(frozen=True, eq=False)
class EmbeddedSubgroup:
    """A subgroup in invariant-factor form together with its embedding.

    ``generators[i]`` is the image in ``ambient`` of the standard generator of the
    i-th cyclic factor of ``group``.  Equality compares the underlying element sets.
    """

    ambient: FiniteAbelianGroup
    group: FiniteAbelianGroup
    generators: Tuple[Element, ...]

    def image(self, coordinates: Sequence[int]) -> Element:
        total = [0] * len(self.ambient.invariant_factors)
        for c, gen in zip(coordinates, self.generators):
            total = [a + c * b for a, b in zip(total, gen)]
        return self.ambient.reduce(total)

    @property
    def elements(self) -> FrozenSet[Element]:
        return frozenset(self.image(x) for x in self.group.elements())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddedSubgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.ambient, self.elements))

    def to_json(self) -> Dict[str, object]:
        return {
            "invariant_factors": list(self.group.invariant_factors),
            "generators": [list(g) for g in self.generators],
        }


def subgroup(ambient: FiniteAbelianGroup, spec: SubgroupSpec) -> EmbeddedSubgroup:
    """Subgroup generated by ``spec.generators``, in invariant-factor form.

    With ``G`` the generator columns and ``D = diag(d)``, the subgroup is ``L / D Z^k``
    where ``L`` is the column lattice of ``[G | D]``.  A basis ``B`` of ``L`` comes from
    the Smith form of ``[G | D]``; then ``L / D Z^k = Z^k / M Z^k`` with ``M = B^-1 D``.
    """
    factors = ambient.invariant_factors
    k = len(factors)
    for gen in spec.generators:
        if len(gen) != k:
            raise PreconditionFailed(
                f"Generator {gen} has {len(gen)} coordinates, ambient has {k}"
            )
        if any(not 0 <= a < d for a, d in zip(gen, factors)):
            raise PreconditionFailed(f"Generator {gen} is not reduced modulo {factors}")
    if k == 0:
        return EmbeddedSubgroup(ambient, TRIVIAL_GROUP, ())

    relations = diag(*factors)
    columns = Matrix.zeros(k, 0)
    for gen in spec.generators:
        columns = columns.row_join(Matrix(gen))
    outer = smith_normal_form(columns.row_join(relations))
    steps = outer.factors
    basis = outer.left.inv() * diag(*steps)
    scaled = outer.left * relations
    quotient = Matrix(k, k, lambda i, j: scaled[i, j] // steps[i])
    inner = smith_normal_form(quotient)
    to_ambient = basis * inner.left.inv()

    invariant = []
    generators = []
    for i, d in enumerate(inner.factors):
        if d == 1:
            continue
        invariant.append(d)
        generators.append(ambient.reduce(to_ambient[:, i]))
    embedded = EmbeddedSubgroup(ambient, FiniteAbelianGroup(tuple(invariant)), tuple(generators))
    logger.debug("subgroup of %s generated by %s: %s", factors, spec.generators, invariant)
    return embedded


def full_subgroup(ambient: FiniteAbelianGroup) -> EmbeddedSubgroup:
    gens = []
    for i in range(len(ambient.invariant_factors)):
        gens.append(tuple(1 if j == i else 0 for j in range(len(ambient.invariant_factors))))
    return subgroup(ambient, SubgroupSpec(tuple(gens)))


def trivial_subgroup(ambient: FiniteAbelianGroup) -> EmbeddedSubgroup:
    return EmbeddedSubgroup(ambient, TRIVIAL_GROUP, ())


def _block_cartan(factors: Sequence[CartanType]) -> Matrix:
    blocks = [cartan_matrix(t).to_matrix() for t in factors]
    if not blocks:
        return Matrix.zeros(0, 0)
    return diag(*blocks)


@dataclass(frozen=True)
class CenterPresentation:
    """``Z(G^sc) = P^vee / Q^vee`` in Smith coordinates of the transposed Cartan matrix.

    ``coweight_rows`` sends fundamental-coweight coordinates to center coordinates and
    ``weight_rows`` sends fundamental-weight coordinates to central-character residues.
    With ``U * C^T * V = D`` these are the rows of ``U`` and of ``V^T`` whose invariant
    factor is not 1, so ``<lambda, mu>`` mod ZZ equals ``sum(x_i * y_i / d_i)``.
    """

    group: FiniteAbelianGroup
    coweight_rows: Matrix
    weight_rows: Matrix

    @property
    def rank(self) -> int:
        return self.coweight_rows.cols


@lru_cache(maxsize=None)
def _center(factors: Tuple[CartanType, ...]) -> CenterPresentation:
    block = _block_cartan(factors)
    if block.rows == 0:
        return CenterPresentation(TRIVIAL_GROUP, Matrix.zeros(0, 0), Matrix.zeros(0, 0))
    snf = smith_normal_form(block.T)
    right_t = snf.right.T
    kept, u_rows, v_rows = [], [], []
    for i, d in enumerate(snf.factors):
        if abs(d) == 1:
            continue
        sign = 1 if d > 0 else -1
        kept.append(abs(d))
        u_rows.append(snf.left[i, :] * sign)
        v_rows.append(right_t[i, :])
    cols = block.cols
    return CenterPresentation(
        FiniteAbelianGroup(tuple(kept)),
        Matrix.vstack(*u_rows) if u_rows else Matrix.zeros(0, cols),
        Matrix.vstack(*v_rows) if v_rows else Matrix.zeros(0, cols),
    )


def center_presentation(factors: Iterable[CartanType]) -> CenterPresentation:
    return _center(tuple(factors))


def center_of_sc(factors: Iterable[CartanType]) -> FiniteAbelianGroup:
    """``Z(G^sc)`` as the cokernel of the transposed block-diagonal Cartan matrix.

    The coordinates are the Smith coordinates of the whole block matrix, so for several
    factors the cyclic parts are merged (``A2 x A1`` gives ``Z/6``).  Use
    ``coweight_class`` to locate a given central element in them.
    """
    return _center(tuple(factors)).group


def _apply(rows: Matrix, group: FiniteAbelianGroup, vector: Sequence[int], what: str) -> Element:
    if len(vector) != rows.cols:
        raise DimensionMismatch(f"{what} has {len(vector)} coordinates, the rank is {rows.cols}")
    if rows.rows == 0:
        return ()
    return group.reduce(rows * Matrix([int(a) for a in vector]))


def coweight_class(factors: Iterable[CartanType], coweight: Sequence[int]) -> Element:
    """Center element ``exp(2 pi i mu)`` for ``mu`` in fundamental-coweight coordinates."""
    presentation = _center(tuple(factors))
    return _apply(presentation.coweight_rows, presentation.group, coweight, "coweight")


def weight_class(factors: Iterable[CartanType], weight: Sequence[int]) -> Element:
    """Residues of the central character of ``weight`` (fundamental-weight coordinates)."""
    presentation = _center(tuple(factors))
    return _apply(presentation.weight_rows, presentation.group, weight, "weight")


def center_pairing(
    factors: Iterable[CartanType], weight: Sequence[int], coweight: Sequence[int]
) -> Rational:
    """``<weight, coweight>`` mod ZZ, in ``[0, 1)``."""
    factors = tuple(factors)
    group = _center(factors).group
    x = weight_class(factors, weight)
    y = coweight_class(factors, coweight)
    total = sum((Rational(a * b, d) for a, b, d in zip(x, y, group.invariant_factors)), Rational(0))
    return total - (total.p // total.q)


@dataclass(frozen=True)
class SemisimpleGroup:
    """``G = G^sc / Gamma`` for a product of simple simply connected factors."""

    factors: Tuple[CartanType, ...]
    gamma: EmbeddedSubgroup = field(compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        center = center_of_sc(self.factors)
        if self.gamma.ambient != center:
            raise PreconditionFailed(
                f"Gamma lives in {self.gamma.ambient.invariant_factors}, "
                f"but the center is {center.invariant_factors}"
            )

    @property
    def fundamental_group(self) -> FiniteAbelianGroup:
        return self.gamma.group

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.factors)

    @property
    def label(self) -> str:
        name = " x ".join(t.label for t in self.factors) or "1"
        if self.gamma.group.is_trivial:
            return name
        return f"({name})/{self.gamma.group.invariant_factors}"

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "SemisimpleGroup":
        obj = expect_object(payload, path)
        raw_factors = expect_list(require(obj, "factors", path), f"{path}.factors")
        factors = []
        for i, item in enumerate(raw_factors):
            try:
                factors.append(CartanType.from_json(item, f"{path}.factors[{i}]"))
            except InvalidRank as exc:
                raise InvalidRank(f"{exc} (at {path}.factors[{i}])") from exc
        center = center_of_sc(factors)
        gamma_payload = obj.get("gamma", "trivial")
        if gamma_payload == "trivial":
            gamma = trivial_subgroup(center)
        elif gamma_payload == "center":
            gamma = full_subgroup(center)
        else:
            spec = SubgroupSpec.from_json(gamma_payload, f"{path}.gamma")
            try:
                gamma = subgroup(center, spec)
            except PreconditionFailed as exc:
                raise MalformedInput(str(exc), f"{path}.gamma") from exc
        return cls(tuple(factors), gamma)

    def to_json(self) -> Dict[str, object]:
        return {
            "factors": [t.to_json() for t in self.factors],
            "gamma": self.gamma.to_json(),
        }


def simply_connected(factors: Iterable[CartanType]) -> SemisimpleGroup:
    factors = tuple(factors)
    return SemisimpleGroup(factors, trivial_subgroup(center_of_sc(factors)))


def adjoint(factors: Iterable[CartanType]) -> SemisimpleGroup:
    factors = tuple(factors)
    return SemisimpleGroup(factors, full_subgroup(center_of_sc(factors)))


def special_linear_quotient(r: int, d: int = 1) -> SemisimpleGroup:
    """``SL_r / mu_d``; ``d = 1`` is SL_r and ``d = r`` is PGL_r."""
    if r < 2:
        raise InvalidRank(f"SL_r needs r >= 2, got {r}")
    if d < 1 or r % d:
        raise PreconditionFailed(f"d={d} must divide r={r}")
    factors = (CartanType("A", r - 1),)
    center = center_of_sc(factors)
    if d == 1:
        return SemisimpleGroup(factors, trivial_subgroup(center))
    return SemisimpleGroup(factors, subgroup(center, SubgroupSpec(((r // d,),))))
