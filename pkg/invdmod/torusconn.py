"""Constant invariant connections ``d + sum_i A_i dt_i/t_i`` on tori ``G_m^l``.

Invariant 1-forms on a torus have constant coefficients, so an invariant connection is a
tuple of commuting matrices.  Its isomorphism class is the conjugacy class of the
monodromy ``exp(2 pi i A_i)``, encoded exactly: eigenvalues of ``A`` reduced mod ZZ label
the monodromy eigenvalues, and Jordan blocks of ``A`` map to Jordan blocks of the
monodromy of the same size.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Rational
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import partitions

from . import linalg
from .codec import (
    LAURENT_DOMAIN,
    T,
    expect_list,
    expect_object,
    format_rational,
    is_laurent,
    laurent_from_json,
    laurent_to_json,
    matrix_from_json,
    matrix_to_json,
    parse_int,
    parse_rational,
    require,
)
from .errors import (
    DimensionMismatch,
    MalformedInput,
    NonCommutingData,
    NonSemisimpleTuple,
    NonUnitDeterminant,
    PreconditionFailed,
)

logger = logging.getLogger(__name__)

RationalMatrix = DomainMatrix


@dataclass(frozen=True, eq=False)
class ConstantTorusConnection:
    """``matrices[i]`` is the coefficient of ``dt_i / t_i``."""

    torus_dim: int
    rank: int
    matrices: Tuple[RationalMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.torus_dim < 1 or self.rank < 1:
            raise DimensionMismatch("torus dimension and rank must be positive")
        if len(self.matrices) != self.torus_dim:
            raise DimensionMismatch(
                f"expected {self.torus_dim} matrices, got {len(self.matrices)}"
            )
        for a in self.matrices:
            linalg.check_square(a, self.rank)

    @classmethod
    def single(cls, matrix: RationalMatrix) -> "ConstantTorusConnection":
        return cls(1, matrix.shape[0], (matrix,))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstantTorusConnection):
            return NotImplemented
        return (self.torus_dim, self.rank) == (other.torus_dim, other.rank) and all(
            linalg.equal(a, b) for a, b in zip(self.matrices, other.matrices)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "ConstantTorusConnection":
        obj = expect_object(payload, path)
        l = parse_int(require(obj, "l", path), f"{path}.l", minimum=1)
        n = parse_int(require(obj, "n", path), f"{path}.n", minimum=1)
        raw = expect_list(require(obj, "matrices", path), f"{path}.matrices")
        matrices = tuple(matrix_from_json(m, f"{path}.matrices[{i}]") for i, m in enumerate(raw))
        try:
            return cls(l, n, matrices)
        except DimensionMismatch as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        return {
            "l": self.torus_dim,
            "n": self.rank,
            "matrices": [matrix_to_json(a) for a in self.matrices],
        }


def trivial_connection(torus_dim: int, rank: int) -> ConstantTorusConnection:
    return ConstantTorusConnection(
        torus_dim, rank, tuple(linalg.zero_matrix(rank) for _ in range(torus_dim))
    )


@dataclass(frozen=True)
class FlatnessReport:
    ok: bool
    pair: Optional[Tuple[int, int]] = None
    commutator: Optional[List[List[str]]] = None

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"ok": self.ok}
        if self.pair is not None:
            data["pair"] = list(self.pair)
            data["commutator"] = self.commutator
        return data


def check_flat(c: ConstantTorusConnection) -> FlatnessReport:
    """Flatness on an abelian group is pairwise commutation of the coefficients."""
    for i, j in itertools.combinations(range(c.torus_dim), 2):
        bracket = linalg.commutator(c.matrices[i], c.matrices[j])
        if not linalg.is_zero(bracket):
            return FlatnessReport(ok=False, pair=(i, j), commutator=matrix_to_json(bracket))
    return FlatnessReport(ok=True)


Blocks = Tuple[Tuple[Rational, Tuple[int, ...]], ...]
Joint = Tuple[Tuple[Tuple[Rational, ...], int], ...]


@dataclass(frozen=True)
class MonodromyClass:
    """Exact conjugacy-class data of the monodromy.

    For ``torus_dim == 1`` ``blocks`` maps each label in ``[0, 1)`` to its Jordan block
    sizes (descending).  For ``torus_dim > 1`` ``joint`` lists joint eigenvalue labels
    with multiplicities (semisimple tuples only).
    """

    torus_dim: int
    rank: int
    blocks: Blocks = ()
    joint: Joint = ()

    def __post_init__(self) -> None:
        if self.torus_dim == 1:
            merged: Dict[Rational, List[int]] = defaultdict(list)
            for label, sizes in self.blocks:
                merged[linalg.mod_one(label)].extend(int(s) for s in sizes)
            blocks = tuple(
                (label, tuple(sorted(sizes, reverse=True))) for label, sizes in sorted(merged.items())
            )
            object.__setattr__(self, "blocks", blocks)
            total = sum(sum(sizes) for _, sizes in blocks)
            if self.joint:
                raise ValueError("a one-dimensional torus class has no joint labels")
        else:
            counts: Counter = Counter()
            for labels, mult in self.joint:
                if len(labels) != self.torus_dim:
                    raise DimensionMismatch(f"joint label {labels} has the wrong length")
                counts[tuple(linalg.mod_one(x) for x in labels)] += int(mult)
            object.__setattr__(self, "joint", tuple(sorted(counts.items())))
            total = sum(counts.values())
            if self.blocks:
                raise ValueError("a higher-dimensional torus class has no Jordan data")
        if total != self.rank:
            raise DimensionMismatch(f"class data has total size {total}, rank is {self.rank}")

    @property
    def is_trivial(self) -> bool:
        if self.torus_dim == 1:
            return all(label == 0 and set(sizes) == {1} for label, sizes in self.blocks)
        return all(all(x == 0 for x in labels) for labels, _ in self.joint)

    @property
    def is_semisimple(self) -> bool:
        if self.torus_dim == 1:
            return all(set(sizes) == {1} for _, sizes in self.blocks)
        return True

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "MonodromyClass":
        obj = expect_object(payload, path)
        l = parse_int(require(obj, "torus_dim", path), f"{path}.torus_dim", minimum=1)
        n = parse_int(require(obj, "rank", path), f"{path}.rank", minimum=1)
        try:
            if l == 1:
                raw = expect_list(require(obj, "blocks", path), f"{path}.blocks")
                blocks = []
                for i, item in enumerate(raw):
                    item_path = f"{path}.blocks[{i}]"
                    item = expect_object(item, item_path)
                    label = parse_rational(require(item, "label", item_path), f"{item_path}.label")
                    sizes = expect_list(require(item, "sizes", item_path), f"{item_path}.sizes")
                    blocks.append(
                        (label, tuple(parse_int(s, f"{item_path}.sizes[{j}]", minimum=1)
                                      for j, s in enumerate(sizes)))
                    )
                return cls(l, n, blocks=tuple(blocks))
            raw = expect_list(require(obj, "joint", path), f"{path}.joint")
            joint = []
            for i, item in enumerate(raw):
                item_path = f"{path}.joint[{i}]"
                item = expect_object(item, item_path)
                labels = expect_list(require(item, "labels", item_path), f"{item_path}.labels")
                mult = parse_int(require(item, "mult", item_path), f"{item_path}.mult", minimum=1)
                joint.append(
                    (tuple(parse_rational(x, f"{item_path}.labels[{j}]") for j, x in enumerate(labels)), mult)
                )
            return cls(l, n, joint=tuple(joint))
        except (DimensionMismatch, ValueError) as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"torus_dim": self.torus_dim, "rank": self.rank}
        if self.torus_dim == 1:
            data["blocks"] = [
                {"label": format_rational(label), "sizes": list(sizes)} for label, sizes in self.blocks
            ]
        else:
            data["joint"] = [
                {"labels": [format_rational(x) for x in labels], "mult": mult}
                for labels, mult in self.joint
            ]
        return data


def _require_flat(c: ConstantTorusConnection) -> None:
    report = check_flat(c)
    if not report.ok:
        raise NonCommutingData(f"connection is not flat: A_{report.pair[0]} and A_{report.pair[1]} do not commute")


def monodromy_class(c: ConstantTorusConnection) -> MonodromyClass:
    _require_flat(c)
    if c.torus_dim == 1:
        a = c.matrices[0]
        blocks = tuple(
            (lam, tuple(linalg.jordan_block_sizes(a, lam))) for lam in linalg.rational_spectrum(a)
        )
        return MonodromyClass(1, c.rank, blocks=blocks)

    spectra = []
    for i, a in enumerate(c.matrices):
        spectrum = linalg.rational_spectrum(a)
        for lam in spectrum:
            if linalg.jordan_block_sizes(a, lam)[0] > 1:
                raise NonSemisimpleTuple(f"A_{i} is not diagonalizable at eigenvalue {lam}")
        spectra.append(spectrum)
    # Commuting diagonalizable matrices are simultaneously diagonalizable; the joint
    # eigenspace of (lam_1..lam_l) has dimension n - rank of the stacked shifts.
    joint = []
    for labels in itertools.product(*spectra):
        stacked = DomainMatrix.vstack(
            *(a - linalg.scalar(c.rank, lam) for a, lam in zip(c.matrices, labels))
        )
        dimension = c.rank - stacked.rank()
        if dimension:
            joint.append((labels, dimension))
    logger.debug("joint spectrum of %s-tuple: %s", c.torus_dim, joint)
    return MonodromyClass(c.torus_dim, c.rank, joint=tuple(joint))


def equivalent(c1: ConstantTorusConnection, c2: ConstantTorusConnection) -> Optional[bool]:
    """True/False when decidable, ``None`` for undecided non-semisimple tuples (l > 1)."""
    if (c1.torus_dim, c1.rank) != (c2.torus_dim, c2.rank):
        raise DimensionMismatch(
            f"cannot compare (l={c1.torus_dim}, n={c1.rank}) with (l={c2.torus_dim}, n={c2.rank})"
        )
    try:
        first = monodromy_class(c1)
        second = monodromy_class(c2)
    except NonSemisimpleTuple as exc:
        logger.info("equivalence undecided: %s", exc)
        return None
    return first == second


@dataclass(frozen=True, eq=False)
class LaurentMatrix:
    """Square matrix of Laurent polynomials in ``t`` (entries of ``QQ(t)`` with
    monomial denominators)."""

    entries: DomainMatrix

    def __post_init__(self) -> None:
        rows, cols = self.entries.shape
        if rows != cols or rows < 1:
            raise DimensionMismatch("Laurent matrix must be square and non-empty")
        if self.entries.domain != LAURENT_DOMAIN:
            object.__setattr__(self, "entries", self.entries.convert_to(LAURENT_DOMAIN))
        for row in self.entries.to_list():
            for value in row:
                if not is_laurent(value):
                    raise ValueError(f"{value} is not a Laurent polynomial")

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "LaurentMatrix":
        return cls(linalg.dense(rows, LAURENT_DOMAIN))

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "LaurentMatrix":
        rows = expect_list(payload, path)
        parsed = []
        for i, row in enumerate(rows):
            entries = expect_list(row, f"{path}[{i}]")
            if len(entries) != len(rows):
                raise MalformedInput("Laurent matrix must be square", f"{path}[{i}]")
            parsed.append([laurent_from_json(e, f"{path}[{i}][{j}]") for j, e in enumerate(entries)])
        if not parsed:
            raise MalformedInput("Laurent matrix must be non-empty", path)
        return cls.from_rows(parsed)

    def to_json(self) -> List[List[dict]]:
        return [[laurent_to_json(value) for value in row] for row in self.entries.to_list()]


def _euler_derivative(x: DomainMatrix) -> DomainMatrix:
    """``t * dX/dt`` entrywise."""
    return linalg.dense(
        [[value.diff(T) * T for value in row] for row in x.to_list()], LAURENT_DOMAIN
    )


@dataclass(frozen=True)
class GaugeReport:
    ok: bool
    entry: Optional[Tuple[int, int]] = None
    lhs: Optional[dict] = None
    rhs: Optional[dict] = None

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"ok": self.ok}
        if self.entry is not None:
            data.update({"entry": list(self.entry), "lhs": self.lhs, "rhs": self.rhs})
        return data


def _single_matrix(c: ConstantTorusConnection, name: str) -> DomainMatrix:
    if c.torus_dim != 1:
        raise PreconditionFailed(f"{name} must live on G_m (l=1), got l={c.torus_dim}")
    return c.matrices[0].convert_to(LAURENT_DOMAIN)


def verify_gauge(
    x: LaurentMatrix, alpha: ConstantTorusConnection, beta: ConstantTorusConnection
) -> GaugeReport:
    """Check ``t dX/dt = X A_alpha - A_beta X`` as an exact Laurent identity."""
    if not (x.size == alpha.rank == beta.rank):
        raise DimensionMismatch(
            f"gauge is {x.size}x{x.size}, connections have ranks {alpha.rank} and {beta.rank}"
        )
    a = _single_matrix(alpha, "alpha")
    b = _single_matrix(beta, "beta")
    lhs = _euler_derivative(x.entries).to_list()
    rhs = (x.entries * a - b * x.entries).to_list()
    for i in range(x.size):
        for j in range(x.size):
            if lhs[i][j] != rhs[i][j]:
                return GaugeReport(
                    ok=False,
                    entry=(i, j),
                    lhs=laurent_to_json(lhs[i][j]),
                    rhs=laurent_to_json(rhs[i][j]),
                )
    return GaugeReport(ok=True)


@dataclass(frozen=True, eq=False)
class GaugeResult:
    """Coefficient of ``dt/t`` after the gauge, and whether it is constant."""

    coefficient: LaurentMatrix
    is_constant: bool

    def as_connection(self) -> ConstantTorusConnection:
        if not self.is_constant:
            raise PreconditionFailed("transformed connection is not constant")
        rows = [[LAURENT_DOMAIN.to_sympy(value) for value in row]
                for row in self.coefficient.entries.to_list()]
        return ConstantTorusConnection.single(linalg.dense(rows))

    def to_json(self) -> Dict[str, object]:
        return {"coefficient": self.coefficient.to_json(), "constant": self.is_constant}


def apply_gauge(x: LaurentMatrix, alpha: ConstantTorusConnection) -> GaugeResult:
    """``X^-1 t dX/dt + X^-1 A X``: the transformed coefficient of ``dt/t``."""
    if x.size != alpha.rank:
        raise DimensionMismatch(f"gauge is {x.size}x{x.size}, connection has rank {alpha.rank}")
    a = _single_matrix(alpha, "alpha")
    determinant = x.entries.det()
    if not determinant or not (determinant.numer.is_term and determinant.denom.is_term):
        raise NonUnitDeterminant(f"det X = {determinant} is not of the form c*t^k")
    inverse = x.entries.inv()
    transformed = inverse * _euler_derivative(x.entries) + inverse * a * x.entries
    constant = all(
        value.numer.is_ground and value.denom.is_ground
        for row in transformed.to_list()
        for value in row
    )
    return GaugeResult(LaurentMatrix(transformed), constant)


def _clebsch_gordan(a: int, b: int) -> List[int]:
    """Jordan types of ``J_a (x) J_b`` for unipotent blocks."""
    return [a + b + 1 - 2 * k for k in range(1, min(a, b) + 1)]


def tensor_monodromy(c1: MonodromyClass, c2: MonodromyClass) -> MonodromyClass:
    if c1.torus_dim != c2.torus_dim:
        raise DimensionMismatch("classes live on tori of different dimension")
    rank = c1.rank * c2.rank
    if c1.torus_dim == 1:
        blocks = []
        for label1, sizes1 in c1.blocks:
            for label2, sizes2 in c2.blocks:
                sizes = [s for a in sizes1 for b in sizes2 for s in _clebsch_gordan(a, b)]
                blocks.append((label1 + label2, tuple(sizes)))
        return MonodromyClass(1, rank, blocks=tuple(blocks))
    joint = [
        (tuple(x + y for x, y in zip(labels1, labels2)), m1 * m2)
        for labels1, m1 in c1.joint
        for labels2, m2 in c2.joint
    ]
    return MonodromyClass(c1.torus_dim, rank, joint=tuple(joint))


def dual_monodromy(c: MonodromyClass) -> MonodromyClass:
    if c.torus_dim == 1:
        return MonodromyClass(1, c.rank, blocks=tuple((-label, sizes) for label, sizes in c.blocks))
    return MonodromyClass(
        c.torus_dim, c.rank, joint=tuple((tuple(-x for x in labels), m) for labels, m in c.joint)
    )


def trivial_monodromy(torus_dim: int, rank: int) -> MonodromyClass:
    return monodromy_class(trivial_connection(torus_dim, rank))


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    for cuts in itertools.combinations_with_replacement(range(total + 1), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _partitions_of(n: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    result = []
    for part in partitions(n):
        result.append(tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True)))
    return result


def enumerate_monodromy_classes(n: int, labels: Iterable[Rational]) -> List[MonodromyClass]:
    """All rank-``n`` classes on ``G_m`` whose labels lie in ``labels`` (taken mod ZZ)."""
    if n < 1:
        raise PreconditionFailed(f"rank must be >= 1, got {n}")
    label_set = sorted({linalg.mod_one(Rational(x)) for x in labels})
    if not label_set:
        return []
    classes = []
    for sizes_per_label in _compositions(n, len(label_set)):
        choices = [_partitions_of(size) for size in sizes_per_label]
        for jordan in itertools.product(*choices):
            blocks = tuple(
                (label, part) for label, part in zip(label_set, jordan) if part
            )
            classes.append(MonodromyClass(1, n, blocks=blocks))
    return sorted(set(classes), key=lambda c: str(c.to_json()))
