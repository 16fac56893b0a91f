"""Symbolic checks of the identities behind invariant connections.

* flat invariant connections are Lie algebra homomorphisms ``rho: g -> gl_n``;
* the Maurer-Cartan form ``theta = g^-1 dg`` on GL_r satisfies ``d theta + theta ^ theta = 0``;
* ``d(det)/det = tr(theta)``.

Differential forms live over ``QQ[x_ij][1/det]``: every coefficient is a numerator in the
polynomial ring together with a power of ``det``.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from . import linalg
from .codec import (
    expect_list,
    expect_object,
    format_rational,
    matrix_from_json,
    matrix_to_json,
    parse_int,
    parse_rational,
    require,
)
from .config import get_settings
from .errors import (
    DegreeLimitExceeded,
    DimensionMismatch,
    MalformedInput,
    PreconditionFailed,
    UnsupportedSize,
)

logger = logging.getLogger(__name__)

MAX_MATRIX_SIZE = 4
MAX_ABELIAN_DIM = 8
SYMBOLIC_SIZES = (1, 2, 3)


Constants = Tuple[Tuple[Tuple[Rational, ...], ...], ...]


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: Optional[Tuple[int, int, int]] = None

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"ok": self.ok}
        if self.triple is not None:
            data["triple"] = list(self.triple)
        return data


def _bracket(constants: Constants, u: Sequence[Rational], v: Sequence[Rational]) -> List[Rational]:
    dim = len(constants)
    out = [Rational(0)] * dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            for k, c in enumerate(constants[i][j]):
                if c:
                    out[k] += ui * vj * c
    return out


def _unit(dim: int, i: int) -> List[Rational]:
    return [Rational(int(k == i)) for k in range(dim)]


def _jacobi(constants: Constants) -> JacobiReport:
    dim = len(constants)
    for i, j, k in itertools.combinations(range(dim), 3):
        x, y, z = _unit(dim, i), _unit(dim, j), _unit(dim, k)
        total = [
            a + b + c
            for a, b, c in zip(
                _bracket(constants, x, _bracket(constants, y, z)),
                _bracket(constants, y, _bracket(constants, z, x)),
                _bracket(constants, z, _bracket(constants, x, y)),
            )
        ]
        if any(total):
            return JacobiReport(ok=False, triple=(i, j, k))
    return JacobiReport(ok=True)


@dataclass(frozen=True)
class LieAlgebraPresentation:
    """Structure constants ``[x_i, x_j] = sum_k constants[i][j][k] x_k``."""

    dim: int
    constants: Constants
    name: str = ""
    basis_names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        constants = tuple(
            tuple(tuple(Rational(c) for c in row) for row in plane) for plane in self.constants
        )
        object.__setattr__(self, "constants", constants)
        if self.dim < 1:
            raise DimensionMismatch("a Lie algebra presentation needs dim >= 1")
        if len(constants) != self.dim or any(
            len(plane) != self.dim or any(len(row) != self.dim for row in plane)
            for plane in constants
        ):
            raise DimensionMismatch(f"structure constants must have shape {self.dim}^3")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"x{i}" for i in range(self.dim)))
        elif len(self.basis_names) != self.dim:
            raise DimensionMismatch("one basis name per basis vector")
        for i in range(self.dim):
            for j in range(self.dim):
                if any(a + b for a, b in zip(constants[i][j], constants[j][i])):
                    raise PreconditionFailed(f"bracket is not antisymmetric at ({i}, {j})")
        report = _jacobi(constants)
        if not report.ok:
            raise PreconditionFailed(f"Jacobi identity fails on basis triple {report.triple}")

    def bracket(self, u: Sequence[Any], v: Sequence[Any]) -> List[Rational]:
        return _bracket(self.constants, [Rational(a) for a in u], [Rational(b) for b in v])

    def bracket_basis(self, i: int, j: int) -> Tuple[Rational, ...]:
        return self.constants[i][j]

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "LieAlgebraPresentation":
        obj = expect_object(payload, path)
        dim = parse_int(require(obj, "dim", path), f"{path}.dim", minimum=1)
        constants = [[[Rational(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for n, item in enumerate(expect_list(obj.get("brackets", []), f"{path}.brackets")):
            item_path = f"{path}.brackets[{n}]"
            item = expect_object(item, item_path)
            i = parse_int(require(item, "i", item_path), f"{item_path}.i", minimum=0)
            j = parse_int(require(item, "j", item_path), f"{item_path}.j", minimum=0)
            coefficients = expect_list(require(item, "coefficients", item_path), f"{item_path}.coefficients")
            if i >= dim or j >= dim or len(coefficients) != dim:
                raise MalformedInput("bracket index or coefficient length out of range", item_path)
            values = [parse_rational(c, f"{item_path}.coefficients[{k}]") for k, c in enumerate(coefficients)]
            constants[i][j] = values
            constants[j][i] = [-c for c in values]
        names = tuple(str(x) for x in expect_list(obj.get("basis", []), f"{path}.basis"))
        try:
            return cls(dim, constants, str(obj.get("name", "")), names)
        except (DimensionMismatch, PreconditionFailed) as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        brackets = [
            {"i": i, "j": j, "coefficients": [format_rational(c) for c in self.constants[i][j]]}
            for i, j in itertools.combinations(range(self.dim), 2)
            if any(self.constants[i][j])
        ]
        return {"name": self.name, "dim": self.dim, "basis": list(self.basis_names), "brackets": brackets}


def check_jacobi(algebra: LieAlgebraPresentation) -> JacobiReport:
    return _jacobi(algebra.constants)


@dataclass(frozen=True, eq=False)
class LinearRep:
    size: int
    matrices: Tuple[DomainMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.size < 1:
            raise DimensionMismatch("representation size must be positive")
        for m in self.matrices:
            linalg.check_square(m, self.size)

    def act(self, coordinates: Sequence[Any]) -> DomainMatrix:
        out = linalg.zero_matrix(self.size)
        for c, m in zip(coordinates, self.matrices):
            if c:
                out = out + m * QQ.from_sympy(Rational(c))
        return out

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "LinearRep":
        obj = expect_object(payload, path)
        n = parse_int(require(obj, "n", path), f"{path}.n", minimum=1)
        raw = expect_list(require(obj, "matrices", path), f"{path}.matrices")
        matrices = tuple(matrix_from_json(m, f"{path}.matrices[{i}]") for i, m in enumerate(raw))
        try:
            return cls(n, matrices)
        except DimensionMismatch as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        return {"n": self.size, "matrices": [matrix_to_json(m) for m in self.matrices]}


@dataclass(frozen=True)
class HomReport:
    ok: bool
    pair: Optional[Tuple[int, int]] = None
    defect: Optional[List[List[str]]] = None

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"ok": self.ok}
        if self.pair is not None:
            data["pair"] = list(self.pair)
            data["defect"] = self.defect
        return data


def is_lie_hom(algebra: LieAlgebraPresentation, rho: LinearRep) -> HomReport:
    """Compare ``rho([x_i, x_j])`` with ``[rho(x_i), rho(x_j)]`` for ``i < j``."""
    if len(rho.matrices) != algebra.dim:
        raise DimensionMismatch(
            f"representation has {len(rho.matrices)} matrices, algebra has dim {algebra.dim}"
        )
    for i, j in itertools.combinations(range(algebra.dim), 2):
        expected = rho.act(algebra.constants[i][j])
        actual = linalg.commutator(rho.matrices[i], rho.matrices[j])
        defect = actual - expected
        if not linalg.is_zero(defect):
            return HomReport(ok=False, pair=(i, j), defect=matrix_to_json(defect))
    return HomReport(ok=True)


def adjoint_rep(algebra: LieAlgebraPresentation) -> LinearRep:
    """``ad(x_i)`` has ``(k, j)`` entry ``c_ij^k``."""
    m = algebra.dim
    matrices = tuple(
        linalg.dense([[algebra.constants[i][j][k] for j in range(m)] for k in range(m)])
        for i in range(m)
    )
    return LinearRep(m, matrices)


_NAME_RE = re.compile(r"^\s*(gl|sl|abelian)_?(\d+)\s*$", re.IGNORECASE)


def _elementary(r: int, i: int, j: int) -> DomainMatrix:
    return linalg.dense([[int(a == i and b == j) for b in range(r)] for a in range(r)])


def _matrix_basis(name: str) -> Tuple[str, int, List[str], List[DomainMatrix]]:
    match = _NAME_RE.match(name)
    if not match:
        raise MalformedInput(f"unknown Lie algebra {name!r}; expected gl_r, sl_r or abelian_l")
    family, size = match.group(1).lower(), int(match.group(2))
    if family == "abelian":
        if not 1 <= size <= MAX_ABELIAN_DIM:
            raise UnsupportedSize(f"abelian_l is supported for 1 <= l <= {MAX_ABELIAN_DIM}")
        names = [f"d{i + 1}" for i in range(size)]
        return f"abelian_{size}", size, names, [_elementary(size, i, i) for i in range(size)]
    if not 1 <= size <= MAX_MATRIX_SIZE or (family == "sl" and size < 2):
        raise UnsupportedSize(f"{family}_r is supported for r <= {MAX_MATRIX_SIZE}")
    if family == "gl":
        pairs = [(i, j) for i in range(size) for j in range(size)]
        return (
            f"gl_{size}",
            size,
            [f"E{i + 1}{j + 1}" for i, j in pairs],
            [_elementary(size, i, j) for i, j in pairs],
        )
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j]
    names = [f"E{i + 1}{j + 1}" for i, j in pairs] + [f"H{i + 1}" for i in range(size - 1)]
    mats = [_elementary(size, i, j) for i, j in pairs] + [
        _elementary(size, i, i) - _elementary(size, i + 1, i + 1) for i in range(size - 1)
    ]
    return f"sl_{size}", size, names, mats


def _coordinates(basis: DomainMatrix, gram_inverse: DomainMatrix, m: DomainMatrix) -> List[Rational]:
    vector = linalg.dense([[entry] for row in m.to_list() for entry in row])
    coordinates = gram_inverse * (basis.transpose() * vector)
    if not linalg.equal(basis * coordinates, vector):
        raise RuntimeError("bracket left the span of the matrix basis")
    return [QQ.to_sympy(row[0]) for row in coordinates.to_list()]


@lru_cache(maxsize=None)
def _builtin(name: str) -> Tuple[LieAlgebraPresentation, LinearRep]:
    canonical, r, names, mats = _matrix_basis(name)
    columns = [[entry for row in m.to_list() for entry in row] for m in mats]
    basis = linalg.dense([[col[a] for col in columns] for a in range(r * r)])
    gram_inverse = (basis.transpose() * basis).inv()
    dim = len(mats)
    constants = [
        [_coordinates(basis, gram_inverse, linalg.commutator(mats[i], mats[j])) for j in range(dim)]
        for i in range(dim)
    ]
    algebra = LieAlgebraPresentation(dim, constants, canonical, tuple(names))
    logger.debug("built %s with dim %s", canonical, dim)
    return algebra, LinearRep(r, tuple(mats))


def builtin(name: str) -> LieAlgebraPresentation:
    """``gl_r`` (basis ``E_ij`` row-major), ``sl_r`` (``E_ij`` with ``i != j``, then
    ``H_i = E_ii - E_i+1,i+1``) or ``abelian_l``."""
    return _builtin(name.strip().lower())[0]


def standard_rep(name: str) -> LinearRep:
    """Defining matrices of a builtin algebra (diagonal matrices for ``abelian_l``)."""
    return _builtin(name.strip().lower())[1]


Coefficient = Tuple[PolyElement, int]


@dataclass(frozen=True, eq=False)
class FormContext:
    """Coordinates ``x_ij`` (row-major, grlex) of a generic element of GL_r."""

    r: int
    ring: Any
    gens: Tuple[PolyElement, ...]
    det: PolyElement
    max_degree: int

    def x(self, i: int, j: int) -> PolyElement:
        return self.gens[i * self.r + j]

    @property
    def nvars(self) -> int:
        return self.r * self.r


@lru_cache(maxsize=None)
def _context(r: int, max_degree: int) -> FormContext:
    names = [f"x{i + 1}{j + 1}" for i in range(r) for j in range(r)]
    poly_ring, *gens = ring(names, QQ, grlex)
    domain = poly_ring.to_domain()
    g = DomainMatrix([[gens[i * r + j] for j in range(r)] for i in range(r)], (r, r), domain)
    return FormContext(r, poly_ring, tuple(gens), g.det(), max_degree)


def form_context(r: int) -> FormContext:
    if r not in SYMBOLIC_SIZES:
        raise UnsupportedSize(f"symbolic checks support r in {SYMBOLIC_SIZES}, got {r}")
    return _context(r, get_settings().max_degree)


def _total_degree(p: PolyElement) -> int:
    return max((sum(m) for m in p.monoms()), default=0)


def _sort_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the sorting permutation, 0 when an index repeats."""
    if len(set(indices)) != len(indices):
        return 0, ()
    sign = 1
    items = list(indices)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                sign = -sign
    return sign, tuple(sorted(items))


class FormExpr:
    """Scalar differential form of degree 0, 1 or 2.

    ``terms`` maps a sorted tuple of coordinate indices (the basis form
    ``dx_i1 ^ dx_i2``) to ``(numerator, k)`` meaning ``numerator / det^k``.
    """

    __slots__ = ("context", "degree", "terms")

    def __init__(self, context: FormContext, degree: int, terms: Optional[Dict[Tuple[int, ...], Coefficient]] = None):
        if not 0 <= degree <= 2:
            raise PreconditionFailed(f"forms of degree {degree} are not supported")
        self.context = context
        self.degree = degree
        self.terms: Dict[Tuple[int, ...], Coefficient] = {}
        for key, (numerator, power) in (terms or {}).items():
            self._accumulate(key, numerator, power)

    # construction
    @classmethod
    def function(cls, context: FormContext, numerator: PolyElement, power: int = 0) -> "FormExpr":
        return cls(context, 0, {(): (numerator, power)})

    @classmethod
    def differential(cls, context: FormContext, index: int) -> "FormExpr":
        return cls(context, 1, {(index,): (context.ring.one, 0)})

    def _check_degree(self, numerator: PolyElement) -> None:
        if _total_degree(numerator) > self.context.max_degree:
            raise DegreeLimitExceeded(
                f"numerator degree {_total_degree(numerator)} exceeds {self.context.max_degree}"
            )

    def _accumulate(self, key: Tuple[int, ...], numerator: PolyElement, power: int) -> None:
        if not numerator:
            return
        self._check_degree(numerator)
        current = self.terms.get(key)
        if current is None:
            self.terms[key] = (numerator, power)
            return
        existing, existing_power = current
        top = max(power, existing_power)
        det = self.context.det
        total = existing * det ** (top - existing_power) + numerator * det ** (top - power)
        if total:
            self._check_degree(total)
            self.terms[key] = (total, top)
        else:
            del self.terms[key]

    # arithmetic
    def _check(self, other: "FormExpr") -> None:
        if other.context is not self.context:
            raise DimensionMismatch("forms live over different coordinate rings")

    def __add__(self, other: "FormExpr") -> "FormExpr":
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise DimensionMismatch(f"cannot add forms of degree {self.degree} and {other.degree}")
        degree = self.degree if self.terms else other.degree
        out = FormExpr(self.context, degree, self.terms)
        for key, (numerator, power) in other.terms.items():
            out._accumulate(key, numerator, power)
        return out

    def __neg__(self) -> "FormExpr":
        return FormExpr(self.context, self.degree, {key: (-n, p) for key, (n, p) in self.terms.items()})

    def __sub__(self, other: "FormExpr") -> "FormExpr":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.terms

    def wedge(self, other: "FormExpr") -> "FormExpr":
        self._check(other)
        if self.degree + other.degree > 2:
            raise PreconditionFailed(f"wedge of degrees {self.degree} and {other.degree} exceeds 2")
        out = FormExpr(self.context, self.degree + other.degree)
        for key_a, (num_a, pow_a) in self.terms.items():
            for key_b, (num_b, pow_b) in other.terms.items():
                sign, key = _sort_sign(key_a + key_b)
                if sign:
                    out._accumulate(key, num_a * num_b * sign, pow_a + pow_b)
        return out

    def exterior_derivative(self) -> "FormExpr":
        if self.degree >= 2:
            raise PreconditionFailed("the exterior derivative of a 2-form is not tracked")
        ctx = self.context
        out = FormExpr(ctx, self.degree + 1)
        for key, (numerator, power) in self.terms.items():
            for v, x in enumerate(ctx.gens):
                sign, new_key = _sort_sign((v,) + key)
                if not sign:
                    continue
                # d(f / det^k) = (df * det - k f d(det)) / det^(k+1)
                if power:
                    partial = numerator.diff(x) * ctx.det - numerator * ctx.det.diff(x) * power
                    out._accumulate(new_key, partial * sign, power + 1)
                else:
                    out._accumulate(new_key, numerator.diff(x) * sign, 0)
        return out

    def cleared(self) -> Dict[Tuple[int, ...], PolyElement]:
        """Numerators after multiplying through by the largest det power."""
        if not self.terms:
            return {}
        top = max(power for _, power in self.terms.values())
        return {
            key: numerator * self.context.det ** (top - power)
            for key, (numerator, power) in self.terms.items()
        }

    def __repr__(self) -> str:
        return f"FormExpr(degree={self.degree}, terms={len(self.terms)})"


def exterior_derivative(form: FormExpr) -> FormExpr:
    return form.exterior_derivative()


def wedge(a: FormExpr, b: FormExpr) -> FormExpr:
    return a.wedge(b)


MatrixForm = List[List[FormExpr]]


def matrix_wedge(a: MatrixForm, b: MatrixForm) -> MatrixForm:
    n = len(a)
    inner = len(b)
    out: MatrixForm = []
    for i in range(n):
        row = []
        for j in range(len(b[0])):
            total = a[i][0].wedge(b[0][j])
            for k in range(1, inner):
                total = total + a[i][k].wedge(b[k][j])
            row.append(total)
        out.append(row)
    return out


def matrix_exterior_derivative(a: MatrixForm) -> MatrixForm:
    return [[entry.exterior_derivative() for entry in row] for row in a]


def _adjugate(ctx: FormContext) -> List[List[PolyElement]]:
    r = ctx.r
    domain = ctx.ring.to_domain()
    g = DomainMatrix([[ctx.x(i, j) for j in range(r)] for i in range(r)], (r, r), domain)
    adj = g.adjugate()
    product = (adj * g).to_list()
    if any(product[i][j] != (ctx.det if i == j else 0) for i in range(r) for j in range(r)):
        raise RuntimeError("adjugate does not invert the generic matrix")
    return adj.to_list()


def maurer_cartan_form(ctx: FormContext) -> MatrixForm:
    """``theta = adj(g) / det(g) . dg``."""
    adj = _adjugate(ctx)
    r = ctx.r
    theta: MatrixForm = []
    for i in range(r):
        row = []
        for j in range(r):
            terms = {(k * r + j,): (adj[i][k], 1) for k in range(r) if adj[i][k]}
            row.append(FormExpr(ctx, 1, terms))
        theta.append(row)
    return theta


@dataclass(frozen=True)
class CheckReport:
    check: str
    r: int
    ok: bool
    entry: Optional[Tuple[int, int]] = None
    terms: int = 0

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"check": self.check, "r": self.r, "ok": self.ok}
        if self.entry is not None:
            data["entry"] = list(self.entry)
        return data


def maurer_cartan_check(r: int) -> CheckReport:
    ctx = form_context(r)
    theta = maurer_cartan_form(ctx)
    d_theta = matrix_exterior_derivative(theta)
    square = matrix_wedge(theta, theta)
    terms = 0
    for i in range(r):
        for j in range(r):
            terms += len(d_theta[i][j].terms)
            if not (d_theta[i][j] + square[i][j]).is_zero():
                logger.warning("Maurer-Cartan identity fails at entry (%s, %s) for r=%s", i, j, r)
                return CheckReport("maurer_cartan", r, False, (i, j), terms)
    logger.info("Maurer-Cartan identity holds for r=%s (%s nonzero d(theta) terms)", r, terms)
    return CheckReport("maurer_cartan", r, True, terms=terms)


def trace_dlogdet_check(r: int) -> CheckReport:
    ctx = form_context(r)
    theta = maurer_cartan_form(ctx)
    trace = theta[0][0]
    for i in range(1, r):
        trace = trace + theta[i][i]
    dlog = FormExpr.function(ctx, ctx.det).exterior_derivative()
    dlog = FormExpr(ctx, 1, {key: (numerator, power + 1) for key, (numerator, power) in dlog.terms.items()})
    ok = (dlog - trace).is_zero()
    if ok:
        logger.info("d(det)/det = tr(theta) holds for r=%s", r)
    else:
        logger.warning("d(det)/det differs from tr(theta) for r=%s", r)
    return CheckReport("trace_dlogdet", r, ok, terms=len(dlog.terms))
