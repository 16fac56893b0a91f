"""Invariant connections on GL_r, reduced to G_m along ``det``.

A rank-``n`` invariant connection on GL_r is described by ``A = rho(I_r)`` and by the
characters ``zeta -> zeta^k_i`` of ``mu_r`` through which the semisimple part acts on the
center of SL_r.  Extending each character to ``t -> t^k_i`` on G_m gives the connection
``(A + diag(k)) / r * dt/t`` on G_m whose pullback along ``det`` is the original one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from . import linalg
from .codec import (
    expect_list,
    expect_object,
    format_rational,
    matrix_from_json,
    matrix_to_json,
    parse_int,
    require,
)
from .errors import DimensionMismatch, MalformedInput, NonCommutingData, PreconditionFailed
from .torusconn import (
    ConstantTorusConnection,
    MonodromyClass,
    enumerate_monodromy_classes,
    equivalent,
    monodromy_class,
    tensor_monodromy,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GlrConnectionSpec:
    r: int
    n: int
    central_part: DomainMatrix
    mu_shift: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.r < 1 or self.n < 1:
            raise DimensionMismatch(f"r and n must be positive, got r={self.r}, n={self.n}")
        if self.mu_shift is None:
            shift: Tuple[int, ...] = (0,) * self.n
        else:
            shift = tuple(int(k) for k in self.mu_shift)
        object.__setattr__(self, "mu_shift", shift)
        if len(shift) != self.n:
            raise DimensionMismatch(f"mu_shift has length {len(shift)}, expected {self.n}")
        linalg.check_square(self.central_part, self.n)

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "GlrConnectionSpec":
        obj = expect_object(payload, path)
        r = parse_int(require(obj, "r", path), f"{path}.r", minimum=1)
        n = parse_int(require(obj, "n", path), f"{path}.n", minimum=1)
        a = matrix_from_json(require(obj, "A", path), f"{path}.A")
        raw_k = expect_list(obj.get("k", [0] * n), f"{path}.k")
        k = tuple(parse_int(value, f"{path}.k[{i}]") for i, value in enumerate(raw_k))
        try:
            return cls(r, n, a, k)
        except DimensionMismatch as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "n": self.n,
            "A": matrix_to_json(self.central_part),
            "k": list(self.mu_shift),
        }


def scalar_form(spec: GlrConnectionSpec) -> DomainMatrix:
    """Coefficient ``A / r`` of ``dlog(det)`` when the semisimple part vanishes."""
    if any(spec.mu_shift):
        raise PreconditionFailed("scalar_form needs a zero mu_shift; use reduce_to_gm")
    return spec.central_part * QQ(1, spec.r)


def reduce_to_gm(spec: GlrConnectionSpec) -> ConstantTorusConnection:
    shift = linalg.diagonal(list(spec.mu_shift))
    if not linalg.is_zero(linalg.commutator(spec.central_part, shift)):
        raise NonCommutingData("A does not commute with diag(k)")
    coefficient = (spec.central_part + shift) * QQ(1, spec.r)
    logger.debug("reduced GL_%s connection to %s", spec.r, matrix_to_json(coefficient))
    return ConstantTorusConnection.single(coefficient)


def _check_comparable(s1: GlrConnectionSpec, s2: GlrConnectionSpec) -> None:
    if (s1.r, s1.n) != (s2.r, s2.n):
        raise DimensionMismatch(
            f"cannot compare GL_{s1.r} rank {s1.n} with GL_{s2.r} rank {s2.n}"
        )


def glr_equivalent(s1: GlrConnectionSpec, s2: GlrConnectionSpec) -> bool:
    _check_comparable(s1, s2)
    # l = 1 is always decidable
    return bool(equivalent(reduce_to_gm(s1), reduce_to_gm(s2)))


def tensor_glr(s1: GlrConnectionSpec, s2: GlrConnectionSpec) -> MonodromyClass:
    """Class of the tensor product, computed on the G_m side."""
    if s1.r != s2.r:
        raise DimensionMismatch(f"cannot tensor connections on GL_{s1.r} and GL_{s2.r}")
    return tensor_monodromy(monodromy_class(reduce_to_gm(s1)), monodromy_class(reduce_to_gm(s2)))


@dataclass(frozen=True)
class GlrStatement:
    n: int
    description: str
    labels: Optional[Tuple[Rational, ...]] = None
    classes: List[MonodromyClass] = field(default_factory=list)

    @property
    def count(self) -> Optional[int]:
        return None if self.labels is None else len(self.classes)

    def to_json(self) -> Dict[str, object]:
        data: Dict[str, object] = {"n": self.n, "description": self.description}
        if self.labels is not None:
            data["labels"] = [format_rational(x) for x in self.labels]
            data["count"] = self.count
            data["classes"] = [c.to_json() for c in self.classes]
        return data


def classify_glr_statement(n: int, labels: Optional[Iterable[Any]] = None) -> GlrStatement:
    """Rank-``n`` classes on GL_r are the rank-``n`` monodromy classes on G_m, i.e.
    conjugacy classes in GL_n; they are listed once a label set is fixed."""
    if n < 1:
        raise PreconditionFailed(f"rank must be >= 1, got {n}")
    description = (
        f"isomorphism classes of rank-{n} invariant connections on GL_r correspond, via "
        f"pullback along det, to rank-{n} classes on G_m: conjugacy classes in GL_{n} "
        f"(Hom(Z, GL_{n}) / GL_{n}), independent of r"
    )
    if labels is None:
        return GlrStatement(n, description)
    label_set = tuple(sorted({linalg.mod_one(Rational(x)) for x in labels}))
    classes = enumerate_monodromy_classes(n, label_set)
    logger.debug("rank %s, labels %s: %s classes", n, label_set, len(classes))
    return GlrStatement(n, description, label_set, classes)
