"""Invariant D-modules on products ``G_m^l x G^sc/Gamma``.

A class is the pair (monodromy class of the torus part, character multiset of Gamma).
The derived monodromy invariant ``mu_der`` is the second component; the classes pulled
back from the abelianization are exactly those with trivial ``mu_der``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from . import finab
from .codec import expect_object, parse_int, require
from .cohomo import PoincarePolynomial, poincare
from .errors import DimensionMismatch, GroupMismatch, MalformedInput, PreconditionFailed
from .finab import RepClass, trivial_class
from .rootdata import SemisimpleGroup
from .torusconn import ConstantTorusConnection, MonodromyClass, monodromy_class, tensor_monodromy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductiveProductGroup:
    torus_dim: int
    ss: SemisimpleGroup

    def __post_init__(self) -> None:
        if self.torus_dim < 0:
            raise DimensionMismatch(f"torus dimension must be >= 0, got {self.torus_dim}")

    @property
    def label(self) -> str:
        torus = f"G_m^{self.torus_dim}" if self.torus_dim else ""
        return " x ".join(part for part in (torus, self.ss.label) if part)

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "ReductiveProductGroup":
        obj = expect_object(payload, path)
        l = parse_int(require(obj, "torus_dim", path), f"{path}.torus_dim", minimum=0)
        ss = SemisimpleGroup.from_json(require(obj, "ss", path), f"{path}.ss")
        return cls(l, ss)

    def to_json(self) -> Dict[str, object]:
        return {"torus_dim": self.torus_dim, "ss": self.ss.to_json()}


@dataclass(frozen=True)
class ReductiveClass:
    """``torus_part`` is ``None`` exactly when the torus is trivial (``l = 0``)."""

    torus_part: Optional[MonodromyClass]
    derived_part: RepClass

    def __post_init__(self) -> None:
        if self.torus_part is not None and self.torus_part.rank != self.derived_part.rank:
            raise DimensionMismatch(
                f"torus part has rank {self.torus_part.rank}, derived part {self.derived_part.rank}"
            )

    @property
    def rank(self) -> int:
        return self.derived_part.rank

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "ReductiveClass":
        obj = expect_object(payload, path)
        raw_torus = obj.get("torus_part")
        torus = None if raw_torus is None else MonodromyClass.from_json(raw_torus, f"{path}.torus_part")
        derived = RepClass.from_json(require(obj, "derived_part", path), f"{path}.derived_part")
        try:
            return cls(torus, derived)
        except DimensionMismatch as exc:
            raise MalformedInput(str(exc), path) from exc

    def to_json(self) -> Dict[str, object]:
        return {
            "torus_part": None if self.torus_part is None else self.torus_part.to_json(),
            "derived_part": self.derived_part.to_json(),
        }


def validate_class(g: ReductiveProductGroup, c: ReductiveClass) -> None:
    if c.derived_part.group != g.ss.fundamental_group:
        raise GroupMismatch(
            f"derived part lives on {c.derived_part.group.invariant_factors}, "
            f"Gamma of {g.label} is {g.ss.fundamental_group.invariant_factors}"
        )
    torus_dim = 0 if c.torus_part is None else c.torus_part.torus_dim
    if torus_dim != g.torus_dim:
        raise DimensionMismatch(f"torus part has dimension {torus_dim}, group has {g.torus_dim}")


def construct_class(
    g: ReductiveProductGroup, torus: Optional[ConstantTorusConnection], v: RepClass
) -> ReductiveClass:
    if g.torus_dim == 0:
        if torus is not None:
            raise DimensionMismatch(f"{g.label} has no torus factor")
        torus_part = None
    else:
        if torus is None:
            raise PreconditionFailed(f"{g.label} needs a torus connection")
        torus_part = monodromy_class(torus)
    c = ReductiveClass(torus_part, v)
    validate_class(g, c)
    return c


def mu_der(c: ReductiveClass) -> RepClass:
    return c.derived_part


def in_ab_image(c: ReductiveClass) -> bool:
    return c.derived_part.is_trivial


def ab_pullback(
    g: ReductiveProductGroup, torus_class: Optional[MonodromyClass], rank: Optional[int] = None
) -> ReductiveClass:
    """Pullback along ``ab``: the torus class paired with the trivial Gamma-representation.

    ``rank`` is only needed when the torus is trivial.
    """
    if torus_class is None:
        if rank is None:
            raise PreconditionFailed("rank is required when there is no torus class")
        n = rank
    else:
        n = torus_class.rank
        if rank is not None and rank != n:
            raise DimensionMismatch(f"rank {rank} disagrees with torus class rank {n}")
    c = ReductiveClass(torus_class, trivial_class(g.ss.fundamental_group, n))
    validate_class(g, c)
    return c


def tensor_classes(c1: ReductiveClass, c2: ReductiveClass) -> ReductiveClass:
    if (c1.torus_part is None) != (c2.torus_part is None):
        raise DimensionMismatch("only one of the classes has a torus part")
    torus = None
    if c1.torus_part is not None:
        torus = tensor_monodromy(c1.torus_part, c2.torus_part)
    return ReductiveClass(torus, finab.tensor(c1.derived_part, c2.derived_part))


def reductive_poincare(g: ReductiveProductGroup) -> PoincarePolynomial:
    """``(1 + q)^l * P_ss(q)``."""
    result = poincare(g.ss)
    for _ in range(g.torus_dim):
        result = result * PoincarePolynomial((1, 1))
    logger.debug("Poincare polynomial of %s: %s", g.label, result.coefficients)
    return result
