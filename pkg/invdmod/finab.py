"""Characters of finite abelian groups and ``Hom(Gamma, GL_n)/GL_n`` as character multisets.

Every finite-dimensional complex representation of a finite abelian group is a direct
sum of characters, so a conjugacy class of homomorphisms ``Gamma -> GL_n`` is exactly an
unordered multiset of ``n`` characters.  ``RepClass`` stores that multiset canonically.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from math import comb, gcd, lcm
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from .codec import expect_list, expect_object, parse_int, require
from .errors import GroupMismatch, MalformedInput, PreconditionFailed
from .rootdata import CartanType, FiniteAbelianGroup, SemisimpleGroup, weight_class

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Character:
    """``x -> exp(2 pi i * sum(a_i x_i / d_i))`` with residues ``a_i`` mod ``d_i``."""

    residues: Tuple[int, ...] = ()

    @classmethod
    def from_json(cls, payload: Any, group: FiniteAbelianGroup, path: str = "$") -> "Character":
        obj = expect_object(payload, path)
        raw = expect_list(require(obj, "residues", path), f"{path}.residues")
        residues = tuple(parse_int(a, f"{path}.residues[{i}]") for i, a in enumerate(raw))
        if len(residues) != len(group.invariant_factors):
            raise MalformedInput(
                f"expected {len(group.invariant_factors)} residues, got {len(residues)}", path
            )
        for a, d in zip(residues, group.invariant_factors):
            if not 0 <= a < d:
                raise MalformedInput(f"residue {a} not reduced modulo {d}", path)
        return cls(residues)

    def to_json(self) -> Dict[str, object]:
        return {"residues": list(self.residues)}


def trivial_character(group: FiniteAbelianGroup) -> Character:
    return Character(tuple(0 for _ in group.invariant_factors))


def characters(group: FiniteAbelianGroup) -> List[Character]:
    """All ``|group|`` characters in lexicographic order."""
    return [Character(residues) for residues in group.elements()]


def character_product(group: FiniteAbelianGroup, chi: Character, psi: Character) -> Character:
    return Character(group.add(chi.residues, psi.residues))


def character_inverse(group: FiniteAbelianGroup, chi: Character) -> Character:
    return Character(group.reduce([-a for a in chi.residues]))


def character_order(group: FiniteAbelianGroup, chi: Character) -> int:
    order = 1
    for a, d in zip(chi.residues, group.invariant_factors):
        order = lcm(order, d // gcd(a, d))
    return order


def pairing(group: FiniteAbelianGroup, chi: Character, x: Iterable[int]) -> Tuple[int, int]:
    """``chi(x)`` as a root of unity ``exp(2 pi i * p/q)``, returned as reduced ``(p, q)``."""
    order = group.invariant_factors[-1] if group.invariant_factors else 1
    total = 0
    for a, b, d in zip(chi.residues, x, group.invariant_factors):
        total += a * b * (order // d)
    total %= order
    g = gcd(total, order)
    return total // g, order // g


@dataclass(frozen=True)
class RepClass:
    """A multiset of characters of ``group``: a point of ``Hom(group, GL_n)/GL_n``."""

    group: FiniteAbelianGroup
    entries: Tuple[Tuple[Character, int], ...]

    def __post_init__(self) -> None:
        counts: Counter = Counter()
        for chi, mult in self.entries:
            if len(chi.residues) != len(self.group.invariant_factors):
                raise GroupMismatch(f"{chi} is not a character of {self.group.invariant_factors}")
            if any(not 0 <= a < d for a, d in zip(chi.residues, self.group.invariant_factors)):
                raise ValueError(f"{chi} is not reduced")
            if mult < 1:
                raise ValueError(f"Multiplicity must be positive, got {mult}")
            counts[chi] += mult
        object.__setattr__(self, "entries", tuple(sorted(counts.items())))

    @classmethod
    def from_characters(cls, group: FiniteAbelianGroup, chars: Iterable[Character]) -> "RepClass":
        return cls(group, tuple((chi, 1) for chi in chars))

    @property
    def rank(self) -> int:
        return sum(mult for _, mult in self.entries)

    def multiplicity(self, chi: Character) -> int:
        return dict(self.entries).get(chi, 0)

    def constituents(self) -> List[Character]:
        """The rank-1 constituents, repeated by multiplicity."""
        return [chi for chi, mult in self.entries for _ in range(mult)]

    @property
    def is_trivial(self) -> bool:
        trivial = trivial_character(self.group)
        return all(chi == trivial for chi, _ in self.entries)

    @classmethod
    def from_json(cls, payload: Any, path: str = "$") -> "RepClass":
        obj = expect_object(payload, path)
        group = FiniteAbelianGroup.from_json(require(obj, "group", path), f"{path}.group")
        raw_entries = expect_list(require(obj, "entries", path), f"{path}.entries")
        entries = []
        for i, item in enumerate(raw_entries):
            item_path = f"{path}.entries[{i}]"
            item = expect_object(item, item_path)
            chi = Character.from_json(require(item, "character", item_path), group, f"{item_path}.character")
            mult = parse_int(require(item, "mult", item_path), f"{item_path}.mult", minimum=1)
            entries.append((chi, mult))
        if not entries:
            raise MalformedInput("a representation class needs rank >= 1", f"{path}.entries")
        return cls(group, tuple(entries))

    def to_json(self) -> Dict[str, object]:
        return {
            "group": self.group.to_json(),
            "entries": [{"character": chi.to_json(), "mult": mult} for chi, mult in self.entries],
        }


def trivial_class(group: FiniteAbelianGroup, n: int) -> RepClass:
    if n < 1:
        raise PreconditionFailed(f"rank must be >= 1, got {n}")
    return RepClass(group, ((trivial_character(group), n),))


def _check_same_group(u: RepClass, w: RepClass) -> None:
    if u.group != w.group:
        raise GroupMismatch(
            f"{u.group.invariant_factors} and {w.group.invariant_factors} differ"
        )


def classify_semisimple(g: SemisimpleGroup, n: int) -> List[RepClass]:
    """All rank-``n`` invariant D-module classes on ``g``, as character multisets of Gamma."""
    if n < 1:
        raise PreconditionFailed(f"rank must be >= 1, got {n}")
    gamma = g.fundamental_group
    chars = characters(gamma)
    classes = [
        RepClass.from_characters(gamma, combo)
        for combo in itertools.combinations_with_replacement(chars, n)
    ]
    logger.debug("%s rank %s: %s classes", g.label, n, len(classes))
    return classes


def class_count(group: FiniteAbelianGroup, n: int) -> int:
    return comb(group.order + n - 1, n)


def invariants_dim(v: RepClass) -> int:
    """``dim V^Gamma``: the multiplicity of the trivial character."""
    return v.multiplicity(trivial_character(v.group))


def tensor(u: RepClass, w: RepClass) -> RepClass:
    _check_same_group(u, w)
    counts: Counter = Counter()
    for chi, a in u.entries:
        for psi, b in w.entries:
            counts[character_product(u.group, chi, psi)] += a * b
    return RepClass(u.group, tuple(counts.items()))


def dual(v: RepClass) -> RepClass:
    return RepClass(v.group, tuple((character_inverse(v.group, chi), m) for chi, m in v.entries))


def direct_sum(u: RepClass, w: RepClass) -> RepClass:
    _check_same_group(u, w)
    return RepClass(u.group, u.entries + w.entries)


def hom_dim(u: RepClass, w: RepClass) -> int:
    """``dim Hom(u, w)``; every higher Ext vanishes because Rep(Gamma) is semisimple."""
    _check_same_group(u, w)
    return sum(mult * w.multiplicity(chi) for chi, mult in u.entries)


def isotypic_decomposition(v: RepClass) -> List[Tuple[Character, int]]:
    return list(v.entries)


def central_character(factors: Sequence[CartanType], highest_weight: Sequence[int]) -> Character:
    """Character of ``Z(G^sc)`` by which the irreducible of ``highest_weight`` acts."""
    return Character(weight_class(factors, highest_weight))


def descends(g: SemisimpleGroup, highest_weight: Sequence[int]) -> bool:
    """Whether the irreducible ``G^sc``-module of ``highest_weight`` is a ``G``-module.

    It descends exactly when its central character is trivial on ``Gamma``.
    """
    center = g.gamma.ambient
    chi = central_character(g.factors, highest_weight)
    verdict = all(pairing(center, chi, y)[0] == 0 for y in g.gamma.generators)
    logger.debug("highest weight %s on %s: central character %s, descends=%s",
                 list(highest_weight), g.label, chi.residues, verdict)
    return verdict
