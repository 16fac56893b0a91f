import random
import unittest
from math import comb

from invdmod.errors import DimensionMismatch, GroupMismatch, MalformedInput
from invdmod.finab import (
    Character,
    RepClass,
    character_order,
    central_character,
    characters,
    class_count,
    classify_semisimple,
    descends,
    direct_sum,
    dual,
    hom_dim,
    invariants_dim,
    isotypic_decomposition,
    pairing,
    tensor,
    trivial_class,
)
from invdmod.rootdata import (
    CartanType,
    FiniteAbelianGroup,
    SemisimpleGroup,
    SubgroupSpec,
    adjoint,
    center_of_sc,
    simply_connected,
    special_linear_quotient,
    subgroup,
)

Z2 = FiniteAbelianGroup((2,))
GROUPS = [FiniteAbelianGroup(f) for f in ((), (2,), (3,), (4,), (2, 2), (6,), (2, 4))]


def _random_class(rng, group, max_rank=4):
    chars = characters(group)
    return RepClass.from_characters(group, [rng.choice(chars) for _ in range(rng.randint(1, max_rank))])


class CharacterTest(unittest.TestCase):
    def test_characters_are_enumerated(self):
        for group in GROUPS:
            self.assertEqual(len(characters(group)), group.order)

    def test_character_order(self):
        z6 = FiniteAbelianGroup((6,))
        self.assertEqual(character_order(z6, Character((2,))), 3)
        self.assertEqual(character_order(z6, Character((3,))), 2)
        self.assertEqual(character_order(z6, Character((0,))), 1)

    def test_pairing(self):
        self.assertEqual(pairing(Z2, Character((1,)), (1,)), (1, 2))
        self.assertEqual(pairing(Z2, Character((1,)), (0,)), (0, 1))

    def test_from_json_rejects_unreduced(self):
        with self.assertRaises(MalformedInput):
            Character.from_json({"residues": [2]}, Z2)


class ClassificationTest(unittest.TestCase):
    def test_counts(self):
        a1, a2, d4 = CartanType("A", 1), CartanType("A", 2), CartanType("D", 4)
        cases = (
            (simply_connected([a1]), 1),
            (adjoint([a1]), 2),
            (adjoint([a2]), 3),
            (special_linear_quotient(4, 4), 4),
            (adjoint([d4]), 4),
        )
        for g, order in cases:
            for n in range(1, 6):
                classes = classify_semisimple(g, n)
                self.assertEqual(len(classes), comb(order + n - 1, n), f"{g.label} rank {n}")
                self.assertEqual(len(set(classes)), len(classes))
                self.assertTrue(all(c.rank == n for c in classes))
                self.assertEqual(class_count(g.fundamental_group, n), len(classes))

    def test_pgl2_rank_one(self):
        classes = classify_semisimple(adjoint([CartanType("A", 1)]), 1)
        self.assertEqual(len(classes), 2)
        self.assertEqual([c.constituents() for c in classes], [[Character((0,))], [Character((1,))]])

    def test_pgl2_rank_two(self):
        self.assertEqual(len(classify_semisimple(adjoint([CartanType("A", 1)]), 2)), 3)

    def test_simply_connected_has_one_class(self):
        for factors in ([CartanType("A", 1)], [CartanType("E", 8)], [CartanType("A", 2), CartanType("B", 3)]):
            for n in range(1, 6):
                classes = classify_semisimple(simply_connected(factors), n)
                self.assertEqual(len(classes), 1)
                self.assertTrue(classes[0].is_trivial)


class TensorStructureTest(unittest.TestCase):
    def test_canonical_form(self):
        a = RepClass.from_characters(Z2, [Character((1,)), Character((0,)), Character((1,))])
        b = RepClass(Z2, ((Character((0,)), 1), (Character((1,)), 2)))
        self.assertEqual(a, b)
        self.assertEqual(a.rank, 3)
        self.assertEqual(isotypic_decomposition(a), [(Character((0,)), 1), (Character((1,)), 2)])

    def test_invariants(self):
        sign = RepClass.from_characters(Z2, [Character((1,))])
        self.assertEqual(invariants_dim(sign), 0)
        self.assertEqual(invariants_dim(trivial_class(Z2, 3)), 3)
        self.assertEqual(invariants_dim(tensor(sign, sign)), 1)

    def test_adjunction(self):
        rng = random.Random(2024)
        for _ in range(100):
            group = rng.choice(GROUPS)
            u, w = _random_class(rng, group), _random_class(rng, group)
            self.assertEqual(hom_dim(u, w), invariants_dim(tensor(dual(u), w)))

    def test_laws(self):
        rng = random.Random(5)
        for _ in range(40):
            group = rng.choice(GROUPS)
            u, v, w = (_random_class(rng, group, 3) for _ in range(3))
            self.assertEqual(tensor(trivial_class(group, 1), u), u)
            self.assertEqual(tensor(tensor(u, v), w), tensor(u, tensor(v, w)))
            self.assertEqual(tensor(u, v), tensor(v, u))
            self.assertEqual(dual(dual(u)), u)
            self.assertEqual(dual(tensor(u, v)), tensor(dual(u), dual(v)))
            self.assertEqual(tensor(u, direct_sum(v, w)), direct_sum(tensor(u, v), tensor(u, w)))
            self.assertEqual(direct_sum(u, v).rank, u.rank + v.rank)

    def test_group_mismatch(self):
        with self.assertRaises(GroupMismatch):
            tensor(trivial_class(Z2, 1), trivial_class(FiniteAbelianGroup((3,)), 1))

    def test_json(self):
        payload = {
            "group": {"invariant_factors": [2]},
            "entries": [{"character": {"residues": [1]}, "mult": 2}],
        }
        v = RepClass.from_json(payload)
        self.assertEqual(v.rank, 2)
        self.assertEqual(RepClass.from_json(v.to_json()), v)
        with self.assertRaises(MalformedInput):
            RepClass.from_json(payload | {"entries": []})


class DescentTest(unittest.TestCase):
    def test_sl2_to_pgl2(self):
        a1 = [CartanType("A", 1)]
        self.assertEqual(central_character(a1, [1]), Character((1,)))
        self.assertTrue(descends(simply_connected(a1), [1]))
        self.assertFalse(descends(adjoint(a1), [1]))
        self.assertTrue(descends(adjoint(a1), [2]))
        self.assertFalse(descends(adjoint(a1), [3]))

    def test_special_linear_quotients(self):
        pgl3 = adjoint([CartanType("A", 2)])
        self.assertFalse(descends(pgl3, [1, 0]))
        self.assertTrue(descends(pgl3, [1, 1]))
        self.assertTrue(descends(pgl3, [3, 0]))
        sl4_mod_2 = special_linear_quotient(4, 2)
        self.assertFalse(descends(sl4_mod_2, [1, 0, 0]))
        self.assertTrue(descends(sl4_mod_2, [0, 1, 0]))
        self.assertTrue(descends(sl4_mod_2, [2, 0, 0]))
        self.assertFalse(descends(special_linear_quotient(4, 4), [0, 1, 0]))

    def test_d4_order_two_quotients(self):
        factors = (CartanType("D", 4),)
        center = center_of_sc(factors)
        self.assertEqual(center.invariant_factors, (2, 2))
        quotients = [
            SemisimpleGroup(factors, subgroup(center, SubgroupSpec((y,))))
            for y in ((1, 0), (0, 1), (1, 1))
        ]
        vector, spin_plus, spin_minus = [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]
        minuscule = (vector, spin_plus, spin_minus)
        table = [[descends(g, w) for w in minuscule] for g in quotients]
        for row in table:
            self.assertEqual(sum(row), 1)
        for column in zip(*table):
            self.assertEqual(sum(column), 1)
        for g in quotients:
            self.assertTrue(descends(g, [0, 1, 0, 0]))
        full = adjoint(factors)
        self.assertEqual([descends(full, w) for w in minuscule], [False, False, False])
        self.assertTrue(descends(full, [0, 1, 0, 0]))
        self.assertTrue(descends(full, [1, 0, 1, 1]))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            descends(adjoint([CartanType("A", 2)]), [1])


if __name__ == "__main__":
    unittest.main()
