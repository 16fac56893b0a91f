import random
import unittest

from sympy import Matrix, Rational, diag

from invdmod.errors import DimensionMismatch, InvalidRank, MalformedInput, PreconditionFailed
from invdmod.rootdata import (
    CartanType,
    FiniteAbelianGroup,
    SemisimpleGroup,
    SubgroupSpec,
    adjoint,
    cartan_matrix,
    center_of_sc,
    center_pairing,
    center_presentation,
    coweight_class,
    parse_cartan_type,
    simply_connected,
    smith_normal_form,
    special_linear_quotient,
    subgroup,
    weight_class,
)


def _expected_center(t):
    if t.series == "A":
        return (t.rank + 1,)
    if t.series in ("B", "C"):
        return (2,)
    if t.series == "D":
        return (4,) if t.rank % 2 else (2, 2)
    if t.series == "E":
        return {6: (3,), 7: (2,), 8: ()}[t.rank]
    return ()


def _all_types(max_rank=8):
    types = [CartanType("A", r) for r in range(1, max_rank + 1)]
    types += [CartanType("B", r) for r in range(2, max_rank + 1)]
    types += [CartanType("C", r) for r in range(2, max_rank + 1)]
    types += [CartanType("D", r) for r in range(3, max_rank + 1)]
    types += [CartanType("E", r) for r in (6, 7, 8)]
    types += [CartanType("F", 4), CartanType("G", 2)]
    return types


def _closure(group, generators):
    elements = {tuple(0 for _ in group.invariant_factors)}
    frontier = list(elements)
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = group.add(x, g)
            if y not in elements:
                elements.add(y)
                frontier.append(y)
    return frozenset(elements)


class CartanDataTest(unittest.TestCase):
    def test_rank_two_matrices(self):
        self.assertEqual(cartan_matrix(CartanType("B", 2)).to_json(), [[2, -1], [-2, 2]])
        self.assertEqual(cartan_matrix(CartanType("C", 2)).to_json(), [[2, -2], [-1, 2]])
        self.assertEqual(cartan_matrix(CartanType("G", 2)).to_json(), [[2, -3], [-1, 2]])

    def test_f4_matrix(self):
        self.assertEqual(
            cartan_matrix(CartanType("F", 4)).to_json(),
            [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]],
        )

    def test_invalid_types(self):
        for series, rank in (("E", 5), ("F", 3), ("G", 3), ("D", 2), ("B", 1), ("A", 0), ("H", 3)):
            with self.assertRaises(InvalidRank):
                CartanType(series, rank)

    def test_parse(self):
        self.assertEqual(parse_cartan_type("a_2"), CartanType("A", 2))
        self.assertEqual(parse_cartan_type("E8"), CartanType("E", 8))
        with self.assertRaises(MalformedInput):
            parse_cartan_type("X3")
        with self.assertRaises(InvalidRank):
            parse_cartan_type("E5")


class SmithNormalFormTest(unittest.TestCase):
    def test_postcondition_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(30):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            m = Matrix(rows, cols, lambda i, j: rng.randint(-6, 6))
            snf = smith_normal_form(m)
            self.assertEqual(snf.left * m * snf.right, snf.diagonal)
            self.assertIn(abs(snf.left.det()), (1,))
            self.assertIn(abs(snf.right.det()), (1,))
            nonzero = [d for d in snf.factors if d]
            for a, b in zip(nonzero, nonzero[1:]):
                self.assertEqual(b % a, 0)

    def test_empty_matrix(self):
        snf = smith_normal_form(Matrix.zeros(0, 0))
        self.assertEqual(snf.factors, ())


class CenterTest(unittest.TestCase):
    def test_classical_table(self):
        for t in _all_types():
            with self.subTest(t=t.label):
                self.assertEqual(center_of_sc([t]).invariant_factors, _expected_center(t))

    def test_products_merge_cyclic_parts(self):
        self.assertEqual(center_of_sc([CartanType("A", 2), CartanType("A", 1)]).invariant_factors, (6,))
        self.assertEqual(center_of_sc([CartanType("A", 1), CartanType("A", 1)]).invariant_factors, (2, 2))
        self.assertEqual(center_of_sc([]).invariant_factors, ())


def _block(factors):
    return diag(*[cartan_matrix(t).to_matrix() for t in factors])


class CenterCoordinatesTest(unittest.TestCase):
    FACTOR_SETS = [[t] for t in _all_types(5)] + [
        [CartanType("A", 2), CartanType("A", 1)],
        [CartanType("A", 1), CartanType("A", 1)],
        [CartanType("D", 4), CartanType("B", 3)],
    ]

    def test_pairing_matches_inverse_cartan(self):
        rng = random.Random(31)
        for factors in self.FACTOR_SETS:
            inverse = _block(factors).inv()
            rank = inverse.rows
            for _ in range(8):
                weight = [rng.randint(-3, 3) for _ in range(rank)]
                coweight = [rng.randint(-3, 3) for _ in range(rank)]
                expected = (Matrix(coweight).T * inverse * Matrix(weight))[0] % 1
                self.assertEqual(center_pairing(factors, weight, coweight), expected)

    def test_coroots_and_roots_are_trivial(self):
        for factors in self.FACTOR_SETS:
            block = _block(factors)
            zero = tuple(0 for _ in center_of_sc(factors).invariant_factors)
            for i in range(block.rows):
                self.assertEqual(coweight_class(factors, list(block.row(i))), zero)
                self.assertEqual(weight_class(factors, list(block.col(i))), zero)

    def test_fundamental_coweights_generate(self):
        for factors in self.FACTOR_SETS:
            center = center_of_sc(factors)
            if center.is_trivial:
                continue
            rank = _block(factors).rows
            gens = [coweight_class(factors, [int(i == j) for j in range(rank)]) for i in range(rank)]
            self.assertEqual(subgroup(center, SubgroupSpec(tuple(gens))).group, center)

    def test_special_linear(self):
        for r in range(1, 6):
            factors = [CartanType("A", r)]
            first = [1] + [0] * (r - 1)
            generated = subgroup(center_of_sc(factors), SubgroupSpec((coweight_class(factors, first),)))
            self.assertEqual(generated.group.order, r + 1)
            self.assertEqual(center_pairing(factors, first, first), Rational(r, r + 1))

    def test_rank_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            weight_class([CartanType("A", 2)], [1, 0, 0])
        with self.assertRaises(DimensionMismatch):
            coweight_class([CartanType("B", 3)], [1])
        self.assertEqual(center_presentation([CartanType("E", 8)]).group.order, 1)
        self.assertEqual(weight_class([CartanType("E", 8)], [1] * 8), ())


class SubgroupTest(unittest.TestCase):
    def test_examples(self):
        z4 = FiniteAbelianGroup((4,))
        half = subgroup(z4, SubgroupSpec(((2,),)))
        self.assertEqual(half.group.invariant_factors, (2,))
        self.assertEqual(half.elements, frozenset({(0,), (2,)}))

        klein = FiniteAbelianGroup((2, 2))
        diagonal = subgroup(klein, SubgroupSpec(((1, 1),)))
        self.assertEqual(diagonal.group.invariant_factors, (2,))
        self.assertEqual(subgroup(klein, SubgroupSpec(((1, 0), (0, 1)))).group.invariant_factors, (2, 2))

    def test_matches_brute_force_closure(self):
        rng = random.Random(11)
        ambients = [(2, 2), (2, 4), (6,), (2, 6), (3, 3), (12,)]
        for _ in range(60):
            ambient = FiniteAbelianGroup(rng.choice(ambients))
            gens = tuple(
                tuple(rng.randrange(d) for d in ambient.invariant_factors)
                for _ in range(rng.randint(0, 3))
            )
            embedded = subgroup(ambient, SubgroupSpec(gens))
            closure = _closure(ambient, gens)
            self.assertEqual(embedded.elements, closure)
            self.assertEqual(embedded.group.order, len(closure))

    def test_rejects_unreduced_generators(self):
        with self.assertRaises(PreconditionFailed):
            subgroup(FiniteAbelianGroup((4,)), SubgroupSpec(((5,),)))
        with self.assertRaises(PreconditionFailed):
            subgroup(FiniteAbelianGroup((4,)), SubgroupSpec(((1, 0),)))


class SemisimpleGroupTest(unittest.TestCase):
    def test_named_groups(self):
        a1 = [CartanType("A", 1)]
        self.assertTrue(simply_connected(a1).fundamental_group.is_trivial)
        self.assertEqual(adjoint(a1).fundamental_group.invariant_factors, (2,))
        self.assertEqual(special_linear_quotient(4, 2).fundamental_group.invariant_factors, (2,))
        self.assertEqual(special_linear_quotient(4, 4).fundamental_group.invariant_factors, (4,))
        with self.assertRaises(PreconditionFailed):
            special_linear_quotient(4, 3)

    def test_from_json(self):
        payload = {"factors": [{"series": "A", "rank": 3}], "gamma": {"generators": [[2]]}}
        group = SemisimpleGroup.from_json(payload)
        self.assertEqual(group.fundamental_group.invariant_factors, (2,))
        self.assertEqual(SemisimpleGroup.from_json(group.to_json() | {"gamma": "center"}).fundamental_group.order, 4)
        self.assertTrue(SemisimpleGroup.from_json({"factors": [{"series": "E", "rank": 6}]}).fundamental_group.is_trivial)

    def test_from_json_reports_position(self):
        with self.assertRaises(MalformedInput) as ctx:
            SemisimpleGroup.from_json({"factors": [{"series": "A", "rank": 1}], "gamma": {"generators": [[3]]}})
        self.assertIn("$.gamma", str(ctx.exception))

    def test_gamma_must_live_in_center(self):
        a1 = [CartanType("A", 1)]
        foreign = subgroup(FiniteAbelianGroup((3,)), SubgroupSpec(((1,),)))
        with self.assertRaises(PreconditionFailed):
            SemisimpleGroup(tuple(a1), foreign)


if __name__ == "__main__":
    unittest.main()
