import random
import unittest

from invdmod.cohomo import (
    PoincarePolynomial,
    WeylDegrees,
    coxeter_degrees,
    coxeter_number,
    dmod_betti,
    exponents,
    group_dimension,
    local_system_betti,
    monodromy_factors_through,
    poincare,
    weyl_degrees,
    weyl_group_order,
)
from invdmod.errors import GroupMismatch, PreconditionFailed
from invdmod.finab import Character, RepClass, characters, trivial_class
from invdmod.rootdata import (
    CartanType,
    SemisimpleGroup,
    SubgroupSpec,
    adjoint,
    center_of_sc,
    simply_connected,
    special_linear_quotient,
    subgroup,
)

A1 = [CartanType("A", 1)]


def _all_types(max_rank=8):
    types = [CartanType("A", r) for r in range(1, max_rank + 1)]
    types += [CartanType("B", r) for r in range(2, max_rank + 1)]
    types += [CartanType("C", r) for r in range(2, max_rank + 1)]
    types += [CartanType("D", r) for r in range(3, max_rank + 1)]
    types += [CartanType("E", r) for r in (6, 7, 8)]
    types += [CartanType("F", 4), CartanType("G", 2)]
    return types


class DegreesTest(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(weyl_degrees(CartanType("A", 1)).degrees, (2,))
        self.assertEqual(weyl_degrees(CartanType("A", 2)).degrees, (2, 3))
        self.assertEqual(weyl_degrees(CartanType("G", 2)).degrees, (2, 6))
        self.assertEqual(exponents(CartanType("E", 8)), (1, 7, 11, 13, 17, 19, 23, 29))
        self.assertEqual(coxeter_number(CartanType("E", 8)), 30)
        self.assertEqual(weyl_group_order(CartanType("F", 4)), 1152)

    def test_coxeter_oracle(self):
        for t in _all_types():
            with self.subTest(t=t.label):
                self.assertEqual(coxeter_degrees(t), weyl_degrees(t).degrees)

    def test_product_is_weyl_order(self):
        for t in _all_types():
            product = 1
            for d in weyl_degrees(t).degrees:
                product *= d
            self.assertEqual(product, weyl_group_order(t))

    def test_inconsistent_degrees(self):
        with self.assertRaises(PreconditionFailed):
            WeylDegrees(CartanType("A", 2), (2, 4))


class PoincareTest(unittest.TestCase):
    def test_sl2_and_pgl2(self):
        self.assertEqual(poincare(simply_connected(A1)).coefficients, (1, 0, 0, 1))
        self.assertEqual(poincare(adjoint(A1)), poincare(simply_connected(A1)))

    def test_sl3(self):
        expected = PoincarePolynomial((1, 0, 0, 1)) * PoincarePolynomial((1, 0, 0, 0, 0, 1))
        self.assertEqual(poincare(special_linear_quotient(3)), expected)
        self.assertEqual(expected.coefficients, (1, 0, 0, 1, 0, 1, 0, 0, 1))

    def test_total_betti_and_duality(self):
        for t in _all_types():
            p = poincare(simply_connected([t]))
            self.assertEqual(p.evaluate(1), 2 ** t.rank)
            self.assertTrue(p.is_palindromic)

    def test_dimension(self):
        self.assertEqual(group_dimension(simply_connected(A1)), 3)
        self.assertEqual(group_dimension(special_linear_quotient(3)), 8)
        self.assertEqual(group_dimension(simply_connected([CartanType("E", 8)])), 248)
        self.assertEqual(group_dimension(simply_connected([CartanType("G", 2)])), 14)

    def test_independent_of_gamma(self):
        factors = (CartanType("D", 4), CartanType("A", 1))
        center = center_of_sc(factors)
        expected = poincare(simply_connected(factors))
        for gens in ([], [(1, 0, 0)], [(0, 1, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, 1)]):
            g = SemisimpleGroup(factors, subgroup(center, SubgroupSpec(tuple(gens))))
            self.assertEqual(poincare(g), expected)


class BettiTest(unittest.TestCase):
    def test_pgl2(self):
        pgl2 = adjoint(A1)
        gamma = pgl2.fundamental_group
        sign = RepClass.from_characters(gamma, [Character((1,))])
        trivial = trivial_class(gamma, 1)
        self.assertEqual([dmod_betti(pgl2, sign, i) for i in range(6)], [0] * 6)
        self.assertEqual([dmod_betti(pgl2, trivial, i) for i in range(4)], [1, 0, 0, 1])
        self.assertEqual(local_system_betti(pgl2, sign, 3), 0)

    def test_degree_zero_is_invariants(self):
        pgl2 = adjoint(A1)
        v = RepClass.from_characters(pgl2.fundamental_group, [Character((0,)), Character((1,)), Character((0,))])
        self.assertEqual(dmod_betti(pgl2, v, 0), 2)

    def test_sl2(self):
        sl2 = simply_connected(A1)
        self.assertEqual(local_system_betti(sl2, trivial_class(sl2.fundamental_group, 1), 3), 1)

    def test_comparison_on_random_grid(self):
        rng = random.Random(17)
        groups = [
            adjoint(A1),
            special_linear_quotient(4, 2),
            adjoint([CartanType("A", 2), CartanType("A", 1)]),
            adjoint([CartanType("D", 4)]),
            simply_connected([CartanType("G", 2)]),
        ]
        for _ in range(60):
            g = rng.choice(groups)
            chars = characters(g.fundamental_group)
            v = RepClass.from_characters(g.fundamental_group, [rng.choice(chars) for _ in range(rng.randint(1, 4))])
            i = rng.randint(0, poincare(g).degree + 1)
            self.assertEqual(local_system_betti(g, v, i), dmod_betti(g, v, i))

    def test_group_mismatch(self):
        with self.assertRaises(GroupMismatch):
            dmod_betti(simply_connected(A1), trivial_class(adjoint(A1).fundamental_group, 1), 0)


class MonodromyTest(unittest.TestCase):
    def test_image_orders(self):
        pgl2 = adjoint(A1)
        gamma = pgl2.fundamental_group
        self.assertEqual(monodromy_factors_through(pgl2, trivial_class(gamma, 2)).image_order, 1)
        sign = RepClass.from_characters(gamma, [Character((1,))])
        self.assertEqual(monodromy_factors_through(pgl2, sign).image_order, 2)

        g = adjoint([CartanType("A", 2), CartanType("A", 1)])
        self.assertEqual(g.fundamental_group.invariant_factors, (6,))
        v = RepClass.from_characters(g.fundamental_group, [Character((2,)), Character((3,))])
        result = monodromy_factors_through(g, v)
        self.assertEqual(result.image_order, 6)
        self.assertTrue(result.to_json()["finite"])


if __name__ == "__main__":
    unittest.main()
