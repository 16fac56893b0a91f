import random
import unittest

from sympy import Rational
from sympy.polys.domains import QQ

from invdmod import linalg
from invdmod.codec import laurent
from invdmod.errors import (
    DimensionMismatch,
    IrrationalSpectrum,
    MalformedInput,
    NonCommutingData,
    NonUnitDeterminant,
)
from invdmod.torusconn import (
    ConstantTorusConnection,
    LaurentMatrix,
    MonodromyClass,
    apply_gauge,
    check_flat,
    dual_monodromy,
    enumerate_monodromy_classes,
    equivalent,
    monodromy_class,
    tensor_monodromy,
    trivial_connection,
    verify_gauge,
)

R = Rational


def conn(*matrices):
    mats = tuple(linalg.dense(m) for m in matrices)
    return ConstantTorusConnection(len(mats), mats[0].shape[0], mats)


def monomial(coef, exp):
    return laurent([(exp, coef)]) if coef else laurent([])


def _random_invertible(rng, n):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        m = linalg.dense(rows)
        if m.det():
            return m


class FlatnessTest(unittest.TestCase):
    def test_single_matrix_is_flat(self):
        self.assertTrue(check_flat(conn([[1, 2], [3, 4]])).ok)

    def test_diagonal_pair(self):
        self.assertTrue(check_flat(conn([[1, 0], [0, 2]], [[3, 0], [0, 4]])).ok)

    def test_violation(self):
        report = check_flat(conn([[0, 1], [0, 0]], [[0, 0], [1, 0]]))
        self.assertFalse(report.ok)
        self.assertEqual(report.pair, (0, 1))
        self.assertEqual(report.commutator, [["1", "0"], ["0", "-1"]])


class MonodromyClassTest(unittest.TestCase):
    def test_integer_eigenvalues_pool(self):
        c = monodromy_class(conn([[0, 0], [0, 1]]))
        self.assertEqual(c.blocks, ((R(0), (1, 1)),))
        self.assertEqual(c, monodromy_class(trivial_connection(1, 2)))
        self.assertTrue(c.is_trivial)

    def test_unipotent_block(self):
        c = monodromy_class(conn([[0, 1], [0, 0]]))
        self.assertEqual(c.blocks, ((R(0), (2,)),))
        self.assertFalse(c.is_semisimple)

    def test_scalar(self):
        self.assertEqual(monodromy_class(conn([[R(1, 2)]])).blocks, ((R(1, 2), (1,)),))

    def test_jordan_blocks_at_shifted_eigenvalues_concatenate(self):
        a = [[R(1, 3), 1, 0], [0, R(1, 3), 0], [0, 0, R(4, 3)]]
        self.assertEqual(monodromy_class(conn(a)).blocks, ((R(1, 3), (2, 1)),))

    def test_irrational_spectrum(self):
        with self.assertRaises(IrrationalSpectrum):
            monodromy_class(conn([[0, 2], [1, 0]]))

    def test_non_flat_tuple(self):
        with self.assertRaises(NonCommutingData):
            monodromy_class(conn([[0, 1], [0, 0]], [[0, 0], [1, 0]]))

    def test_joint_spectrum(self):
        c = monodromy_class(conn([[R(1, 2), 0], [0, 0]], [[0, 0], [0, R(1, 3)]]))
        self.assertEqual(c.joint, (((R(0), R(1, 3)), 1), ((R(1, 2), R(0)), 1)))

    def test_json(self):
        c = monodromy_class(conn([[R(1, 2), 1], [0, R(1, 2)]]))
        self.assertEqual(c.to_json(), {"torus_dim": 1, "rank": 2, "blocks": [{"label": "1/2", "sizes": [2]}]})
        self.assertEqual(MonodromyClass.from_json(c.to_json()), c)


class EquivalenceTest(unittest.TestCase):
    def test_examples(self):
        self.assertTrue(equivalent(conn([[0, 0], [0, 1]]), conn([[0, 0], [0, 0]])))
        self.assertFalse(equivalent(conn([[0, 1], [0, 0]]), conn([[0, 0], [0, 0]])))
        self.assertTrue(equivalent(conn([[R(1, 2)]]), conn([[R(3, 2)]])))

    def test_joint_labels(self):
        a = conn([[R(1, 2), 0], [0, 0]], [[0, 0], [0, R(1, 3)]])
        b = conn([[R(3, 2), 0], [0, 1]], [[1, 0], [0, R(4, 3)]])
        c = conn([[R(1, 2), 0], [0, 0]], [[R(1, 3), 0], [0, 0]])
        self.assertIs(equivalent(a, b), True)
        self.assertIs(equivalent(a, c), False)

    def test_non_semisimple_tuple_is_undecided(self):
        a = conn([[0, 1], [0, 0]], [[0, 0], [0, 0]])
        self.assertIsNone(equivalent(a, a))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            equivalent(conn([[0]]), conn([[0, 0], [0, 0]]))

    def test_randomized_oracle_agreement(self):
        rng = random.Random(1234)
        labels = [R(0), R(1, 2), R(1, 3), R(2, 3), R(1, 4), R(3, 4)]
        for _ in range(200):
            n = rng.randint(1, 3)
            diag_a = [rng.choice(labels) + rng.randint(-2, 2) for _ in range(n)]
            shift = [rng.randint(-2, 2) for _ in range(n)]
            a = linalg.diagonal(diag_a)
            shifted = linalg.diagonal([x + d for x, d in zip(diag_a, shift)])
            p = _random_invertible(rng, n)
            conjugated = p.inv() * shifted * p
            self.assertTrue(equivalent(ConstantTorusConnection.single(a), ConstantTorusConnection.single(conjugated)))

            x = LaurentMatrix.from_rows(
                [[monomial(1, shift[i]) if i == j else monomial(0, 0) for j in range(n)] for i in range(n)]
            )
            report = verify_gauge(x, ConstantTorusConnection.single(shifted), ConstantTorusConnection.single(a))
            self.assertTrue(report.ok)

            used = {linalg.mod_one(v) for v in diag_a}
            fresh = next(v for v in (R(1, 5), R(2, 5), R(1, 7)) if v not in used)
            separated = linalg.diagonal([fresh] + diag_a[1:])
            self.assertFalse(equivalent(ConstantTorusConnection.single(a), ConstantTorusConnection.single(separated)))

    def _assert_equivalence_relation(self, pool):
        for a in pool:
            self.assertIs(equivalent(a, a), True)
        verdicts = {}
        for i, a in enumerate(pool):
            for j, b in enumerate(pool):
                verdicts[i, j] = equivalent(a, b)
                self.assertIsNotNone(verdicts[i, j])
        for i in range(len(pool)):
            for j in range(len(pool)):
                self.assertEqual(verdicts[i, j], verdicts[j, i])
                for k in range(len(pool)):
                    if verdicts[i, j] and verdicts[j, k]:
                        self.assertTrue(verdicts[i, k], msg=f"{i} ~ {j} ~ {k}")

    def test_relation_laws_on_gm(self):
        rng = random.Random(808)
        pool = []
        for _ in range(15):
            kind = rng.randrange(3)
            if kind == 0:
                m = linalg.diagonal([R(1, 2) + rng.randint(-2, 2), R(rng.randint(-2, 2))])
            elif kind == 1:
                m = linalg.diagonal([R(1, 2) + rng.randint(-2, 2), R(1, 2) + rng.randint(-2, 2)])
            else:
                s = rng.randint(-2, 2)
                m = linalg.dense([[R(1, 3) + s, 1], [0, R(1, 3) + s]])
            p = _random_invertible(rng, 2)
            pool.append(ConstantTorusConnection.single(p.inv() * m * p))
        self._assert_equivalence_relation(pool)
        self.assertTrue(any(equivalent(a, b) for a in pool for b in pool if a is not b))

    def test_relation_laws_on_rank_two_torus(self):
        rng = random.Random(909)
        labels = [(R(0), R(1, 2)), (R(1, 3), R(0)), (R(1, 2), R(1, 2))]
        pool = []
        for _ in range(12):
            pairs = [rng.choice(labels[:2]), labels[2]]
            rng.shuffle(pairs)
            first = [x + rng.randint(-1, 1) for x, _ in pairs]
            second = [y + rng.randint(-1, 1) for _, y in pairs]
            pool.append(ConstantTorusConnection(2, 2, (linalg.diagonal(first), linalg.diagonal(second))))
        self._assert_equivalence_relation(pool)


class GaugeTest(unittest.TestCase):
    def test_scalar_shift(self):
        x = LaurentMatrix.from_rows([[monomial(1, 1)]])
        self.assertTrue(verify_gauge(x, conn([[1]]), conn([[0]])).ok)

    def test_identity_gauge(self):
        x = LaurentMatrix.from_rows([[monomial(1, 0), monomial(0, 0)], [monomial(0, 0), monomial(1, 0)]])
        a = conn([[1, 2], [3, 4]])
        self.assertTrue(verify_gauge(x, a, a).ok)

    def test_diagonal_shift_certifies_equivalence(self):
        x = LaurentMatrix.from_rows([[monomial(1, 0), monomial(0, 0)], [monomial(0, 0), monomial(1, 1)]])
        self.assertTrue(verify_gauge(x, conn([[0, 0], [0, 1]]), conn([[0, 0], [0, 0]])).ok)

    def test_failing_entry(self):
        x = LaurentMatrix.from_rows([[monomial(1, 1)]])
        report = verify_gauge(x, conn([[0]]), conn([[0]]))
        self.assertFalse(report.ok)
        self.assertEqual(report.entry, (0, 0))
        self.assertEqual(report.lhs, {"terms": [{"exp": 1, "coef": "1"}]})

    def test_apply_scalar_shift(self):
        a = conn([[R(1, 2), 1], [0, 2]])
        x = LaurentMatrix.from_rows([[monomial(1, 1), monomial(0, 0)], [monomial(0, 0), monomial(1, 1)]])
        result = apply_gauge(x, a)
        self.assertTrue(result.is_constant)
        self.assertEqual(result.as_connection(), conn([[R(3, 2), 1], [0, 3]]))

    def test_apply_constant_gauge(self):
        a = conn([[1, 2], [0, 3]])
        x = LaurentMatrix.from_rows([[monomial(1, 0), monomial(1, 0)], [monomial(0, 0), monomial(1, 0)]])
        p = linalg.dense([[1, 1], [0, 1]])
        result = apply_gauge(x, a)
        self.assertTrue(result.is_constant)
        self.assertEqual(result.as_connection(), ConstantTorusConnection.single(p.inv() * a.matrices[0] * p))

    def test_apply_non_constant(self):
        x = LaurentMatrix.from_rows([[monomial(1, 0), monomial(1, 1)], [monomial(0, 0), monomial(1, 0)]])
        result = apply_gauge(x, trivial_connection(1, 2))
        self.assertFalse(result.is_constant)

    def test_non_unit_determinant(self):
        one_plus_t = laurent([(0, 1), (1, 1)])
        x = LaurentMatrix.from_rows([[monomial(1, 0), monomial(0, 0)], [monomial(0, 0), one_plus_t]])
        with self.assertRaises(NonUnitDeterminant):
            apply_gauge(x, trivial_connection(1, 2))

    def test_class_invariant_under_constant_results(self):
        rng = random.Random(99)
        checked = 0
        for _ in range(40):
            n = rng.randint(1, 3)
            a = linalg.diagonal([R(rng.randint(0, 5), rng.choice((1, 2, 3))) for _ in range(n)])
            p = _random_invertible(rng, n)
            shifts = [rng.randint(-2, 2) for _ in range(n)]
            rows = []
            for i in range(n):
                rows.append([laurent([(shifts[i], QQ.to_sympy(v))]) for v in p.to_list()[i]])
            x = LaurentMatrix.from_rows(rows)
            alpha = ConstantTorusConnection.single(a)
            result = apply_gauge(x, alpha)
            if result.is_constant:
                checked += 1
                self.assertEqual(monodromy_class(result.as_connection()), monodromy_class(alpha))
        self.assertGreater(checked, 0)

    def test_unipotent_gauges_between_integer_spaced_eigenvalues(self):
        rng = random.Random(4242)
        one, zero = monomial(1, 0), monomial(0, 0)
        for _ in range(20):
            a = R(rng.randint(-3, 3), rng.choice((1, 2, 3)))
            c = R(rng.choice((-2, -1, 1, 3)), rng.choice((1, 2)))
            k = rng.choice((1, 2))
            cases = (
                ([[one, monomial(c, k)], [zero, one]], [a, a + k]),
                ([[one, zero], [monomial(c, k), one]], [a + k, a]),
            )
            for rows, spectrum in cases:
                alpha = ConstantTorusConnection.single(linalg.diagonal(spectrum))
                p = _random_invertible(rng, 2) if rng.random() < 0.5 else linalg.identity(2)
                p_rows = [[QQ.to_sympy(v) for v in row] for row in p.to_list()]
                product = [
                    [sum((rows[i][m] * monomial(p_rows[m][j], 0) for m in range(2)), zero) for j in range(2)]
                    for i in range(2)
                ]
                x = LaurentMatrix.from_rows(product)
                result = apply_gauge(x, alpha)
                self.assertTrue(result.is_constant)
                transformed = result.as_connection()
                self.assertEqual(transformed, ConstantTorusConnection.single(p.inv() * alpha.matrices[0] * p))
                self.assertEqual(monodromy_class(transformed), monodromy_class(alpha))
                self.assertTrue(verify_gauge(x, transformed, alpha).ok)

    def test_laurent_json(self):
        payload = [[{"terms": [{"exp": -1, "coef": "2/3"}]}]]
        x = LaurentMatrix.from_json(payload)
        self.assertEqual(x.to_json(), payload)
        with self.assertRaises(MalformedInput):
            LaurentMatrix.from_json([[{"terms": [{"exp": "a", "coef": "1"}]}]])


class TensorEnumerationTest(unittest.TestCase):
    def test_clebsch_gordan(self):
        j2 = monodromy_class(conn([[0, 1], [0, 0]]))
        self.assertEqual(tensor_monodromy(j2, j2).blocks, ((R(0), (3, 1)),))

    def test_labels_add(self):
        half = monodromy_class(conn([[R(1, 2)]]))
        self.assertTrue(tensor_monodromy(half, half).is_trivial)
        third = monodromy_class(conn([[R(1, 3)]]))
        self.assertEqual(dual_monodromy(third).blocks, ((R(2, 3), (1,)),))

    def test_enumeration(self):
        self.assertEqual(len(enumerate_monodromy_classes(1, [0, R(1, 2)])), 2)
        self.assertEqual(len(enumerate_monodromy_classes(1, [0])), 1)
        self.assertEqual(len(enumerate_monodromy_classes(2, [0])), 2)
        self.assertEqual(len(enumerate_monodromy_classes(2, [0, R(1, 2)])), 5)

    def test_connection_json(self):
        payload = {"l": 1, "n": 2, "matrices": [[["0", "1"], ["0", "0"]]]}
        c = ConstantTorusConnection.from_json(payload)
        self.assertEqual(c.to_json(), payload)
        with self.assertRaises(MalformedInput):
            ConstantTorusConnection.from_json({"l": 2, "n": 2, "matrices": [[["0", "1"], ["0", "0"]]]})


if __name__ == "__main__":
    unittest.main()
