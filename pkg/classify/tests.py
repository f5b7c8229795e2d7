from itertools import combinations

import numpy as np
from django.test import SimpleTestCase
from scipy.stats import unitary_group

from core.exceptions import ClassificationError, PartialIsometryError, PreconditionError
from core.linalg import element_norm
from spaces.bases import build_column, build_hnk, build_intersection, build_phi, build_row

from .serializers import ClassificationReportSerializer, ClassifyInputSerializer
from .services import (
    check_consistency,
    classify,
    detect_components,
    invariants,
    projection_product,
    tro_dichotomy,
)


def unit(i, j, size=2):
    m = np.zeros((size, size), dtype=np.complex128)
    m[i - 1, j - 1] = 1
    return m


def conjugated(space, seed):
    """U b_i V for Haar unitaries U, V"""
    rows, cols = space.components[0].rows, space.components[0].cols
    u = unitary_group.rvs(rows, random_state=seed)
    v = unitary_group.rvs(cols, random_state=seed + 1)
    return [u @ b[0] @ v for b in space.basis]


class InvariantTests(SimpleTestCase):
    def test_column_and_row(self):
        self.assertEqual(invariants(build_column(4).basis), (1, 4))
        self.assertEqual(invariants(build_row(4).basis), (4, 1))

    def test_phi(self):
        for n in range(2, 5):
            self.assertEqual(invariants(build_phi(n).basis), (n, n))

    def test_hnk(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                self.assertEqual(invariants(build_hnk(n, k).basis), (k, n - k + 1), (n, k))

    def test_non_collinear_pair_is_named(self):
        with self.assertRaisesMessage(PreconditionError, "u_1 and u_2"):
            invariants([unit(1, 1), unit(1, 1)])

    def test_not_a_partial_isometry(self):
        with self.assertRaises(PartialIsometryError):
            invariants([2 * unit(1, 1)])

    def test_products_do_not_depend_on_order(self):
        family = [b[0] for b in build_hnk(5, 3).basis]
        rng = np.random.default_rng(3)
        for size in (2, 3):
            for J in combinations(range(1, 6), size):
                shuffled = list(rng.permutation(J))
                for side in ("left", "right"):
                    np.testing.assert_allclose(
                        projection_product(family, J, side), projection_product(family, shuffled, side), atol=1e-12
                    )


class ComponentTests(SimpleTestCase):
    def test_single_space(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                self.assertEqual(detect_components(build_hnk(n, k).basis), [k])

    def test_intersections(self):
        self.assertEqual(detect_components(build_intersection(4, [1, 3]).basis), [1, 3])
        self.assertEqual(detect_components(build_phi(4).basis), [1, 2, 3, 4])


class ClassifyTests(SimpleTestCase):
    def test_round_trip(self):
        for n in range(1, 7):
            for size in range(1, n + 1):
                for ks in combinations(range(1, n + 1), size):
                    report = classify(build_intersection(n, ks).basis)
                    self.assertEqual(report.components, ks)
                    self.assertEqual(report.i_R, max(ks))
                    self.assertEqual(report.i_L, n - min(ks) + 1)

    def test_verdicts(self):
        self.assertEqual(classify(build_phi(4).basis).verdict, "Phi_4")
        self.assertEqual(classify(build_intersection(4, [1, 2]).basis).verdict, "H_4^1 ∩ H_4^2")
        self.assertEqual(classify(build_column(5).basis).verdict, "C_5")
        self.assertEqual(classify(build_row(5).basis).verdict, "R_5")
        self.assertEqual(classify(build_hnk(5, 3).basis).verdict, "H_5^3")

    def test_unitary_and_permutation_invariance(self):
        space = build_hnk(5, 3)
        expected = classify(space.basis)
        family = conjugated(space, seed=11)
        self.assertEqual(classify(family), expected)
        for perm in ([4, 2, 0, 1, 3], [1, 0, 2, 4, 3]):
            self.assertEqual(classify([family[p] for p in perm]).components, (3,))

    def test_inconsistent_invariants(self):
        with self.assertRaises(ClassificationError):
            check_consistency(4, 3, 4, [1, 2])
        with self.assertRaises(ClassificationError):
            check_consistency(4, 1, 4, [])
        check_consistency(4, 3, 4, [1, 3])

    def test_serializers(self):
        data = ClassificationReportSerializer(classify(build_intersection(3, [1, 3]).basis).as_dict()).data
        self.assertEqual(data["components"], [1, 3])
        payload = {"family": [{"rows": 1, "cols": 1, "data": [[1.0, 0.0]]}]}
        serializer = ClassifyInputSerializer(data=payload)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(classify(serializer.validated_data["family"]).verdict, "C_1")
        mixed = {"family": [payload["family"][0], [payload["family"][0]]]}
        self.assertFalse(ClassifyInputSerializer(data=mixed).is_valid())


class TroDichotomyTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(tro_dichotomy(build_column(4).basis), "C")
        self.assertEqual(tro_dichotomy(build_row(4).basis), "R")
        self.assertEqual(tro_dichotomy(build_hnk(4, 2).basis), "not_ternary_closed")

    def test_phases(self):
        phases = np.exp(1j * np.array([0.3, 1.1, 2.0]))
        family = [phase * b[0] for phase, b in zip(phases, build_row(3).basis)]
        self.assertEqual(tro_dichotomy(family), "R")
        self.assertAlmostEqual(element_norm(family[0]), 1.0, delta=1e-12)
