from itertools import combinations

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import CombinatorialError, MatrixShapeError
from core.linalg import element_norm, operator_norm
from triple.products import partial_isometry_residual

from .bases import (
    build_column,
    build_hnk,
    build_intersection,
    build_phi,
    build_row,
    build_uij,
    intersect,
    orthonormality_defect,
)
from .grid import check_grid_relation, grid_closure_rank, ones_decomposition, sum_identities
from .serializers import OperatorBasisSerializer


class BuilderExampleTests(SimpleTestCase):
    def test_column_and_row(self):
        np.testing.assert_array_equal(build_column(2).element(1)[0], [[1], [0]])
        np.testing.assert_array_equal(build_row(2).element(2)[0], [[0, 1]])
        self.assertAlmostEqual(element_norm(build_column(2).combine([1, 1])), np.sqrt(2), places=12)

    def test_dimension_checks(self):
        for builder in (build_column, build_row, build_phi):
            with self.assertRaises(CombinatorialError):
                builder(0)
        with self.assertRaises(CombinatorialError):
            build_hnk(3, 4)

    def test_h21(self):
        space = build_hnk(2, 1)
        np.testing.assert_array_equal(space.element(1)[0], [[0], [1]])
        np.testing.assert_array_equal(space.element(2)[0], [[-1], [0]])

    def test_h32(self):
        b1 = build_hnk(3, 2).element(1)[0]
        # rows {1},{2},{3}; columns {1},{2},{3}
        expected = np.zeros((3, 3))
        expected[1, 2] = 1
        expected[2, 1] = -1
        np.testing.assert_array_equal(b1, expected)

    def test_shapes(self):
        self.assertEqual(build_hnk(4, 2).element(1)[0].shape, (6, 4))
        self.assertEqual(build_phi(3).element(1)[0].shape, (7, 7))
        np.testing.assert_array_equal(build_phi(1).element(1)[0], [[1]])

    def test_basis_is_read_only(self):
        with self.assertRaises(ValueError):
            build_hnk(3, 2).element(1)[0][0, 0] = 5


class OrthonormalityTests(SimpleTestCase):
    def test_every_built_space_is_hilbertian(self):
        spaces = [build_column(4), build_row(4), build_phi(4)]
        spaces += [build_hnk(n, k) for n in range(2, 6) for k in range(1, n + 1)]
        for space in spaces:
            report = orthonormality_defect(space)
            self.assertTrue(report["pass"], report)

    def test_basis_elements_are_partial_isometries(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                for element in build_hnk(n, k).basis:
                    self.assertLess(partial_isometry_residual(element), 1e-12)

    def test_sum_identities(self):
        for n in range(1, 7):
            for k in range(1, n + 1):
                self.assertTrue(sum_identities(n, k)["pass"], (n, k))


class IntersectionTests(SimpleTestCase):
    def test_single_part(self):
        column = build_column(3)
        single = intersect([column])
        for lam in ([1, 2, 3], [1j, 0, -1]):
            self.assertAlmostEqual(element_norm(single.combine(lam)), element_norm(column.combine(lam)))

    def test_row_column(self):
        both = intersect([build_row(2), build_column(2)])
        self.assertAlmostEqual(element_norm(both.element(1)), 1.0, places=12)
        self.assertEqual(both.name, "R_2 ∩ C_2")
        self.assertEqual(len(both.components), 2)

    def test_all_levels_match_phi(self):
        rng = np.random.default_rng(8)
        n = 4
        levels = build_intersection(n, range(1, n + 1))
        phi = build_phi(n)
        for _ in range(20):
            lam = rng.normal(size=n) + 1j * rng.normal(size=n)
            self.assertAlmostEqual(element_norm(levels.combine(lam)), element_norm(phi.combine(lam)), delta=1e-9)

    def test_dimension_mismatch(self):
        with self.assertRaises(MatrixShapeError):
            intersect([build_column(2), build_column(3)])


class GridTests(SimpleTestCase):
    def test_one_is_signed_unit(self):
        # I={1}, c=2, J={3} over H_3^2: epsilon({1},2,{3}) = +1 at row {3}, column {1}
        u = build_uij(3, 2, {1}, {3})
        expected = np.zeros((3, 3))
        expected[2, 0] = 1
        np.testing.assert_array_equal(u, expected)

    def test_overlapping_pair(self):
        u = build_uij(3, 2, {1}, {1})
        self.assertEqual(np.count_nonzero(u), 1)
        self.assertEqual(abs(u[0, 0]), 1)

    def test_wrong_cardinalities(self):
        with self.assertRaises(CombinatorialError):
            build_uij(3, 2, {1, 2}, {3})

    def test_ones_decomposition(self):
        for n in range(1, 7):
            for k in range(1, n + 1):
                for c in range(1, n + 1):
                    self.assertTrue(ones_decomposition(n, k, c)["pass"], (n, k, c))

    def test_grid_relation(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                report = check_grid_relation(n, k)
                self.assertTrue(report["pass"], report["failures"])

    def test_grid_closure(self):
        for n, k in [(3, 2), (4, 2), (5, 3)]:
            report = grid_closure_rank(n, k)
            self.assertEqual(report["rank"], report["expected"])

    def test_collinear_pairs_have_unit_norm_sums(self):
        b = build_hnk(4, 3).basis
        for i, j in combinations(range(4), 2):
            self.assertAlmostEqual(operator_norm(b[i][0] + b[j][0]), np.sqrt(2), places=9)


class SerializerTests(SimpleTestCase):
    def test_basis_payload(self):
        data = OperatorBasisSerializer(build_hnk(2, 1)).data
        self.assertEqual(data["name"], "H_2^1")
        self.assertEqual(data["components"][0]["k"], 1)
        self.assertEqual(data["basis"][1][0]["data"], [[-1.0, 0.0], [0.0, 0.0]])
