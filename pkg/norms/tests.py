from math import sqrt

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import ConfigurationError, MatrixShapeError
from spaces.bases import build_column, build_hnk, build_intersection, build_phi, build_row

from .distances import (
    SpaceKey,
    basis_map_bounds,
    closed_form_distance,
    closed_form_trend,
    distance_table,
    distance_trend,
    pair_bounds,
)
from .levels import LevelElement, column_witness, homogeneity_defect, level_norm, row_witness
from .serializers import CbEstimateSerializer


class LevelNormTests(SimpleTestCase):
    def test_level_one_is_euclidean(self):
        rng = np.random.default_rng(5)
        for space in [build_hnk(4, 2), build_phi(3), build_intersection(4, [1, 3])]:
            for _ in range(20):
                lam = rng.normal(size=space.n) + 1j * rng.normal(size=space.n)
                x = LevelElement(space, lam.reshape(1, 1, -1))
                self.assertAlmostEqual(level_norm(x), np.linalg.norm(lam), delta=1e-8)

    def test_row_and_column_witnesses(self):
        for n in range(2, 7):
            for k in range(1, n + 1):
                space = build_hnk(n, k)
                self.assertAlmostEqual(level_norm(row_witness(space)), sqrt(k), delta=1e-9)
                self.assertAlmostEqual(level_norm(column_witness(space)), sqrt(n - k + 1), delta=1e-9)

    def test_intersection_takes_max(self):
        space = build_intersection(5, [2, 4])
        self.assertAlmostEqual(level_norm(row_witness(space)), 2.0, delta=1e-9)
        self.assertAlmostEqual(level_norm(column_witness(space)), 2.0, delta=1e-9)

    def test_shape_validation(self):
        with self.assertRaises(MatrixShapeError):
            LevelElement(build_column(3), np.zeros((1, 1, 2)))

    def test_homogeneity(self):
        for space in [build_hnk(4, 2), build_row(3), build_phi(3)]:
            self.assertTrue(homogeneity_defect(space, samples=4, levels=2)["pass"])


class ClosedFormTests(SimpleTestCase):
    def test_values(self):
        C, R = SpaceKey("C"), SpaceKey("R")
        self.assertEqual(closed_form_distance(R, C, 5), 5.0)
        self.assertAlmostEqual(closed_form_distance(C, SpaceKey("H", 2), 6), sqrt(2 * 6 / 5))
        self.assertAlmostEqual(closed_form_distance(SpaceKey("H", 1), C, 6), 1.0)
        self.assertAlmostEqual(closed_form_distance(R, SpaceKey("H", 6), 6), 1.0)
        self.assertEqual(closed_form_distance(C, C, 4), 1.0)
        self.assertIsNone(closed_form_distance(SpaceKey("Phi"), C, 4))

    def test_trend_decreases_to_limit(self):
        for m in range(0, 4):
            values = [v for _, v in closed_form_trend(m, range(m + 1, 10001))]
            self.assertTrue(all(b < a for a, b in zip(values, values[1:])) or m == 0)
            self.assertAlmostEqual(values[-1], sqrt(m + 1), delta=1e-3)

    def test_token_parsing(self):
        self.assertEqual(SpaceKey.parse("Rn"), SpaceKey("R"))
        self.assertEqual(SpaceKey.parse("Phin"), SpaceKey("Phi"))
        self.assertEqual(SpaceKey.parse("Hnk", k=3), SpaceKey("H", 3))
        self.assertEqual(SpaceKey.parse("Hn^2"), SpaceKey("H", 2))
        self.assertEqual(SpaceKey.parse("Hnk'", k=2).level(5), 4)
        with self.assertRaises(ConfigurationError):
            SpaceKey.parse("Xn")
        with self.assertRaises(ConfigurationError):
            SpaceKey.parse("Hnk")


class WitnessBoundTests(SimpleTestCase):
    def test_identity_map(self):
        space = build_hnk(4, 2)
        estimate = basis_map_bounds(space, space, samples=5, levels=2)
        self.assertAlmostEqual(estimate.product_lower, 1.0, delta=1e-9)

    def test_row_column(self):
        for n in range(2, 7):
            estimate = pair_bounds(SpaceKey("R"), SpaceKey("C"), n, samples=5, levels=2)
            self.assertAlmostEqual(estimate.product_lower, n, delta=1e-6)
            self.assertAlmostEqual(estimate.forward_lower, sqrt(n), delta=1e-6)

    def test_column_against_hnk(self):
        for n in range(2, 7):
            for m in range(0, min(3, n - 1) + 1):
                estimate = pair_bounds(SpaceKey("C"), SpaceKey("H", m + 1), n, samples=5, levels=2)
                self.assertAlmostEqual(estimate.forward_lower, sqrt(m + 1), delta=1e-6)
                self.assertAlmostEqual(estimate.inverse_lower, sqrt(n / (n - m)), delta=1e-6)
                self.assertAlmostEqual(estimate.product_lower, sqrt((m + 1) * n / (n - m)), delta=1e-6)

    def test_both_directions_multiply_past_one(self):
        a, b = build_hnk(5, 2), build_phi(5)
        there = basis_map_bounds(a, b, samples=3, levels=2)
        back = basis_map_bounds(b, a, samples=3, levels=2)
        self.assertGreaterEqual(there.forward_lower * back.forward_lower, 1 - 1e-9)

    def test_levels_are_monotone(self):
        estimate = basis_map_bounds(build_column(4), build_hnk(4, 2), samples=5, levels=3)
        forward = estimate.forward_by_level
        self.assertTrue(all(b >= a for a, b in zip(forward, forward[1:])))

    def test_dimension_mismatch(self):
        with self.assertRaises(MatrixShapeError):
            basis_map_bounds(build_column(2), build_row(3))

    def test_serializer(self):
        data = CbEstimateSerializer(pair_bounds(SpaceKey("R"), SpaceKey("C"), 3, samples=2, levels=1).as_dict()).data
        self.assertEqual(data["pair"], "R_3:C_3")
        self.assertAlmostEqual(data["product_lower"], 3.0, delta=1e-6)


class TableTests(SimpleTestCase):
    def test_table_contents(self):
        rows = distance_table(3, samples=2, levels=1, workers=2)
        # C, R, H^1, H^2, H^3, Phi
        self.assertEqual(len(rows), 15)
        by_pair = {row["pair"]: row for row in rows}
        self.assertAlmostEqual(by_pair["C_3:R_3"]["product_lower"], 3.0, delta=1e-6)
        self.assertTrue(by_pair["C_3:R_3"]["diverges"])
        self.assertFalse(by_pair["C_3:H_3^2"]["diverges"])
        self.assertTrue(by_pair["H_3^3:Phi_3"]["diverges"])

    def test_default_witness_set(self):
        rows = distance_table(2, workers=2)
        self.assertEqual(len(rows), 10)
        for row in rows:
            self.assertIn("50 random per level p <= 4", row["witness_description"])

    def test_divergent_pairs_grow(self):
        for m in (0, 1):
            trend = distance_trend(SpaceKey("Phi"), SpaceKey("H", m + 1), range(m + 2, 7), samples=2, levels=1)
            self.assertTrue(trend["monotone_growth"])
            for point in trend["points"]:
                self.assertGreaterEqual(point["product_lower"], sqrt(point["n"] / (m + 1)) - 1e-9)
        trend = distance_trend(SpaceKey("H", 1), SpaceKey("H", 1, dual=True), range(2, 7), samples=2, levels=1)
        self.assertTrue(trend["monotone_growth"])
