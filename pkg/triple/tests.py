from itertools import combinations

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import MatrixShapeError, PartialIsometryError, PreconditionError
from core.linalg import operator_norm
from spaces.bases import build_column, build_hnk, build_phi, build_row, intersect

from .products import peirce_decompose, peirce_projection, ternary, triple_product
from .relations import Relation, check_hopping, is_minimal, relation


def unit(i, j, size=2):
    m = np.zeros((size, size), dtype=np.complex128)
    m[i, j] = 1
    return m


class TripleProductTests(SimpleTestCase):
    def test_partial_isometry_fixed(self):
        for v in build_hnk(4, 2).basis:
            np.testing.assert_allclose(triple_product(v[0], v[0], v[0]), v[0], atol=1e-12)

    def test_outer_symmetry(self):
        rng = np.random.default_rng(1)
        a, b, c = (rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4)) for _ in range(3))
        np.testing.assert_allclose(triple_product(a, b, c), triple_product(c, b, a))

    def test_polarization(self):
        rng = np.random.default_rng(2)
        a = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
        np.testing.assert_allclose(triple_product(a, a, a), a @ a.conj().T @ a)

    def test_mutually_collinear_product_vanishes(self):
        for n, k in [(3, 2), (4, 2), (5, 3)]:
            b = [e[0] for e in build_hnk(n, k).basis]
            for i, j, l in combinations(range(n), 3):
                self.assertLess(np.abs(triple_product(b[i], b[j], b[l])).max(), 1e-12)

    def test_shape_mismatch(self):
        with self.assertRaises(MatrixShapeError):
            triple_product(np.eye(2), np.eye(3), np.eye(2))

    def test_blockwise_tuples(self):
        phi = intersect([build_hnk(3, 1), build_hnk(3, 3)])
        u = phi.element(1)
        out = ternary(u, u, u)
        self.assertIsInstance(out, tuple)
        for block, expected in zip(out, u):
            np.testing.assert_allclose(block, expected)


class PeirceTests(SimpleTestCase):
    def test_examples(self):
        v = unit(0, 0)
        x2, x1, x0 = peirce_decompose(v, unit(1, 1))
        np.testing.assert_array_equal(x2, 0)
        np.testing.assert_array_equal(x1, 0)
        np.testing.assert_array_equal(x0, unit(1, 1))
        x2, x1, x0 = peirce_decompose(v, unit(0, 1))
        np.testing.assert_array_equal(x1, unit(0, 1))
        np.testing.assert_array_equal(x2 + x0, 0)
        x2, x1, x0 = peirce_decompose(v, v)
        np.testing.assert_array_equal(x2, v)

    def test_not_a_partial_isometry(self):
        with self.assertRaisesRegex(PartialIsometryError, "residual|v v\\* v"):
            peirce_decompose(2 * unit(0, 0), unit(0, 1))

    def test_completeness_and_contractivity(self):
        rng = np.random.default_rng(3)
        v = build_hnk(4, 2).element(1)[0]
        projections = [peirce_projection(v, j) for j in (0, 1, 2)]
        for _ in range(100):
            x = rng.normal(size=v.shape) + 1j * rng.normal(size=v.shape)
            parts = peirce_decompose(v, x)
            np.testing.assert_allclose(parts.x2 + parts.x1 + parts.x0, x, atol=1e-12)
            norm = operator_norm(x)
            for p in projections:
                self.assertLessEqual(operator_norm(p(x)), norm + 1e-10)


class RelationTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(relation(unit(0, 0), unit(1, 1)), Relation.ORTHOGONAL)
        self.assertEqual(relation(unit(0, 0), np.eye(2)), Relation.LEQ)
        self.assertEqual(relation(np.eye(2), unit(0, 0)), Relation.GEQ)
        self.assertEqual(relation(unit(0, 0), unit(0, 1) + unit(1, 0)), Relation.OTHER)

    def test_built_bases_are_collinear(self):
        for space in [build_column(3), build_row(3), build_hnk(4, 2), build_phi(3)]:
            for i, j in combinations(range(1, space.n + 1), 2):
                self.assertEqual(relation(space.element(i), space.element(j)), Relation.COLLINEAR)

    def test_rejects_non_partial_isometry(self):
        with self.assertRaises(PartialIsometryError):
            relation(np.ones((2, 2)), np.eye(2))


class MinimalityTests(SimpleTestCase):
    def test_basis_elements_minimal(self):
        for space in [build_column(3), build_hnk(4, 2), build_phi(3)]:
            for i in range(1, space.n + 1):
                self.assertTrue(is_minimal(space.element(i), space.basis))

    def test_normalized_sum_minimal(self):
        space = build_hnk(4, 2)
        v = space.combine([1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0])
        self.assertTrue(is_minimal(v, space.basis))

    def test_identity_not_minimal_in_full_matrices(self):
        units = [unit(0, 0), unit(1, 1), unit(0, 1), unit(1, 0)]
        self.assertFalse(is_minimal(np.eye(2), units))

    def test_outside_span(self):
        with self.assertRaises(PreconditionError):
            is_minimal(unit(0, 1), [unit(0, 0), unit(1, 1)])


class HoppingTests(SimpleTestCase):
    def test_grid_bases_hop(self):
        b = build_hnk(4, 2).basis
        self.assertTrue(check_hopping(b[0], b[1], b[2]))
        self.assertTrue(check_hopping(b[0], b[1], b[1]))

    def test_precondition(self):
        rng = np.random.default_rng(4)
        u, v = (unit(0, 0), unit(1, 1))
        w = np.linalg.qr(rng.normal(size=(2, 2)))[0]
        with self.assertRaises(PreconditionError):
            check_hopping(u, v, w)
