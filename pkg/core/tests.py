import numpy as np
from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError
from scipy.stats import unitary_group

from .config import ToleranceConfig
from .exceptions import ConfigurationError, MatrixShapeError, NonFiniteError, NormConvergenceError
from .linalg import (
    adjoint,
    as_matrix,
    block_assemble,
    direct_sum,
    element_norm,
    linear_combination,
    operator_norm,
    svd_norm,
)
from .serializers import ElementField, MatrixField, matrix_from_json, matrix_to_json
from .span import coordinates, same_span, span_rank


def crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


class OperatorNormTests(SimpleTestCase):
    def test_small_examples(self):
        self.assertAlmostEqual(operator_norm(np.eye(2)), 1.0, places=12)
        self.assertAlmostEqual(operator_norm([[0, 2], [0, 0]]), 2.0, places=12)
        self.assertEqual(operator_norm(np.zeros((3, 2))), 0.0)

    def test_matches_svd_oracle(self):
        rng = np.random.default_rng(7)
        for shape in [(20, 15), (15, 20), (1, 9), (9, 1), (6, 6)]:
            a = crandn(rng, *shape)
            self.assertLess(abs(operator_norm(a) - svd_norm(a)), 1e-9 * svd_norm(a))

    def _with_singular_values(self, rows, cols, values, seed):
        u = unitary_group.rvs(rows, random_state=seed)
        v = unitary_group.rvs(cols, random_state=seed + 1)
        s = np.zeros((rows, cols))
        s[np.arange(len(values)), np.arange(len(values))] = values
        return u @ s @ v

    def test_close_top_singular_values(self):
        for gap in (1e-3, 1e-4, 1e-6):
            a = self._with_singular_values(5, 5, [1.0, 1.0 - gap, 0.5, 0.3, 0.1], seed=21)
            self.assertLessEqual(abs(operator_norm(a) - svd_norm(a)), 1e-12 * svd_norm(a), gap)

    def test_repeated_top_singular_value(self):
        a = self._with_singular_values(5, 5, [1.0, 1.0, 0.5, 0.3, 0.1], seed=31)
        self.assertLessEqual(abs(operator_norm(a) - svd_norm(a)), 1e-12 * svd_norm(a))

    def test_tall_matrix_with_gap(self):
        values = [2.0, 2.0 - 1e-6] + list(np.linspace(1.5, 0.1, 28))
        a = self._with_singular_values(40, 30, values, seed=41)
        self.assertLessEqual(abs(operator_norm(a) - svd_norm(a)), 1e-12 * svd_norm(a))
        self.assertLessEqual(abs(operator_norm(a.conj().T) - svd_norm(a)), 1e-12 * svd_norm(a))

    def test_adjoint_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            a = crandn(rng, 7, 4)
            self.assertAlmostEqual(operator_norm(a), operator_norm(adjoint(a)), delta=1e-10)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(13)
        for trial in range(5):
            a = crandn(rng, 5, 5)
            u = unitary_group.rvs(5, random_state=100 + trial)
            v = unitary_group.rvs(5, random_state=200 + trial)
            self.assertAlmostEqual(operator_norm(u @ a @ v), operator_norm(a), delta=1e-9)

    def test_deterministic_given_seed(self):
        a = crandn(np.random.default_rng(3), 8, 5)
        cfg = ToleranceConfig(seed=99)
        self.assertEqual(operator_norm(a, cfg), operator_norm(a, cfg))

    def test_non_convergence_names_shape(self):
        rng = np.random.default_rng(5)
        a = crandn(rng, 6, 4)
        cfg = ToleranceConfig(max_iterations=1)
        with self.assertRaisesRegex(NormConvergenceError, "6x4"):
            operator_norm(a, cfg)

    def test_rejects_non_finite(self):
        with self.assertRaises(NonFiniteError):
            operator_norm([[np.nan, 0.0]])


class BlockTests(SimpleTestCase):
    def test_block_assemble_examples(self):
        m = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_array_equal(block_assemble([[m]]), m)
        scalars = [[np.array([[1.0]]), np.array([[2.0]])], [np.array([[3.0]]), np.array([[4.0]])]]
        np.testing.assert_array_equal(block_assemble(scalars), m)
        e1 = np.array([[1.0], [0.0]])
        e2 = np.array([[0.0], [1.0]])
        np.testing.assert_array_equal(block_assemble([[e1, e2]]), np.eye(2))

    def test_block_assemble_shape_mismatch(self):
        with self.assertRaisesRegex(MatrixShapeError, r"\(0,1\)"):
            block_assemble([[np.zeros((2, 2)), np.zeros((2, 1))]])

    def test_zero_blocks_have_zero_norm(self):
        z = np.zeros((3, 2))
        self.assertEqual(operator_norm(block_assemble([[z, z], [z, z]])), 0.0)

    def test_direct_sum(self):
        np.testing.assert_array_equal(direct_sum([np.eye(2)]), np.eye(2))
        np.testing.assert_array_equal(direct_sum([np.eye(1), np.eye(1)]), np.eye(2))
        out = direct_sum([np.ones((2, 3)), np.ones((1, 1))])
        self.assertEqual(out.shape, (3, 4))
        self.assertEqual(out[2, 3], 1.0)
        self.assertEqual(out[0, 3], 0.0)
        with self.assertRaises(MatrixShapeError):
            direct_sum([])

    def test_direct_sum_norm_is_max(self):
        rng = np.random.default_rng(17)
        a = crandn(rng, 3, 2)
        b = 3 * crandn(rng, 2, 4)
        self.assertAlmostEqual(
            operator_norm(direct_sum([a, b])), max(operator_norm(a), operator_norm(b)), delta=1e-10
        )

    def test_tuple_elements(self):
        a = (np.eye(2), 2 * np.eye(1))
        self.assertAlmostEqual(element_norm(a), 2.0, places=12)
        combo = linear_combination([1, 1j], [a, a])
        np.testing.assert_allclose(combo[1], np.array([[2 + 2j]]))


class ToleranceConfigTests(SimpleTestCase):
    def test_defaults(self):
        cfg = ToleranceConfig()
        self.assertEqual((cfg.structural_tol, cfg.iterative_tol, cfg.max_iterations, cfg.seed), (1e-9, 1e-12, 10000, 42))

    def test_invalid_values(self):
        with self.assertRaises(ConfigurationError):
            ToleranceConfig(structural_tol=0)
        with self.assertRaises(ConfigurationError):
            ToleranceConfig(structural_tol=1e-13, iterative_tol=1e-12)
        with self.assertRaises(ConfigurationError):
            ToleranceConfig(seed=-1)

    def test_overrides_ignore_none(self):
        cfg = ToleranceConfig()
        self.assertIs(cfg.with_overrides(seed=None), cfg)
        self.assertEqual(cfg.with_overrides(seed=7).seed, 7)


class SpanTests(SimpleTestCase):
    def test_rank_and_coordinates(self):
        e11 = np.array([[1, 0], [0, 0]])
        e22 = np.array([[0, 0], [0, 1]])
        self.assertEqual(span_rank([e11, e22, e11 + e22], 1e-9), 2)
        np.testing.assert_allclose(coordinates(2 * e11 - e22, [e11, e22]), [2, -1], atol=1e-12)
        self.assertTrue(same_span([e11, e22], [e11 + e22, e11 - e22], 1e-9))
        self.assertFalse(same_span([e11], [e22], 1e-9))


class MatrixSerializationTests(SimpleTestCase):
    def test_json_format(self):
        payload = matrix_to_json(np.array([[1 + 2j, 0.1]]))
        self.assertEqual(payload, {"rows": 1, "cols": 2, "data": [[1.0, 2.0], [0.1, 0.0]]})

    def test_round_trip_is_bit_exact(self):
        a = crandn(np.random.default_rng(23), 3, 4)
        np.testing.assert_array_equal(matrix_from_json(matrix_to_json(a)), a)

    def test_field_validation(self):
        field = MatrixField()
        m = field.to_internal_value({"rows": 1, "cols": 1, "data": [[0.5, -1.0]]})
        self.assertEqual(m[0, 0], 0.5 - 1j)
        with self.assertRaises(ValidationError):
            field.to_internal_value({"rows": 2, "cols": 1, "data": [[1, 0]]})
        with self.assertRaises(ValidationError):
            field.to_internal_value([1, 2])

    def test_element_field_reads_tuples(self):
        value = ElementField().to_internal_value(
            [{"rows": 1, "cols": 1, "data": [[1, 0]]}, {"rows": 1, "cols": 1, "data": [[2, 0]]}]
        )
        self.assertIsInstance(value, tuple)
        self.assertEqual(len(value), 2)
        self.assertEqual(as_matrix(value[1])[0, 0], 2)
