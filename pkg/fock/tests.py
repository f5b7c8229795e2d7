import numpy as np
from django.test import SimpleTestCase

from classify.services import detect_components
from core.exceptions import CombinatorialError
from core.linalg import operator_norm

from .operators import (
    FockLevel,
    annihilation,
    car_check,
    creation,
    full_fock_creation,
    unitary_V,
    unitary_W,
    w_sign,
)
from .representation import annihilation_vs_hnk, fock_intersection, fock_vs_hnk


def basis_vector(n, m, subset):
    level = FockLevel(n, m)
    v = np.zeros(level.dim)
    v[level.index(subset)] = 1
    return v


class CreationTests(SimpleTestCase):
    def test_vacuum(self):
        for n in range(1, 5):
            c = creation(n, 0, np.eye(n)[0])
            np.testing.assert_array_equal(c[:, 0], basis_vector(n, 1, {1}))

    def test_sign_of_insertion(self):
        out = creation(3, 1, [0, 1, 0]) @ basis_vector(3, 1, {1})
        np.testing.assert_array_equal(out, -basis_vector(3, 2, {1, 2}))

    def test_antisymmetry(self):
        out = creation(4, 2, np.eye(4)[2]) @ basis_vector(4, 2, {1, 3})
        np.testing.assert_array_equal(out, 0)

    def test_degree_range(self):
        with self.assertRaises(CombinatorialError):
            creation(3, 3, [1, 0, 0])

    def test_annihilation_is_adjoint(self):
        rng = np.random.default_rng(0)
        for n in range(1, 5):
            for m in range(n):
                h = rng.normal(size=n) + 1j * rng.normal(size=n)
                np.testing.assert_array_equal(annihilation(n, m, h), creation(n, m, h).conj().T)
        out = annihilation(3, 1, [0, 1, 0]) @ basis_vector(3, 2, {1, 2})
        np.testing.assert_array_equal(out, -basis_vector(3, 1, {1}))
        h = np.array([0.6, 0.8j])
        vacuum_round_trip = annihilation(2, 0, h) @ creation(2, 0, h)
        np.testing.assert_allclose(vacuum_round_trip, [[1.0]])

    def test_creation_norm_is_vector_norm(self):
        rng = np.random.default_rng(1)
        for n in range(2, 6):
            for m in range(n - 1):
                h = rng.normal(size=n) + 1j * rng.normal(size=n)
                self.assertAlmostEqual(operator_norm(creation(n, m, h)), np.linalg.norm(h), delta=1e-9)


class CarTests(SimpleTestCase):
    def test_single_mode(self):
        c = full_fock_creation(1, 1).toarray()
        np.testing.assert_array_equal(c @ c, 0)
        np.testing.assert_array_equal(c @ c.conj().T + c.conj().T @ c, np.eye(2))

    def test_relations(self):
        for n in (1, 3, 5):
            report = car_check(n)
            self.assertTrue(report["pass"], report)
            self.assertEqual(report["pairs"], n * n)
            self.assertLessEqual(report["max_residual"], 1e-12)
            self.assertLessEqual(report["hilbertian_defect"], 1e-8)

    def test_large_n_skips_norm_sampling(self):
        report = car_check(9, norm_cap=8)
        self.assertIsNone(report["hilbertian_defect"])
        self.assertTrue(report["pass"])


class UnitaryTests(SimpleTestCase):
    def test_v_on_singletons(self):
        v = unitary_V(2, 1)
        np.testing.assert_array_equal(v @ basis_vector(2, 1, {1}), basis_vector(2, 1, {2}))

    def test_unitarity(self):
        for n in range(1, 6):
            for k in range(n + 1):
                v = unitary_V(n, k)
                w = unitary_W(n, k)
                np.testing.assert_array_equal(v.conj().T @ v, np.eye(v.shape[1]))
                np.testing.assert_array_equal(w @ w, np.eye(w.shape[0]))
                self.assertTrue(set(np.diag(w).real) <= {1.0, -1.0})

    def test_w_entry(self):
        self.assertEqual(w_sign((1, 2), 3, 1), -1)
        self.assertEqual(unitary_W(3, 2)[0, 0], -1)

    def test_w_independent_of_choice(self):
        for n in range(1, 7):
            for k in range(1, n + 1):
                for S in FockLevel(n, k).basis:
                    self.assertEqual(len({w_sign(S, n, i) for i in S}), 1)


class RepresentationTests(SimpleTestCase):
    def test_small_cases(self):
        self.assertTrue(fock_vs_hnk(2, 1, samples=5)["pass"])
        self.assertTrue(fock_vs_hnk(3, 2, samples=5)["pass"])

    def test_structural_identity_all_small(self):
        for n in range(1, 7):
            for k in range(1, n + 1):
                report = fock_vs_hnk(n, k, samples=3, max_level=2)
                self.assertLessEqual(report["structural_residual"], 1e-9, (n, k))
                self.assertLessEqual(report["norm_defect"], 1e-7, (n, k))

    def test_full_witness_set_up_to_six(self):
        for n in range(1, 7):
            for k in range(1, n + 1):
                report = fock_vs_hnk(n, k, samples=50, max_level=3)
                self.assertTrue(report["pass"], report)
                self.assertLessEqual(report["norm_defect"], 1e-7, (n, k))

    def test_annihilation_partner(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                report = annihilation_vs_hnk(n, k, samples=3, max_level=2)
                self.assertTrue(report["pass"], report)
                self.assertEqual(report["partner_k"], n - k + 1)

    def test_fock_intersection_components(self):
        space = fock_intersection(4, [1, 3])
        self.assertEqual(detect_components(space.basis), [1, 3])
