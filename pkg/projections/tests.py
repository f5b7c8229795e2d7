from fractions import Fraction
from math import comb

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import MatrixShapeError, ProjectionError
from spaces.bases import build_uij, hnk_matrices
from triple.products import mul, partial_isometry_residual, star
from triple.relations import is_leq

from .contractive import (
    check_coherence,
    check_contractive,
    check_idempotent,
    coherence_identity,
    custom_projection,
    envelope_words,
    generator_word,
    one_coefficient,
    phi_generators,
    phi_integer_generators,
    pn_apply,
    pn_coordinates,
    pn_coordinates_exact,
    pn_projection,
    pnk_apply,
    pnk_projection,
    support_limit_coefficients,
)
from .expectation import check_conditional_expectation
from .serializers import SupportSpaceSerializer
from .support import (
    column_expansion,
    expansion_report,
    is_expansion,
    pairing,
    support_partial_isometry,
    support_space,
    trace_norm,
)


def unit(i, j, size=2):
    m = np.zeros((size, size), dtype=np.complex128)
    m[i - 1, j - 1] = 1
    return m


def identity_projection(size=2):
    units = [unit(i, j, size) for i in range(1, size + 1) for j in range(1, size + 1)]
    return custom_projection("identity", lambda x: x, [(size, size)], units)


def oblique_projection():
    f = unit(1, 1) + 2 * unit(1, 2)
    return custom_projection("oblique", lambda x: np.vdot(f, x) * unit(1, 1), [(2, 2)], [unit(1, 1)])


class PnkTests(SimpleTestCase):
    def test_fixes_range(self):
        for n in range(1, 6):
            for k in range(1, n + 1):
                for b in hnk_matrices(n, k):
                    np.testing.assert_allclose(pnk_apply(n, k, b), b, atol=1e-12)

    def test_non_ones_vanish(self):
        np.testing.assert_allclose(pnk_apply(4, 2, build_uij(4, 2, [1], [1, 2])), 0, atol=1e-12)
        np.testing.assert_allclose(pnk_apply(5, 3, build_uij(5, 3, [1, 2], [2, 4])), 0, atol=1e-12)

    def test_ones_land_on_their_generator(self):
        for n, k, I, J, i in [(4, 2, [1], [2, 3], 4), (5, 3, [2, 5], [1, 3], 4), (3, 1, [], [1, 2], 3)]:
            expected = hnk_matrices(n, k)[i - 1] / comb(n - 1, k - 1)
            np.testing.assert_allclose(pnk_apply(n, k, build_uij(n, k, I, J)), expected, atol=1e-12)

    def test_shape_mismatch(self):
        with self.assertRaises(MatrixShapeError):
            pnk_apply(4, 2, np.zeros((4, 4)))

    def test_idempotent_and_contractive(self):
        for n in range(2, 5):
            for k in range(1, n + 1):
                P = pnk_projection(n, k)
                self.assertTrue(check_idempotent(P)["pass"])
                self.assertTrue(check_contractive(P, samples=30)["pass"], (n, k))


class PnTests(SimpleTestCase):
    def test_fixes_generators(self):
        for n in range(1, 5):
            for u in phi_generators(n):
                for block, expected in zip(pn_apply(n, u), u):
                    np.testing.assert_allclose(block, expected, atol=1e-12)

    def test_worked_example(self):
        u = phi_integer_generators(3)
        x = mul(u[1], star(u[1]), u[0], star(u[2]), u[2])
        word = generator_word(u, [2], [3], 3)
        for a, b in zip(x, word):
            np.testing.assert_array_equal(a, b)
        self.assertEqual(pn_coordinates_exact(3, x), [Fraction(1, 6), 0, 0])
        np.testing.assert_allclose(pn_coordinates(3, x), [1 / 6, 0, 0], atol=1e-12)

    def test_ones_coefficients(self):
        n = 4
        u = phi_integer_generators(n)
        for i, I, J in envelope_words(n):
            coords = pn_coordinates_exact(n, generator_word(u, I, J, n))
            if set(I) & set(J):
                self.assertEqual(coords, [0] * n)
            else:
                k = ({1, 2, 3, 4} - set(I) - set(J)).pop()
                self.assertEqual(coords[k - 1], one_coefficient(n, i))
                self.assertEqual(sum(coords), one_coefficient(n, i))

    def test_block_validation(self):
        with self.assertRaises(MatrixShapeError):
            pn_apply(3, phi_generators(2)[0])
        with self.assertRaises(ProjectionError):
            pn_coordinates_exact(2, (np.zeros((2, 1)), np.full((1, 2), 0.5)))

    def test_contractive(self):
        self.assertTrue(check_contractive(pn_projection(3), samples=30)["pass"])


class CoherenceTests(SimpleTestCase):
    def test_restriction_agrees(self):
        for n in range(1, 5):
            report = check_coherence(n)
            self.assertTrue(report["pass"], report)
            self.assertEqual(report["max_residual"], 0.0)
            self.assertEqual(report["ones"] + report["non_ones"], comb(2 * n, n - 1))

    def test_rational_identity(self):
        self.assertEqual(coherence_identity(3, 2)["lifted"], Fraction(1, 6))
        for n in range(1, 12):
            for i in range(1, n + 1):
                self.assertTrue(coherence_identity(n, i)["pass"])

    def test_support_limit_coefficients_vanish(self):
        for m in range(3):
            values = [c for _, c in support_limit_coefficients(m, range(0, 40))]
            self.assertTrue(all(b < a for a, b in zip(values, values[1:])))
            self.assertLessEqual(values[-1], Fraction(1, 40))


class ConditionalExpectationTests(SimpleTestCase):
    def test_pnk(self):
        for n in range(1, 5):
            for k in range(1, n + 1):
                report = check_conditional_expectation(pnk_projection(n, k), samples=5)
                self.assertTrue(report["pass"], report)

    def test_pn(self):
        self.assertTrue(check_conditional_expectation(pn_projection(3), samples=5)["pass"])

    def test_identity_is_exact(self):
        report = check_conditional_expectation(identity_projection(), samples=5)
        self.assertLessEqual(report["max_residual"], 1e-14)

    def test_oblique_idempotent_fails(self):
        report = check_conditional_expectation(oblique_projection(), samples=20)
        self.assertFalse(report["pass"])
        self.assertGreater(report["max_residual"], 1e-3)


class SupportPartialIsometryTests(SimpleTestCase):
    def test_examples(self):
        np.testing.assert_allclose(support_partial_isometry(unit(1, 2)), unit(1, 2), atol=1e-12)
        a = np.diag([2.0, 1.0])
        v = support_partial_isometry(a)
        np.testing.assert_allclose(v, np.eye(2), atol=1e-12)
        self.assertAlmostEqual(pairing(a, v).real, 3.0, delta=1e-12)

    def test_zero_rejected(self):
        with self.assertRaises(ProjectionError):
            support_partial_isometry(np.zeros((2, 3)))

    def test_norming_partial_isometry(self):
        rng = np.random.default_rng(8)
        for shape in [(3, 3), (2, 5), (4, 2)]:
            a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
            v = support_partial_isometry(a)
            self.assertLessEqual(partial_isometry_residual(v), 1e-12)
            self.assertAlmostEqual(pairing(a, v).real, trace_norm(a), delta=1e-9)

    def test_rank_deficient_input(self):
        a = np.outer([1.0, 2.0, 0.0], [0.0, 1.0, 1.0])
        v = support_partial_isometry(a)
        self.assertEqual(np.linalg.matrix_rank(v), 1)
        self.assertAlmostEqual(pairing(a, v).real, trace_norm(a), delta=1e-9)

    def test_faithful(self):
        a = np.diag([2.0, 1.0, 0.0])
        for w in (unit(1, 1, 3), unit(2, 2, 3), unit(1, 1, 3) + unit(2, 2, 3)):
            self.assertGreater(pairing(a, w).real, 0)

    def test_random_five_by_five(self):
        rng = np.random.default_rng(2024)
        for trial in range(100):
            if trial % 4 == 3:
                rank = 3
                a = (rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))) @ (
                    rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
                )
            else:
                rank = 5
                a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            v = support_partial_isometry(a)
            norm = trace_norm(a)
            self.assertLessEqual(partial_isometry_residual(v), 1e-10, trial)
            self.assertAlmostEqual(pairing(a, v).real, norm, delta=1e-9 * norm)
            self.assertAlmostEqual(pairing(a, v).imag, 0.0, delta=1e-9 * norm)

            u, s, vh = np.linalg.svd(a)
            picked = [i for i in range(rank) if rng.random() < 0.5] or [int(rng.integers(rank))]
            w = sum(np.outer(u[:, i], vh[i, :]) for i in picked)
            self.assertTrue(is_leq(w, v, 1e-9), trial)
            self.assertGreater(pairing(a, w).real, 0)
            self.assertAlmostEqual(pairing(a, w).real, s[picked].sum(), delta=1e-9 * norm)


class SupportSpaceTests(SimpleTestCase):
    def test_pnk_is_essential(self):
        for n, k in [(3, 2), (4, 2), (4, 4)]:
            support = support_space(pnk_projection(n, k))
            self.assertTrue(support.essential)
            for v, b in zip(support.basis.basis, hnk_matrices(n, k)):
                np.testing.assert_allclose(v[0], b, atol=1e-9)

    def test_expansion_support_drops_lift(self):
        fixture = column_expansion()
        P = custom_projection("expansion", fixture["P"], [(4, 4)], fixture["range"])
        support = support_space(P)
        self.assertFalse(support.essential)
        np.testing.assert_allclose(support.basis.basis[0][0], unit(1, 1, 4), atol=1e-12)
        np.testing.assert_allclose(support.basis.basis[1][0], unit(2, 1, 4), atol=1e-12)

    def test_compression_onto_corner(self):
        P = custom_projection("corner", lambda x: x[0, 0] * unit(1, 1), [(2, 2)], [unit(1, 1)])
        support = support_space(P)
        self.assertTrue(support.essential)
        data = SupportSpaceSerializer(support.as_dict()).data
        self.assertEqual(data["rank"], 1)
        self.assertTrue(data["essential"])


class ExpansionTests(SimpleTestCase):
    def test_trivial_lift(self):
        fixture = column_expansion()
        Q = fixture["Q"]
        self.assertTrue(is_expansion(Q, Q, lambda h: 0 * h, fixture["ambient"]))

    def test_orthogonal_lift(self):
        fixture = column_expansion()
        report = expansion_report(fixture["P"], fixture["Q"], fixture["L"], fixture["ambient"])
        self.assertTrue(report["pass"], report)

    def test_overlapping_lift(self):
        fixture = column_expansion(overlapping=True)
        report = expansion_report(fixture["P"], fixture["Q"], fixture["L"], fixture["ambient"])
        self.assertFalse(report["orthogonal"])
        self.assertFalse(report["pass"])

    def test_non_idempotent_rejected(self):
        fixture = column_expansion()
        with self.assertRaises(ProjectionError):
            is_expansion(lambda x: 2 * x, fixture["Q"], fixture["L"], fixture["ambient"])
