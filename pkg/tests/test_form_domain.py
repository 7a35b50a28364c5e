from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from gdirac.form_domain import (
    MultiplierSurrogate, dirac_form_norm, form_norm_report, interpolation_constant, interpolation_norm,
    k_functional_closed, k_functional_direct, k_objective, power_norm,
)
from gdirac.oracle import discretize, eigs_full, eigs_window

from .helpers import fixture_graph


class MultiplierSurrogateTest(SimpleTestCase):

    def test_multipliers(self):
        surrogate = MultiplierSurrogate.from_multipliers([1, 4, 16])
        np.testing.assert_allclose(surrogate.A, [1, 4, 16])
        self.assertEqual(surrogate.n, 3)

    def test_eigenvalues(self):
        np.testing.assert_allclose(MultiplierSurrogate([-2, 0, 3]).A, [5, 1, 10])

    def test_invalid(self):
        for value, code in (([], 'empty'), ([np.nan], 'not_finite')):
            with self.assertRaises(ValidationError) as context:
                MultiplierSurrogate(value)
            self.assertEqual(context.exception.code, code)
        with self.assertRaises(ValidationError) as context:
            MultiplierSurrogate.from_multipliers([0.5])
        self.assertEqual(context.exception.code, 'multiplier')

    def test_dimension_mismatch(self):
        with self.assertRaises(ValidationError) as context:
            power_norm(MultiplierSurrogate([1, 2]), [1, 2, 3], 0.5)
        self.assertEqual(context.exception.code, 'dimension')


class KFunctionalTest(SimpleTestCase):

    def setUp(self):
        self.surrogate = MultiplierSurrogate.from_multipliers([4])

    def test_scalar(self):
        self.assertAlmostEqual(k_functional_closed(self.surrogate, [1], 1), 0.8)
        decomposition = k_functional_direct(self.surrogate, [1], 1)
        self.assertAlmostEqual(decomposition.value, 0.8)
        self.assertAlmostEqual(decomposition.x1[0], 0.2)
        self.assertAlmostEqual(decomposition.x0[0], 0.8)

    def test_closed_and_direct_agree(self):
        rng = np.random.default_rng(11)
        for case in range(100):
            n = int(rng.integers(1, 9))
            surrogate = MultiplierSurrogate.from_multipliers(1 + rng.exponential(10, n))
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            for t in (1e-3, 0.1, 1, 7.5, 1e3):
                with self.subTest(case=case, t=t):
                    difference = k_functional_direct(surrogate, x, t).value - k_functional_closed(surrogate, x, t)
                    self.assertLessEqual(abs(difference), 1e-12)

    def test_minimizer(self):
        rng = np.random.default_rng(5)
        surrogate = MultiplierSurrogate.from_multipliers([1, 3, 9, 27])
        x = rng.standard_normal(4)
        best = k_functional_direct(surrogate, x, 0.5)
        for _ in range(20):
            x1 = best.x1 + 1e-3 * rng.standard_normal(4)
            self.assertGreaterEqual(k_objective(surrogate, x, x1, 0.5), best.value)

    def test_monotone_and_concave(self):
        surrogate = MultiplierSurrogate.from_multipliers([2, 5, 40])
        ts = np.linspace(0.1, 5, 50)
        values = np.array([k_functional_closed(surrogate, [1, 1j, -2], t) for t in ts])
        self.assertTrue(np.all(np.diff(values) > 0))
        self.assertTrue(np.all(np.diff(values, 2) < 1e-12))

    def test_bounds(self):
        surrogate = MultiplierSurrogate.from_multipliers([2, 5])
        x = [1, 2]
        self.assertLessEqual(k_functional_closed(surrogate, x, 1e6), 5)
        self.assertLessEqual(k_functional_closed(surrogate, x, 1e-3), 1e-3 * power_norm(surrogate, x, 1))

    def test_positive_t(self):
        with self.assertRaises(ValidationError) as context:
            k_functional_closed(self.surrogate, [1], 0)
        self.assertEqual(context.exception.code, 't')


class InterpolationNormTest(SimpleTestCase):

    def test_constant(self):
        self.assertAlmostEqual(interpolation_constant(0.5), np.pi)
        self.assertAlmostEqual(interpolation_constant(0.25), np.pi * np.sqrt(2))

    def test_half(self):
        surrogate = MultiplierSurrogate.from_multipliers([4])
        self.assertAlmostEqual(interpolation_norm(surrogate, [1], 0.5), 2 * np.pi, places=6)

    def test_quarter(self):
        surrogate = MultiplierSurrogate.from_multipliers([16])
        self.assertAlmostEqual(interpolation_norm(surrogate, [1], 0.25), 8.8857659, places=6)

    def test_random_surrogates(self):
        rng = np.random.default_rng(2)
        for theta in (0.1, 0.25, 0.3, 0.5, 0.75, 0.8):
            surrogate = MultiplierSurrogate.from_multipliers(1 + rng.exponential(20, 6))
            x = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            expected = interpolation_constant(theta) * power_norm(surrogate, x, theta)
            self.assertAlmostEqual(interpolation_norm(surrogate, x, theta) / expected, 1, places=6)

    def test_zero_vector(self):
        self.assertEqual(interpolation_norm(MultiplierSurrogate([1, 2]), [0, 0], 0.5), 0)

    def test_theta_range(self):
        surrogate = MultiplierSurrogate([1])
        for theta in (0, 1, -0.5):
            with self.assertRaises(ValidationError) as context:
                interpolation_norm(surrogate, [1], theta)
            self.assertEqual(context.exception.code, 'theta')

    def test_report(self):
        report = form_norm_report(MultiplierSurrogate.from_multipliers([4]), [1], 0.5)
        self.assertEqual(sorted(report), ['expected_ratio', 'interpolation_norm', 'power_norm', 'ratio', 'theta'])
        self.assertAlmostEqual(report['power_norm'], 2)
        self.assertAlmostEqual(report['ratio'], report['expected_ratio'], places=6)


class DiracFormNormTest(SimpleTestCase):

    def setUp(self):
        self.op = discretize(fixture_graph('interval.json'), h=0.05)

    def test_eigenvector(self):
        system = eigs_full(self.op)
        index = int(np.argmax(np.abs(system.values)))
        value = system.values[index]
        self.assertAlmostEqual(dirac_form_norm(system, system.vectors[:, index]), np.sqrt(1 + value ** 2))

    def test_lower_bound(self):
        system = eigs_full(self.op)
        x = np.random.default_rng(0).standard_normal(self.op.size)
        bound = np.sqrt(1 + self.op.params.threshold ** 2) * np.linalg.norm(x) ** 2
        self.assertGreaterEqual(dirac_form_norm(system, x), bound - 1e-8)

    def test_needs_vectors(self):
        system = eigs_window(self.op, -1, 1, vectors=False)
        with self.assertRaises(ValidationError) as context:
            dirac_form_norm(system, np.ones(self.op.size))
        self.assertEqual(context.exception.code, 'decomposition')
