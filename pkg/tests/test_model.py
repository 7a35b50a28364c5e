from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from gdirac.conditions import trace_dimension
from gdirac.exceptions import PoleError
from gdirac.model import (
    builtin_model, model_conditions, model_document, model_f, model_f_direct, model_secular_closed,
)
from gdirac.scan import sampled_minima, threshold_modes
from gdirac.weyl import secular


class ModelFunctionTest(SimpleTestCase):

    def test_center_of_the_gap(self):
        self.assertAlmostEqual(model_f(0).real, 2.5566680, places=6)
        self.assertEqual(model_f(0).imag, 0)

    def test_thresholds(self):
        self.assertAlmostEqual(model_f(0.5), 16 / 9, places=9)
        self.assertAlmostEqual(model_f(-0.5), 16 / 9, places=9)

    def test_positive_real_part_outside_the_gap(self):
        for z in np.linspace(0.55, 3, 200):
            self.assertGreater(model_f(z).real, 0)

    def test_direct_form_in_the_gap(self):
        for z in np.linspace(-0.49, 0.49, 25):
            self.assertAlmostEqual(model_f_direct(z), model_f(z), places=12)

    def test_direct_form_outside_the_gap(self):
        regimes, direct = model_f(1.0), model_f_direct(1.0)
        self.assertAlmostEqual(regimes.real, direct.real, places=12)
        self.assertGreater(abs(regimes.imag - direct.imag), 1e-3)

    def test_complex_argument(self):
        z = 0.3 + 0.2j
        self.assertEqual(model_f(z), model_f_direct(z))


class BuiltinModelTest(SimpleTestCase):

    def test_dimension(self):
        graph, conditions = builtin_model()
        self.assertEqual(trace_dimension(graph), 4)
        self.assertEqual(conditions.A.shape, (4, 4))

    def test_deterministic(self):
        first, second = builtin_model(), builtin_model()
        self.assertEqual(first[0], second[0])
        np.testing.assert_array_equal(first[1].A, second[1].A)
        np.testing.assert_array_equal(first[1].B, second[1].B)

    def test_secular_closed_form(self):
        graph, conditions = builtin_model()
        for z in (0, 0.3, -0.45, 1.0, 1.0 + 0.2j, -0.2 + 0.5j):
            self.assertAlmostEqual(secular(graph, z, conditions), model_secular_closed(z), places=10)

    def test_refined_minima_agree(self):
        graph, conditions = builtin_model()

        def assembled(z):
            try:
                return abs(secular(graph, z, conditions))
            except PoleError:
                return np.inf

        def closed(z):
            try:
                return abs(model_f(z))
            except PoleError:
                return np.inf

        zs = np.linspace(-2, 2, 801)
        first = [z for z, _ in sampled_minima(assembled, zs, [assembled(z) for z in zs])]
        second = [z for z, _ in sampled_minima(closed, zs, [closed(z) for z in zs])]
        np.testing.assert_allclose(first, [-2, -0.5, 0.5, 2], atol=1e-8)
        np.testing.assert_allclose(first, second, atol=1e-8)

    def test_secular_in_the_gap(self):
        self.assertAlmostEqual(model_secular_closed(0), 16 / 9 * (1 + 2 * np.tanh(0.5)), places=12)

    def test_no_threshold_modes(self):
        graph, _ = builtin_model()
        self.assertEqual(threshold_modes(graph), [])

    def test_free_end_row(self):
        self.assertNotIn('clamped', model_document(a=1j, b=1))
        self.assertAlmostEqual(model_conditions(1j, 1).A[3, 3], 2j / 3, places=15)

    def test_rank_deficient_row(self):
        with self.assertRaises(ValidationError) as context:
            model_conditions(0, 0)
        self.assertEqual(context.exception.code, 'model_rank')

    def test_non_self_adjoint_row(self):
        with self.assertRaises(ValidationError) as context:
            model_conditions(1, 1)
        self.assertEqual(context.exception.code, 'model_row')
