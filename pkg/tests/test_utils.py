import threading

from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase, override_settings

from gdirac.constants import DEFAULT_SETTINGS, GDIRAC_CONTOUR_POINTS, GDIRAC_SEED, GDIRAC_THREADS
from gdirac.utils import get_setting, get_thread_count, parallel_map, threads_from_environ


class SettingsTest(SimpleTestCase):

    def test_default(self):
        self.assertEqual(get_setting(GDIRAC_CONTOUR_POINTS), DEFAULT_SETTINGS[GDIRAC_CONTOUR_POINTS])

    @override_settings(GDIRAC_SEED=42)
    def test_override(self):
        self.assertEqual(get_setting(GDIRAC_SEED), 42)

    def test_environment(self):
        self.assertEqual(threads_from_environ({GDIRAC_THREADS: '8'}), '8')
        self.assertEqual(threads_from_environ({}), DEFAULT_SETTINGS[GDIRAC_THREADS])


class ThreadCountTest(SimpleTestCase):

    @override_settings(GDIRAC_THREADS='3')
    def test_string(self):
        self.assertEqual(get_thread_count(), 3)

    @override_settings(GDIRAC_THREADS='many')
    def test_not_a_number(self):
        with self.assertRaisesMessage(ImproperlyConfigured, "GDIRAC_THREADS must be an integer, got 'many'"):
            get_thread_count()

    @override_settings(GDIRAC_THREADS=0)
    def test_zero(self):
        with self.assertRaisesMessage(ImproperlyConfigured, 'GDIRAC_THREADS must be at least 1, got 0'):
            get_thread_count()


class ParallelMapTest(SimpleTestCase):

    def test_sequential(self):
        names = parallel_map(lambda item: threading.current_thread().name, range(3))
        self.assertEqual(set(names), {threading.current_thread().name})

    @override_settings(GDIRAC_THREADS=4)
    def test_order(self):
        self.assertEqual(parallel_map(lambda item: item * item, range(50)), [item * item for item in range(50)])

    @override_settings(GDIRAC_THREADS=4)
    def test_errors_propagate(self):
        def func(item):
            if item == 3:
                raise ValueError(item)
            return item

        with self.assertRaises(ValueError):
            parallel_map(func, range(6))

    @override_settings(GDIRAC_THREADS=4)
    def test_single_item(self):
        self.assertEqual(parallel_map(str, [1]), ['1'])
