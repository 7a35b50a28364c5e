import json
import os
import tempfile
from io import StringIO
from unittest import mock

from django.test import SimpleTestCase

import numpy as np

from gdirac.conditions import check_selfadjoint_conditions
from gdirac.exporter import (
    Exporter, conditions_document, dumps, eigenvector_document, format_float, matrix_document, write_json,
    write_text,
)
from gdirac.model import model_conditions
from gdirac.oracle import discretize, eigs_window

from .helpers import fixture_graph


class FormatTest(SimpleTestCase):

    def test_float(self):
        self.assertEqual(format_float(0.1), '0.10000000000000001')
        self.assertEqual(format_float(np.float64(2)), '2')
        self.assertEqual(format_float(float('nan')), 'nan')

    def test_dumps(self):
        text = dumps({'b': np.arange(2), 'a': np.float64(0.5), 'c': 1 + 2j})
        self.assertEqual(json.loads(text), {'a': 0.5, 'b': [0, 1], 'c': [1.0, 2.0]})
        self.assertTrue(text.index('"a"') < text.index('"b"'))
        self.assertTrue(text.endswith('\n'))

    def test_matrix_document(self):
        self.assertEqual(matrix_document([[1, 2j]]), [[[1.0, 0.0], [0.0, 2.0]]])


class WriteTest(SimpleTestCase):

    def test_stdout(self):
        with mock.patch('sys.stdout', new_callable=StringIO) as stdout:
            write_text('hello\n', '-')
        self.assertEqual(stdout.getvalue(), 'hello\n')

    def test_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'out.json')
            write_json({'x': 1}, path)
            with open(path, encoding='utf-8') as handle:
                self.assertEqual(json.load(handle), {'x': 1})
            self.assertEqual(os.listdir(directory), ['out.json'])

    def test_failed_write_leaves_nothing(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'out.json')
            with mock.patch('gdirac.exporter.os.replace', side_effect=OSError('disk full')):
                with self.assertRaises(OSError):
                    write_text('data', path)
            self.assertEqual(os.listdir(directory), [])

    def test_missing_directory(self):
        with self.assertRaises(OSError):
            write_text('data', os.path.join(tempfile.gettempdir(), 'gdirac-missing', 'out.csv'))


class ExporterTest(SimpleTestCase):

    def test_secular_dataset(self):
        exporter = Exporter()
        dataset = exporter.get_secular_dataset([(0.25j, 3 + 4j, False), (1.5 + 0.25j, None, True)])
        self.assertEqual(dataset.headers, ['z_re', 'z_im', 's_re', 's_im', 's_abs', 'pole_flag'])
        self.assertEqual(dataset[0], ('0', '0.25', '3', '4', '5', 0))
        self.assertEqual(dataset[1], ('1.5', '0.25', 'nan', 'nan', 'nan', 1))
        with mock.patch('sys.stdout', new_callable=StringIO) as stdout:
            exporter.write(dataset)
        self.assertEqual(
            stdout.getvalue(),
            'z_re,z_im,s_re,s_im,s_abs,pole_flag\n0,0.25,3,4,5,0\n1.5,0.25,nan,nan,nan,1\n',
        )

    def test_eigenvalue_dataset(self):
        dataset = Exporter().get_eigenvalue_dataset([-0.5, 1.25])
        self.assertEqual(dataset.dict, [{'index': 0, 'lambda': '-0.5'}, {'index': 1, 'lambda': '1.25'}])

    def test_minima_dataset(self):
        dataset = Exporter().get_minima_dataset([(0.25, 3.0)])
        self.assertEqual(dataset.headers, ['z', 'abs_secular'])
        self.assertEqual(dataset[0], ('0.25', '3'))


class DocumentTest(SimpleTestCase):

    def test_conditions(self):
        conditions = model_conditions()
        data = conditions_document(conditions, check_selfadjoint_conditions(conditions))
        self.assertEqual(len(data['A']), 4)
        self.assertEqual(data['vertex_rows'], {'v0': [0, 1, 2], 'v1': [3]})
        self.assertTrue(data['report']['hermitian_compat'])
        self.assertTrue(data['report']['rank_full'])

    def test_eigenvectors(self):
        op = discretize(fixture_graph('clamped_segment.json'), h=0.125)
        data = eigenvector_document(eigs_window(op, 1.5, 2.5))
        self.assertEqual(len(data['eigenvalues']), 1)
        labels = set(data['vectors'][0])
        self.assertIn('psi1@w', labels)
        self.assertIn('psi2@s[7.5]', labels)
        self.assertNotIn('psi1@u', labels)
