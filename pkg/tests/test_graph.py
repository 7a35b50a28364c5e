import json
import math

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from gdirac.graph import (
    Edge, PhysicalParams, compact_core, graph_from_document, max_vertex_residual, parse_graph, vertex_residuals,
)
from gdirac.model import model_document
from gdirac.spinors import ClosedFormSpinor, Component, EdgeSpinor, Linear
from gdirac.validators import document_multigraph

from .helpers import fixture_graph, fixture_path


class PhysicalParamsTest(SimpleTestCase):

    def test_threshold(self):
        self.assertEqual(PhysicalParams(0.5, 2.0).threshold, 2.0)

    def test_nonpositive_mass(self):
        with self.assertRaises(ValidationError) as context:
            PhysicalParams(0, 1)
        self.assertEqual(context.exception.code, 'mass')

    def test_infinite_light_speed(self):
        with self.assertRaises(ValidationError) as context:
            PhysicalParams(1, math.inf)
        self.assertEqual(context.exception.code, 'light_speed')


class EdgeTest(SimpleTestCase):

    def test_segment_endpoints(self):
        edge = Edge('s', 'segment', 'u', 'w', 2.0)
        self.assertEqual(edge.endpoints(), [(0, 'u'), (1, 'w')])
        self.assertEqual(edge.coordinate(1), 2.0)

    def test_halfline_endpoints(self):
        self.assertEqual(Edge('h', 'halfline', 'u').endpoints(), [(0, 'u')])

    def test_reversed(self):
        edge = Edge('s', 'segment', 'u', 'w', 2.0).reversed()
        self.assertEqual((edge.tail, edge.head, edge.length), ('w', 'u', 2.0))

    def test_halfline_cannot_be_reversed(self):
        with self.assertRaises(ValueError):
            Edge('h', 'halfline', 'u').reversed()


class ParseGraphTest(SimpleTestCase):

    def test_model(self):
        graph, params = parse_graph(json.dumps(model_document()))
        self.assertEqual(graph.n_segments, 1)
        self.assertEqual(graph.n_halflines, 2)
        self.assertEqual(params.threshold, 0.5)
        self.assertFalse(graph.is_compact)
        self.assertEqual(graph.clamped, frozenset({'v1'}))
        self.assertEqual(graph.degree('v0'), 3)
        self.assertEqual(graph.min_length, 1.0)

    def test_malformed(self):
        with self.assertRaises(ValidationError) as context:
            parse_graph('{"mass": ')
        self.assertEqual(context.exception.code, 'malformed')

    def test_fixture(self):
        graph = fixture_graph('compact_star.json')
        self.assertTrue(graph.is_compact)
        self.assertEqual([edge.length for edge in graph.edges], [1.0, 1.0, 2.0])
        with open(fixture_path('compact_star.json')) as handle:
            self.assertEqual(graph.to_document(), json.load(handle))

    def test_document_round_trip(self):
        graph = graph_from_document(model_document())
        self.assertEqual(graph_from_document(graph.to_document()), graph)

    def test_document_multigraph(self):
        multigraph = document_multigraph(fixture_graph('corpus/graph_4.json').to_document())
        self.assertEqual(multigraph.number_of_edges(), 3)
        self.assertEqual(multigraph.degree('b'), 4)


class GraphOperationsTest(SimpleTestCase):

    def setUp(self):
        self.graph = graph_from_document(model_document())

    def test_compact_core(self):
        core = compact_core(self.graph)
        self.assertEqual(core.vertices, ('v0', 'v1'))
        self.assertEqual([edge.id for edge in core.edges], ['e3'])
        self.assertTrue(core.is_compact)
        self.assertEqual(core.clamped, frozenset({'v1'}))

    def test_reversed(self):
        reversed_graph = self.graph.reversed('e3')
        self.assertEqual(reversed_graph.edge('e3').tail, 'v1')
        self.assertEqual(self.graph.edge('e3').tail, 'v0')

    def test_relabeled(self):
        relabeled = self.graph.relabeled(['e3', 'e1', 'e2'])
        self.assertEqual([edge.id for edge in relabeled.edges], ['e3', 'e1', 'e2'])

    def test_residuals_of_zero(self):
        residuals = vertex_residuals(self.graph, ClosedFormSpinor.zero(self.graph))
        self.assertEqual(max_vertex_residual(residuals), 0.0)

    def test_residuals_of_constant(self):
        constant = EdgeSpinor(Component.of(Linear(0j, 1)), Component())
        psi = ClosedFormSpinor({edge.id: constant for edge in self.graph.edges})
        residuals = vertex_residuals(self.graph, psi)
        self.assertEqual(residuals['v0'].continuity, 0.0)
        self.assertEqual(residuals['v0'].balance, 0j)
        self.assertEqual(residuals['v1'].continuity, 1.0)

    def test_balance_residual(self):
        flow = EdgeSpinor(Component(), Component.of(Linear(0j, 1)))
        psi = ClosedFormSpinor.zero(self.graph).replaced('e1', flow)
        residuals = vertex_residuals(self.graph, psi)
        self.assertEqual(residuals['v0'].balance, 1 + 0j)
        self.assertEqual(max_vertex_residual(residuals), 1.0)
