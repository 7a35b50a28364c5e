import json
import logging
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from django.core.exceptions import ValidationError

from .constants import BALANCE_SIGN, END_LENGTH, END_ZERO, HALFLINE, SEGMENT
from .validators import validate_graph_document


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhysicalParams:
    mass: float
    c: float

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ValidationError(f"mass must be positive, got {self.mass}", code='mass')
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValidationError(f"light speed must be positive, got {self.c}", code='light_speed')

    @property
    def threshold(self) -> float:
        """The gap threshold m·c²."""
        return self.mass * self.c ** 2


@dataclass(frozen=True)
class Edge:
    id: str
    kind: str
    tail: str
    head: Optional[str] = None
    length: Optional[float] = None

    @property
    def is_segment(self) -> bool:
        return self.kind == SEGMENT

    def endpoints(self) -> List[Tuple[int, str]]:
        if self.is_segment:
            return [(END_ZERO, self.tail), (END_LENGTH, self.head)]
        return [(END_ZERO, self.tail)]

    def coordinate(self, end: int) -> float:
        return 0.0 if end == END_ZERO else self.length

    def reversed(self) -> 'Edge':
        if not self.is_segment:
            raise ValueError(f"half-line {self.id} keeps its natural orientation")
        return replace(self, tail=self.head, head=self.tail)


class Incidence(NamedTuple):
    edge: Edge
    end: int

    @property
    def sign(self) -> int:
        return BALANCE_SIGN[self.end]

    @property
    def coordinate(self) -> float:
        return self.edge.coordinate(self.end)


class VertexResidual(NamedTuple):
    continuity: float
    balance: complex


@dataclass(frozen=True)
class MetricGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    params: PhysicalParams
    clamped: FrozenSet[str] = field(default_factory=frozenset)

    @cached_property
    def edge_map(self) -> Dict[str, Edge]:
        return {edge.id: edge for edge in self.edges}

    @cached_property
    def incidences(self) -> Dict[str, List[Incidence]]:
        table = {vertex: [] for vertex in self.vertices}
        for edge in self.edges:
            for end, vertex in edge.endpoints():
                table[vertex].append(Incidence(edge, end))
        return table

    def edge(self, edge_id: str) -> Edge:
        return self.edge_map[edge_id]

    def degree(self, vertex: str) -> int:
        return len(self.incidences[vertex])

    @property
    def segments(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.is_segment]

    @property
    def halflines(self) -> List[Edge]:
        return [edge for edge in self.edges if not edge.is_segment]

    @property
    def n_segments(self) -> int:
        return len(self.segments)

    @property
    def n_halflines(self) -> int:
        return len(self.halflines)

    @property
    def is_compact(self) -> bool:
        return self.n_halflines == 0

    @property
    def min_length(self) -> float:
        return min((edge.length for edge in self.segments), default=math.inf)

    def reversed(self, edge_id: str) -> 'MetricGraph':
        edges = tuple(edge.reversed() if edge.id == edge_id else edge for edge in self.edges)
        return replace(self, edges=edges)

    def relabeled(self, order: List[str]) -> 'MetricGraph':
        """The same graph with its edges listed in ``order``."""
        return replace(self, edges=tuple(self.edge(edge_id) for edge_id in order))

    def to_document(self) -> dict:
        edges = []
        for edge in self.edges:
            if edge.is_segment:
                edges.append({'id': edge.id, 'kind': SEGMENT, 'length': edge.length,
                              'from': edge.tail, 'to': edge.head})
            else:
                edges.append({'id': edge.id, 'kind': HALFLINE, 'from': edge.tail})
        data = {
            'mass': self.params.mass,
            'c': self.params.c,
            'vertices': list(self.vertices),
            'edges': edges,
        }
        if self.clamped:
            data['clamped'] = sorted(self.clamped)
        return data


def graph_from_document(data: dict) -> MetricGraph:
    validate_graph_document(data)
    params = PhysicalParams(float(data['mass']), float(data['c']))
    edges = []
    for item in data['edges']:
        if item['kind'] == SEGMENT:
            edges.append(Edge(item['id'], SEGMENT, item['from'], item['to'], float(item['length'])))
        else:
            edges.append(Edge(item['id'], HALFLINE, item['from']))
    graph = MetricGraph(
        vertices=tuple(data['vertices']),
        edges=tuple(edges),
        params=params,
        clamped=frozenset(data.get('clamped', [])),
    )
    logger.debug(f"graph with {graph.n_segments} segments and {graph.n_halflines} half-lines")
    return graph


def parse_graph(text: str) -> Tuple[MetricGraph, PhysicalParams]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(f"Malformed graph document: {err}", code='malformed')
    graph = graph_from_document(data)
    return graph, graph.params


def load_graph(path) -> Tuple[MetricGraph, PhysicalParams]:
    with open(path, encoding='utf-8') as handle:
        return parse_graph(handle.read())


def compact_core(g: MetricGraph) -> MetricGraph:
    """The subgraph of bounded edges with the vertices they touch."""
    touched = {vertex for edge in g.segments for _, vertex in edge.endpoints()}
    vertices = tuple(vertex for vertex in g.vertices if vertex in touched)
    return MetricGraph(
        vertices=vertices,
        edges=tuple(g.segments),
        params=g.params,
        clamped=frozenset(vertex for vertex in g.clamped if vertex in touched),
    )


def vertex_residuals(g: MetricGraph, psi) -> Dict[str, VertexResidual]:
    """
    Continuity and balance residuals of the vertex conditions for ``psi``.

    A clamped vertex reports |psi1(v)| as its continuity residual and no
    balance residual, since its only condition is psi1(v) = 0.
    """
    residuals = {}
    for vertex in g.vertices:
        first = []
        balance = 0j
        for incidence in g.incidences[vertex]:
            value_1, value_2 = psi.endpoint_values(incidence.edge.id, incidence.coordinate)
            first.append(value_1)
            balance += incidence.sign * value_2
        if vertex in g.clamped:
            residuals[vertex] = VertexResidual(max(abs(value) for value in first), 0j)
            continue
        continuity = max((abs(a - b) for a in first for b in first), default=0.0)
        residuals[vertex] = VertexResidual(float(continuity), complex(balance))
    return residuals


def max_vertex_residual(residuals: Dict[str, VertexResidual]) -> float:
    return max((max(item.continuity, abs(item.balance)) for item in residuals.values()), default=0.0)
