import math

from django.core.exceptions import ValidationError

import networkx as nx
from jsonschema import validate
from jsonschema.exceptions import ValidationError as SchemaError

from .constants import GRAPH_SCHEMA, SEGMENT


def document_multigraph(data):
    multigraph = nx.MultiGraph()
    multigraph.add_nodes_from(data['vertices'])
    for edge in data['edges']:
        if edge['kind'] == SEGMENT:
            multigraph.add_edge(edge['from'], edge['to'], key=edge['id'])
    return multigraph


def validate_graph_document(data):
    """
    Validate a decoded graph document: JSON schema first, then the metric
    graph invariants the schema cannot express.
    """
    try:
        validate(instance=data, schema=GRAPH_SCHEMA)
    except SchemaError as err:
        raise ValidationError(err.message, code='schema')

    vertices = set(data['vertices'])
    edge_ids = [edge['id'] for edge in data['edges']]
    if len(set(edge_ids)) != len(edge_ids):
        raise ValidationError('Edge identifiers must be unique.', code='duplicate_edge')

    degree = dict.fromkeys(vertices, 0)
    for edge in data['edges']:
        ends = [edge['from']] if edge['kind'] != SEGMENT else [edge['from'], edge['to']]
        for vertex in ends:
            if vertex not in vertices:
                raise ValidationError(
                    f"Edge {edge['id']} has a dangling endpoint {vertex!r}.", code='dangling_endpoint')
            degree[vertex] += 1
        if edge['kind'] == SEGMENT:
            length = edge['length']
            if not (math.isfinite(length) and length > 0):
                raise ValidationError(
                    f"Edge {edge['id']} must have a finite positive length, got {length}.", code='length')

    isolated = sorted(vertex for vertex, count in degree.items() if count == 0)
    if isolated:
        raise ValidationError(f"Vertices without edges: {', '.join(isolated)}.", code='isolated_vertex')

    if not nx.is_connected(document_multigraph(data)):
        raise ValidationError('The graph is not connected.', code='disconnected')

    for vertex in data.get('clamped', []):
        if vertex not in vertices:
            raise ValidationError(f"Clamped vertex {vertex!r} does not exist.", code='dangling_endpoint')
        if degree[vertex] != 1:
            raise ValidationError(
                f"Only degree-1 vertices can be clamped, {vertex!r} has degree {degree[vertex]}.",
                code='clamped_degree')
