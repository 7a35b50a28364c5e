import os

import gdirac
from gdirac.graph import graph_from_document, load_graph


FIXTURES = os.path.join(os.path.dirname(gdirac.__file__), 'fixtures')


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def fixture_graph(name):
    graph, _ = load_graph(fixture_path(name))
    return graph


def corpus_graphs():
    return [fixture_graph(f"corpus/graph_{index}.json") for index in range(1, 6)]


def segment_document(mass=1.0, c=1.0, length=1.0, clamped=()):
    data = {
        'mass': mass,
        'c': c,
        'vertices': ['u', 'w'],
        'edges': [{'id': 's', 'kind': 'segment', 'length': length, 'from': 'u', 'to': 'w'}],
    }
    if clamped:
        data['clamped'] = list(clamped)
    return data


def segment_graph(**kwargs):
    return graph_from_document(segment_document(**kwargs))
