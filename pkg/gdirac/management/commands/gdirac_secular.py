from django.core.exceptions import ValidationError

import numpy as np

from ...conditions import assemble_AB, trace_index_map
from ...exceptions import PoleError
from ...exporter import Exporter
from ...graph import graph_from_document
from ...model import model_document, model_f
from ...scan import sampled_minima
from ...utils import parallel_map
from ...weyl import weyl_evaluation
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Sample the secular function det(B M(z) - A) on a line parallel to the real axis."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_model_arguments(parser)
        parser.add_argument('--zmin', type=float, help="Left end of the window (default -mc²).")
        parser.add_argument('--zmax', type=float, help="Right end of the window (default mc²).")
        parser.add_argument('--samples', type=int, default=1000)
        parser.add_argument('--imag', type=float, default=0.0, help="Imaginary part of the sampled line.")
        parser.add_argument('--closed-form', action='store_true',
                            help="Sample the closed-form model function; the input must be the triple junction model.")
        parser.add_argument('--out', default='-', help="CSV output path, '-' for stdout.")
        parser.add_argument('--minima', help="Also write the refined local minima of |s| to this CSV path.")

    def handle(self, *args, **options):
        graph, conditions = self.load(options['input'], options)
        rest = graph.params.threshold
        zmin = -rest if options['zmin'] is None else options['zmin']
        zmax = rest if options['zmax'] is None else options['zmax']
        if options['samples'] < 2:
            raise ValidationError(f"at least 2 samples are needed, got {options['samples']}", code='samples')
        if not zmin < zmax:
            raise ValidationError(f"empty window [{zmin}, {zmax}]", code='window')
        if options['closed_form'] and graph != graph_from_document(model_document()):
            raise ValidationError('--closed-form needs the triple junction model with a = 0, b = 1',
                                  code='closed_form')

        xs = np.linspace(zmin, zmax, options['samples'])
        imag = options['imag']
        index_map = trace_index_map(graph)
        conditions = assemble_AB(graph, index_map) if conditions is None else conditions

        def evaluate(x):
            z = complex(x, imag)
            if not options['closed_form']:
                evaluation = weyl_evaluation(graph, z, conditions, index_map)
                return z, evaluation.secular, evaluation.pole_flag
            try:
                return z, model_f(z), False
            except PoleError:
                return z, complex(np.nan, np.nan), True

        evaluations = parallel_map(evaluate, xs)
        exporter = Exporter(options['out'])
        exporter.write(exporter.get_secular_dataset(evaluations))

        if options['minima']:
            def magnitude(x):
                _, value, pole = evaluate(x)
                return np.inf if pole else abs(value)

            values = np.array([np.inf if pole else abs(value) for _, value, pole in evaluations])
            minima = Exporter(options['minima'])
            minima.write(minima.get_minima_dataset(sampled_minima(magnitude, xs, values)))
