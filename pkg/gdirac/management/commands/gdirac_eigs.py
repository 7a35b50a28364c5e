from django.core.exceptions import ValidationError

from ...exporter import Exporter, eigenvector_document, write_json
from ...oracle import discretize, eigs_window
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Eigenvalues of the discrete operator in a window."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--lower', type=float, help="Lower end of the window (default -2mc²).")
        parser.add_argument('--upper', type=float, help="Upper end of the window (default 2mc²).")
        parser.add_argument('--h', type=float)
        parser.add_argument('--L', type=float)
        parser.add_argument('--out', default='-', help="CSV output path, '-' for stdout.")
        parser.add_argument('--vectors', help="Write the eigenvectors as JSON to this path.")

    def handle(self, *args, **options):
        graph, _ = self.load(options['input'], options)
        rest = graph.params.threshold
        lower = -2 * rest if options['lower'] is None else options['lower']
        upper = 2 * rest if options['upper'] is None else options['upper']
        if not lower < upper:
            raise ValidationError(f"empty window [{lower}, {upper}]", code='window')
        operator = discretize(graph, graph.params, options['h'], options['L'])
        system = eigs_window(operator, lower, upper, vectors=bool(options['vectors']))
        exporter = Exporter(options['out'])
        exporter.write(exporter.get_eigenvalue_dataset(system.values))
        if options['vectors']:
            write_json(eigenvector_document(system), options['vectors'])
