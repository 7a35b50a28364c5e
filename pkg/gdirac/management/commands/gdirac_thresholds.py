from ...exporter import write_json
from ...scan import threshold_candidates
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Threshold eigenvalue candidates on pairs of terminal segments."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_model_arguments(parser)
        parser.add_argument('--accepted', action='store_true', help="Only list candidates that are eigenvalues.")
        parser.add_argument('--out', default='-')

    def handle(self, *args, **options):
        graph, _ = self.load(options['input'], options)
        candidates = threshold_candidates(graph)
        if options['accepted']:
            candidates = [candidate for candidate in candidates if candidate.accepted]
        write_json([
            {
                'lambda': candidate.lam,
                'vertex': candidate.vertex,
                'edges': list(candidate.edges),
                'residual': candidate.residual,
                'accepted': candidate.accepted,
            }
            for candidate in candidates
        ], options['out'])
