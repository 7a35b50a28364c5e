from ...exceptions import CertificationError
from ...exporter import write_json
from ...scan import spectral_report
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Spectral report: essential spectrum, gap roots, threshold modes and segment spectra."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_model_arguments(parser)
        parser.add_argument('--samples', type=int, default=1000)
        parser.add_argument('--j-max', type=int, dest='j_max')
        parser.add_argument('--h', type=float)
        parser.add_argument('--L', type=float)
        parser.add_argument('--no-oracle', action='store_false', dest='oracle',
                            help="Skip the discrete cross-check of the gap.")
        parser.add_argument('--out', default='-')

    def handle(self, *args, **options):
        graph, conditions = self.load(options['input'], options)
        report = spectral_report(
            graph, conditions, j_max=options['j_max'], n_samples=options['samples'],
            h=options['h'], truncation=options['L'], oracle=options['oracle'])
        write_json(report.as_dict(), options['out'])
        if report.gap_check is not None and not report.gap_check.passed:
            raise CertificationError('the gap is not free of eigenvalues')
