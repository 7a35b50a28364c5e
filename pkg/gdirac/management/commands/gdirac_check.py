from ...conditions import assemble_AB, check_selfadjoint_conditions
from ...exceptions import CertificationError
from ...exporter import conditions_document, write_json
from ...oracle import discretize, hermiticity_residual
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Check the vertex conditions of a graph and the Hermiticity of its discretization."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_model_arguments(parser)
        parser.add_argument('--matrices', help="Write A and B as JSON to this path.")
        parser.add_argument('--h', type=float, help="Grid spacing of the discrete operator.")
        parser.add_argument('--L', type=float, help="Truncation length of the half-lines.")

    def handle(self, *args, **options):
        graph, conditions = self.load(options['input'], options)
        conditions = conditions if conditions is not None else assemble_AB(graph)
        report = check_selfadjoint_conditions(conditions)
        hermiticity = hermiticity_residual(discretize(graph, graph.params, options['h'], options['L']))

        self.stdout.write(f"trace dimension: {report.dimension}")
        self.stdout.write(f"AB*-BA* residual: {report.compat_residual:.3e}")
        status = 'full' if report.rank_full else 'deficient'
        self.stdout.write(f"rank [A|B]: {report.rank}/{report.dimension} ({status})")
        self.stdout.write(f"hermiticity residual: {hermiticity:.3e}")
        if options['matrices']:
            write_json(conditions_document(conditions, report), options['matrices'])

        if not (report.hermitian_compat and report.rank_full):
            raise CertificationError('vertex conditions do not define a self-adjoint operator')
