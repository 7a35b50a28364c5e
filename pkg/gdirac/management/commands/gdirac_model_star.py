from ...conditions import check_selfadjoint_conditions
from ...exporter import conditions_document, write_json
from ...model import model_conditions, model_document
from ..base import GdiracCommand


class Command(GdiracCommand):
    help = "Write the triple junction model graph and its vertex conditions."

    def add_arguments(self, parser):
        self.add_model_arguments(parser)
        parser.add_argument('--out', default='-', help="Graph document output path.")
        parser.add_argument('--matrices', help="Write A and B as JSON to this path.")

    def handle(self, *args, **options):
        conditions = model_conditions(options['a'], options['b'])
        write_json(model_document(options['a'], options['b']), options['out'])
        if options['matrices']:
            write_json(conditions_document(conditions, check_selfadjoint_conditions(conditions)),
                       options['matrices'])
