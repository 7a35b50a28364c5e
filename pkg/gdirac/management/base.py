import logging

from django.core.exceptions import ImproperlyConfigured, ValidationError
from django.core.management.base import BaseCommand, CommandError

from ..constants import EXIT_NUMERIC, EXIT_USAGE, EXIT_VALIDATION
from ..exceptions import NumericError
from ..graph import load_graph
from ..model import builtin_model


logger = logging.getLogger(__name__)

BUILTIN = 'builtin'


def validation_message(err: ValidationError) -> str:
    return '; '.join(err.messages)


class GdiracCommand(BaseCommand):
    """
    Base for the gdirac commands: maps validation problems to exit status 2
    and numerical failures to exit status 3.
    """
    input_required = True

    def add_arguments(self, parser):
        parser.add_argument(
            'input', nargs=None if self.input_required else '?',
            help=f"Graph document (JSON) or '{BUILTIN}' for the triple junction model.")

    def add_model_arguments(self, parser):
        parser.add_argument('--a', type=complex, default=0j, help="Coefficient a of the model's free-end row, e.g. 1j.")
        parser.add_argument('--b', type=complex, default=1 + 0j, help="Coefficient b of the model's free-end row.")

    def execute(self, *args, **options):
        if options.get('verbosity', 1) >= 2:
            logging.getLogger('gdirac').setLevel(logging.DEBUG)
        try:
            return super().execute(*args, **options)
        except ValidationError as err:
            raise CommandError(validation_message(err), returncode=EXIT_VALIDATION)
        except ImproperlyConfigured as err:
            raise CommandError(str(err), returncode=EXIT_VALIDATION)
        except NumericError as err:
            raise CommandError(str(err), returncode=EXIT_NUMERIC)
        except OSError as err:
            raise CommandError(str(err), returncode=EXIT_USAGE)

    def load(self, value, options):
        """(graph, condition matrices or None) for a path or the builtin model."""
        if value == BUILTIN:
            return builtin_model(options.get('a', 0j), options.get('b', 1 + 0j))
        graph, _ = load_graph(value)
        logger.debug(f"loaded {value}")
        return graph, None
