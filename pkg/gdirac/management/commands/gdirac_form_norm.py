from django.core.exceptions import ValidationError

import numpy as np

from ...constants import GDIRAC_SEED
from ...exporter import write_json
from ...form_domain import MultiplierSurrogate, dirac_form_norm, form_norm_report
from ...oracle import discretize, eigs_full
from ...utils import get_setting
from ..base import GdiracCommand


def parse_multipliers(value):
    try:
        return [float(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise ValidationError(f"multipliers must be a comma separated list of numbers, got {value!r}",
                              code='multipliers')


class Command(GdiracCommand):
    help = "Interpolation and fractional power norms on a diagonal surrogate or a discretized graph."
    input_required = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_model_arguments(parser)
        parser.add_argument('--theta', type=float, default=0.5)
        parser.add_argument('--multipliers', help="Comma separated weights A_i >= 1; x is the all-ones vector.")
        parser.add_argument('--h', type=float)
        parser.add_argument('--L', type=float)
        parser.add_argument('--seed', type=int, help="Seed of the random test vector on a graph.")
        parser.add_argument('--out', default='-')

    def handle(self, *args, **options):
        theta = options['theta']
        if options['multipliers']:
            surrogate = MultiplierSurrogate.from_multipliers(parse_multipliers(options['multipliers']))
            write_json(form_norm_report(surrogate, np.ones(surrogate.n), theta), options['out'])
            return
        if not options['input']:
            raise ValidationError('either a graph or --multipliers is required', code='input')

        graph, _ = self.load(options['input'], options)
        system = eigs_full(discretize(graph, graph.params, options['h'], options['L']))
        seed = int(get_setting(GDIRAC_SEED)) if options['seed'] is None else options['seed']
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(system.operator.size) + 1j * rng.standard_normal(system.operator.size)
        x /= np.linalg.norm(x)
        coefficients = system.vectors.conj().T @ x
        data = form_norm_report(MultiplierSurrogate(system.values), coefficients, theta)
        data['dirac_form_norm'] = dirac_form_norm(system, x)
        write_json(data, options['out'])
