"""
``gdirac <command> [options]``: a standalone entry point that configures a
minimal Django project and dispatches to the ``gdirac_*`` management commands.
"""
import logging
import sys
from typing import NamedTuple, Optional, Tuple

import django
from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command, load_command_class
from django.core.management.base import CommandError

from .constants import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, GDIRAC_THREADS
from .utils import threads_from_environ


logger = logging.getLogger(__name__)

COMMANDS = ('check', 'secular', 'report', 'eigs', 'thresholds', 'form-norm', 'model-star')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'console': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'console', 'stream': 'ext://sys.stderr'},
    },
    'loggers': {
        'gdirac': {'handlers': ['console'], 'level': 'WARNING', 'propagate': False},
    },
}


def command_name(command: str) -> str:
    return f"gdirac_{command.replace('-', '_')}"


class RunConfig(NamedTuple):
    command: str
    arguments: Tuple[str, ...]
    input: Optional[str] = None
    zmin: Optional[float] = None
    zmax: Optional[float] = None
    samples: Optional[int] = None
    h: Optional[float] = None
    L: Optional[float] = None
    theta: Optional[float] = None
    out: Optional[str] = None

    @classmethod
    def from_argv(cls, argv) -> 'RunConfig':
        if not argv or argv[0] not in COMMANDS:
            raise CommandError(f"usage: gdirac {{{','.join(COMMANDS)}}} [options]", returncode=EXIT_USAGE)
        command, arguments = argv[0], tuple(argv[1:])
        parser = load_command_class('gdirac', command_name(command)).create_parser('gdirac', command)
        options = vars(parser.parse_args(arguments))
        config = cls(command, arguments, **{field: options.get(field) for field in cls._fields[2:]})
        config.validate()
        return config

    def validate(self):
        if self.samples is not None and self.samples < 2:
            raise ValidationError(f"at least 2 samples are needed, got {self.samples}", code='samples')
        if self.zmin is not None and self.zmax is not None and not self.zmin < self.zmax:
            raise ValidationError(f"empty window [{self.zmin}, {self.zmax}]", code='window')
        for name in ('h', 'L'):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValidationError(f"{name} must be positive, got {value}", code=name)
        if self.theta is not None and not 0 < self.theta < 1:
            raise ValidationError(f"theta must lie in (0, 1), got {self.theta}", code='theta')


def configure(environ=None):
    if settings.configured:
        return
    settings.configure(
        INSTALLED_APPS=['gdirac'],
        LOGGING=LOGGING,
        **{GDIRAC_THREADS: threads_from_environ(environ)},
    )
    django.setup()


def run(config: RunConfig) -> int:
    try:
        call_command(command_name(config.command), *config.arguments)
    except CommandError as err:
        sys.stderr.write(f"gdirac {config.command}: {err}\n")
        return err.returncode
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    configure()
    try:
        config = RunConfig.from_argv(argv)
    except CommandError as err:
        sys.stderr.write(f"{err}\n")
        return err.returncode
    except ValidationError as err:
        sys.stderr.write(f"{'; '.join(err.messages)}\n")
        return EXIT_VALIDATION
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
