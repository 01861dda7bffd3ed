import json
import sys
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from ..autodiff import CheckpointError, NonFiniteError
from ..classic_fit import FitConfigError, FitFailedError, NumericalFailureError
from ..exporters import PlyFormatError, UnsupportedFormatError
from ..geo_metrics import UndefinedMetricError
from ..spline_core import InvalidCurveError, InvalidSurfaceError
from ..synth_data import DatasetFormatError, GenConfigError, GenerationError
from ..train_eval import DatasetModeError, TrainConfigError, TrainingAbortedError

USAGE, DATA_ERROR, NUMERICAL_FAILURE = 2, 3, 4

NUMERICAL_ERRORS = (TrainingAbortedError, NumericalFailureError, FitFailedError,
                    NonFiniteError, ArithmeticError)
DATA_ERRORS = (DatasetFormatError, UnsupportedFormatError, PlyFormatError, CheckpointError,
               DatasetModeError, GenConfigError, FitConfigError, TrainConfigError,
               GenerationError, InvalidCurveError, InvalidSurfaceError,
               UndefinedMetricError, OSError, ValueError, KeyError)


def worker_count(requested=None):
    """Requested workers, never more than SPLINECRAFT_THREADS."""
    cap = settings.SPLINECRAFT_THREADS
    return max(1, min(requested or cap, cap))


def to_json(data):
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False)


class SplinecraftCommand(BaseCommand):
    """Base for every splinecraft command.

    Subclasses implement ``run(**options)`` and call ``announce`` once the
    configuration is resolved. Data problems leave with exit code 3,
    numerical failures with 4; argparse rejects bad usage with 2.
    """

    requires_system_checks = []

    def add_seed_argument(self, parser):
        parser.add_argument('--seed', type=int, default=0)

    def add_workers_argument(self, parser):
        parser.add_argument('--workers', type=int, default=None,
                            help='Worker threads (capped by SPLINECRAFT_THREADS).')

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except NUMERICAL_ERRORS as e:
            raise CommandError(f'Numerical failure: {e}', returncode=NUMERICAL_FAILURE) from e
        except DATA_ERRORS as e:
            raise CommandError(f'Data error: {e}', returncode=DATA_ERROR) from e

    def run(self, **options):
        raise NotImplementedError

    def announce(self, config, seed):
        """Resolved configuration and seed, on stderr so stdout stays a clean report."""
        line = json.dumps({'command': self.command_name, 'config': config, 'seed': seed},
                          sort_keys=True)
        self.stderr.write(f'resolved {line}')

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def emit(self, report, out=None):
        """Writes a JSON report to ``out`` or stdout."""
        text = to_json(report)
        if out:
            Path(out).write_text(text + '\n', encoding='utf-8')
        else:
            self.stdout.write(text)

    def show_progress(self, options):
        return options.get('verbosity', 1) > 0 and sys.stderr.isatty()
