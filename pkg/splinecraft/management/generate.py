from django.conf import settings

from ..synth_data import (GenConfig, GenerationError, dataset_summary, generate_dataset,
                          read_dataset, validate_record, write_dataset)
from .base import SplinecraftCommand, worker_count


class GenerateCommand(SplinecraftCommand):
    """Shared body of gen2d / gen3d: generate, validate, write, reread, summarise."""

    def add_arguments(self, parser):
        parser.add_argument('--count', type=int,
                            default=settings.SPLINECRAFT_GENERATION['count'])
        parser.add_argument('--out', required=True)
        parser.add_argument('--size', type=int, default=None, help='Image side in pixels.')
        self.add_seed_argument(parser)
        self.add_workers_argument(parser)

    def generation_mode(self, options):
        raise NotImplementedError

    def generation_options(self, options):
        return {}

    def run(self, **options):
        config = GenConfig.from_settings(
            self.generation_mode(options), seed=options['seed'], count=options['count'],
            size=options['size'], **self.generation_options(options))
        workers = worker_count(options['workers'])
        self.announce(self.describe(config, workers), config.seed)

        records = [validate_record(r, config.margin)
                   for r in generate_dataset(config, workers, self.show_progress(options))]
        write_dataset(records, options['out'])
        summary = dataset_summary(records)
        if dataset_summary(read_dataset(options['out'])) != summary:
            raise GenerationError(f'{options["out"]} does not read back as written.')
        self.emit({'out': options['out'], 'summary': summary})

    def describe(self, config, workers):
        return {
            'mode': config.mode.value, 'count': config.count, 'size': config.size,
            'curve_count_range': list(config.curve_count_range),
            'point_count_range': list(config.point_count_range),
            'min_point_separation': config.min_point_separation, 'margin': config.margin,
            'cloud_size': config.cloud_size, 'noise': config.noise,
            'with_image': config.with_image, 'workers': workers}
