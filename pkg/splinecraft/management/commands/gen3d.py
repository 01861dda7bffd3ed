from ...synth_data import Mode
from ..generate import GenerateCommand


class Command(GenerateCommand):
    help = 'Generate a 3D surface dataset (point clouds, optional renders).'

    def add_arguments(self, parser):
        parser.add_argument('--kind', choices=['rev', 'ext'], default='rev')
        parser.add_argument('--cloud-size', type=int, default=None)
        parser.add_argument('--noise', type=float, default=None,
                            help='Gaussian noise sigma added to cloud points.')
        parser.add_argument('--no-image', action='store_true',
                            help='Skip the rendered images (point-cloud modes only).')
        super().add_arguments(parser)

    def generation_mode(self, options):
        return Mode.REV if options['kind'] == 'rev' else Mode.EXT

    def generation_options(self, options):
        return {'cloud_size': options['cloud_size'], 'noise': options['noise'],
                'with_image': not options['no_image']}
