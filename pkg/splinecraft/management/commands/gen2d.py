from ...synth_data import Mode
from ..generate import GenerateCommand


class Command(GenerateCommand):
    help = 'Generate a 2D curve dataset (images with curve-set labels).'

    def add_arguments(self, parser):
        parser.add_argument('--mode', choices=['V', 'M', 'MV'], default='V')
        super().add_arguments(parser)

    def generation_mode(self, options):
        return Mode(options['mode'])
