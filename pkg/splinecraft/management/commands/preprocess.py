from ...exporters import IMAGE_SIZE, preprocess, read_pixels, write_image
from ..base import SplinecraftCommand


class Command(SplinecraftCommand):
    help = 'Turn an external raster into a square grayscale network input.'

    def add_arguments(self, parser):
        parser.add_argument('--in', dest='input', required=True)
        parser.add_argument('--out', required=True)
        parser.add_argument('--size', type=int, default=IMAGE_SIZE)
        parser.add_argument('--crop', action='store_true',
                            help='Crop to the foreground bounding box before padding.')
        parser.add_argument('--invert', action='store_true',
                            help='For dark strokes on a light background.')
        parser.add_argument('--thin', action='store_true',
                            help='Zhang-Suen thinning of the binarised image.')

    def run(self, **options):
        flags = {name: options[name] for name in ('crop', 'invert', 'thin')}
        self.announce({'in': options['input'], 'out': options['out'],
                       'size': options['size'], **flags}, None)
        image = preprocess(read_pixels(options['input']), options['size'], **flags)
        write_image(image, options['out'])
        self.stdout.write(f'wrote {options["size"]}x{options["size"]} image to '
                          f'{options["out"]}')
