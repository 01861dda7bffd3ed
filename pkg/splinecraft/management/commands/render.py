import json
from pathlib import Path

from django.conf import settings

from ...exporters import surface_mesh, write_ply, write_svg
from ...spline_core import CurveSet, SurfaceKind, SurfaceSpec, sweep
from ..base import SplinecraftCommand


def load_json(path):
    return json.loads(Path(path).read_text(encoding='utf-8'))


def curves_from_json(data):
    """A CurveSet from {"curves": [...]}, a fit report or a bare curve."""
    if 'curves' in data:
        return CurveSet.from_dict(data)
    return CurveSet.from_dict({'curves': [data]})


class Command(SplinecraftCommand):
    help = 'Export curves to SVG or a surface to PLY.'

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--curves', help='Curve-set JSON (a fit report works too).')
        source.add_argument('--surface',
                            help='Surface spec JSON (a recon3d report works too).')
        parser.add_argument('--out', required=True, help='.svg for curves, .ply for surfaces.')
        parser.add_argument('--samples', type=int, default=None,
                            help='Points per curve (settings svg_samples by default).')
        parser.add_argument('--size', type=int, default=512, help='SVG canvas size.')
        parser.add_argument('--background', default=None, help='Image drawn under the curves.')
        parser.add_argument('--grid', type=int, nargs=2, default=None,
                            metavar=('K', 'N_SWEEP'))
        parser.add_argument('--cloud', action='store_true', help='PLY vertices only.')

    def run(self, **options):
        sampling = settings.SPLINECRAFT_SAMPLING
        options['samples'] = options['samples'] or sampling['svg_samples']
        self.announce({k: options[k] for k in ('curves', 'surface', 'out', 'samples', 'grid',
                                               'cloud')}, None)
        if options['curves']:
            if not options['out'].lower().endswith('.svg'):
                raise ValueError('Curves render to .svg.')
            curves = curves_from_json(load_json(options['curves']))
            write_svg(curves, options['out'], options['size'], options['samples'],
                      options['background'])
            self.stdout.write(f'wrote {len(curves)} curves to {options["out"]}')
            return
        if not options['out'].lower().endswith('.ply'):
            raise ValueError('Surfaces render to .ply.')
        data = load_json(options['surface'])
        spec = SurfaceSpec.from_dict(data.get('spec', data)).validate()
        k, n_sweep = options['grid'] or (sampling['revolution_grid']
                                         if spec.kind is SurfaceKind.REVOLUTION
                                         else sampling['extrusion_grid'])
        if options['cloud']:
            vertices, faces = sweep(spec, n_sweep, k), None
        else:
            vertices, faces = surface_mesh(spec, n_sweep, k)
        write_ply(options['out'], vertices, faces)
        self.stdout.write(f'wrote {len(vertices)} vertices to {options["out"]}')
