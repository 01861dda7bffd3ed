import json
from dataclasses import asdict
from pathlib import Path

import numpy as np

from ...classic_fit import (FitConfig, curves_chamfer, fit_curveset, multi_start_fit,
                            multi_start_fit_curveset, targets_from_image)
from ...exporters import read_image, write_attention_maps, write_svg
from ...models import load_model
from ...spline_core import MAX_CURVES, MIN_CURVES
from ...synth_data import RasterImage, splat
from ..base import SplinecraftCommand


def read_points(path):
    """2D target points from JSON text: a list of [x, y] or {"points": [...]}."""
    data = json.loads(Path(path).read_text(encoding='utf-8'))
    points = np.asarray(data['points'] if isinstance(data, dict) else data, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 or not len(points):
        raise ValueError(f'{path} does not hold a list of (x, y) points.')
    return points


def points_image(points, size):
    """Splats target points into an image the network can read."""
    return RasterImage(np.minimum(splat(np.zeros((size, size)), points), 1.0))


class Command(SplinecraftCommand):
    help = 'Fit B-spline curves to an image or a point set with point-distance minimisation.'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True)
        parser.add_argument('--input-kind', choices=['auto', 'image', 'points'],
                            default='auto', help='auto: .json is points, anything else image.')
        parser.add_argument('--init', choices=['random', 'checkpoint'], default='random')
        parser.add_argument('--checkpoint', default=None)
        parser.add_argument('--curves', type=int, default=1,
                            help='Curve count for random initialisation.')
        parser.add_argument('--restarts', type=int, default=None)
        parser.add_argument('--max-iters', type=int, default=None)
        parser.add_argument('--out', default=None, help='JSON report path.')
        parser.add_argument('--svg', default=None, help='SVG overlay path.')
        parser.add_argument('--attention', default=None, metavar='DIR',
                            help='Write attention maps of an attention model as PNGs.')
        self.add_seed_argument(parser)

    def run(self, **options):
        kind = options['input_kind']
        if kind == 'auto':
            kind = 'points' if options['input'].lower().endswith('.json') else 'image'
        if options['init'] == 'checkpoint' and not options['checkpoint']:
            raise ValueError('--init checkpoint needs --checkpoint.')
        if not MIN_CURVES <= options['curves'] <= MAX_CURVES:
            raise ValueError(f'--curves takes {MIN_CURVES} to {MAX_CURVES}.')
        cfg = FitConfig.from_settings(restarts=options['restarts'],
                                      max_iters=options['max_iters'], seed=options['seed'])
        self.announce({'input': options['input'], 'input_kind': kind, 'init': options['init'],
                       'checkpoint': options['checkpoint'], 'curves': options['curves'],
                       'fit': asdict(cfg)}, cfg.seed)

        image = read_image(options['input']) if kind == 'image' else None
        targets = targets_from_image(image) if image is not None else read_points(
            options['input'])
        report = {'input': options['input'], 'input_kind': kind, 'init': options['init'],
                  'seed': cfg.seed, 'targets': len(targets)}

        if options['init'] == 'checkpoint':
            model, _ = load_model(options['checkpoint'])
            if model.kind.is_3d:
                raise ValueError(f'Checkpoint holds a 3D {model.kind.value} model.')
            if image is None:
                image = points_image(targets, model.config.image_size)
            prediction = model.predict(image)
            report['initial_chamfer'] = curves_chamfer(prediction, targets)
            results = fit_curveset(targets, prediction, cfg)
            if options['attention']:
                paths = write_attention_maps(model.attention_maps(image), options['attention'])
                report['attention_maps'] = [str(path) for path in paths]
        elif options['curves'] == 1:
            results = [multi_start_fit(targets, cfg)]
        else:
            results = multi_start_fit_curveset(targets, options['curves'], cfg)

        curves = [result.curve for result in results]
        report['curves'] = [result.to_dict() for result in results]
        report['chamfer'] = curves_chamfer(curves, targets)
        if options['svg']:
            write_svg(curves, options['svg'])
        self.emit(report, options['out'])
