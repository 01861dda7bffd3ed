from pathlib import Path

from ...exporters import read_cloud, read_image, surface_mesh, write_ply
from ...geo_metrics import chamfer
from ...models import load_model
from ...spline_core import SurfaceKind
from ..base import SplinecraftCommand


class Command(SplinecraftCommand):
    help = 'Reconstruct a surface of revolution or extrusion from a point cloud or an image.'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='PLY cloud or raster image.')
        parser.add_argument('--kind', choices=['rev', 'ext'], required=True)
        parser.add_argument('--checkpoint', required=True)
        parser.add_argument('--out', default=None, help='JSON report path.')
        parser.add_argument('--ply', default=None, help='Reconstructed mesh (PLY) path.')

    def run(self, **options):
        modality = 'cloud' if Path(options['input']).suffix.lower() == '.ply' else 'image'
        kind = SurfaceKind(options['kind'])
        model, manifest = load_model(options['checkpoint'])
        if model.kind.surface_kind is not kind:
            raise ValueError(f'Checkpoint holds a {model.kind.value} model, '
                             f'which does not reconstruct {kind.value} surfaces.')
        if model.kind.uses_points != (modality == 'cloud'):
            raise ValueError(f'A {model.kind.value} model does not read {modality} input.')
        self.announce({'input': options['input'], 'modality': modality, 'kind': kind.value,
                       'checkpoint': options['checkpoint'], 'model': model.kind.value},
                      model.config.seed)

        if modality == 'cloud':
            cloud = read_cloud(options['input'])
            model_input = cloud
        else:
            model_input = read_image(options['input'])
        output = model.predict(model_input)
        spec = output.spec()
        report = {'input': options['input'], 'modality': modality, 'spec': spec.to_dict()}
        if modality == 'cloud':
            report['chamfer'] = chamfer(output.points.values, cloud)
        if options['ply']:
            k, n_sweep = model.grid
            write_ply(options['ply'], *surface_mesh(spec, n_sweep, k))
        self.emit(report, options['out'])
