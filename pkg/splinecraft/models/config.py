import enum
from dataclasses import asdict, dataclass, replace

from ..spline_core import SurfaceKind
from ..synth_data import Mode


class ModelKind(enum.Enum):
    V = 'V'
    M = 'M'
    MV = 'MV'
    REV3D = 'REV3D'
    EXT3D = 'EXT3D'
    REV3D_PC = 'REV3D_PC'
    EXT3D_PC = 'EXT3D_PC'

    @property
    def is_3d(self):
        return self not in (ModelKind.V, ModelKind.M, ModelKind.MV)

    @property
    def uses_points(self):
        return self in (ModelKind.REV3D_PC, ModelKind.EXT3D_PC)

    @property
    def uses_attention(self):
        return self in (ModelKind.M, ModelKind.MV)

    @property
    def surface_kind(self):
        if self in (ModelKind.REV3D, ModelKind.REV3D_PC):
            return SurfaceKind.REVOLUTION
        if self in (ModelKind.EXT3D, ModelKind.EXT3D_PC):
            return SurfaceKind.EXTRUSION
        return None

    @property
    def dataset_mode(self):
        """Generation mode of the datasets this model trains on."""
        if self.surface_kind is SurfaceKind.REVOLUTION:
            return Mode.REV
        if self.surface_kind is SurfaceKind.EXTRUSION:
            return Mode.EXT
        return Mode(self.value)


@dataclass(frozen=True)
class ModelConfig:
    feature_dim: int = 128
    conv_channels: tuple = (16, 32, 64, 64)
    point_mlp: tuple = (64, 128, 256)
    head_hidden: int = 64
    attention_hidden: int = 64
    recon_hidden: int = 128
    image_size: int = 128
    revolution_grid: tuple = (32, 64)
    extrusion_grid: tuple = (32, 32)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'conv_channels', tuple(self.conv_channels))
        object.__setattr__(self, 'point_mlp', tuple(self.point_mlp))
        object.__setattr__(self, 'revolution_grid', tuple(self.revolution_grid))
        object.__setattr__(self, 'extrusion_grid', tuple(self.extrusion_grid))
        if self.image_size % 2 ** len(self.conv_channels):
            raise ValueError(
                f'image_size {self.image_size} does not survive '
                f'{len(self.conv_channels)} 2x2 poolings.')

    @property
    def sites(self):
        """Attention sites d = x * y of the last feature map."""
        side = self.image_size // 2 ** len(self.conv_channels)
        return side * side

    @classmethod
    def from_settings(cls, **options):
        from django.conf import settings
        values = dict(settings.SPLINECRAFT_MODEL)
        sampling = settings.SPLINECRAFT_SAMPLING
        values.update(image_size=sampling['image_size'],
                      revolution_grid=sampling['revolution_grid'],
                      extrusion_grid=sampling['extrusion_grid'])
        values.update({k: v for k, v in options.items() if v is not None})
        return cls(**values)

    @classmethod
    def from_dict(cls, data):
        return cls(**data)

    def to_dict(self):
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    def with_options(self, **options):
        return replace(self, **options)
