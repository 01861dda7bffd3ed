import enum
from dataclasses import dataclass, replace


class Mode(enum.Enum):
    V = 'V'
    M = 'M'
    MV = 'MV'
    REV = 'REV'
    EXT = 'EXT'

    @property
    def is_3d(self):
        return self in (Mode.REV, Mode.EXT)


# curve-count and point-count ranges per variability mode
MODE_RANGES = {
    Mode.V: ((1, 1), (4, 6)),
    Mode.M: ((1, 3), (5, 5)),
    Mode.MV: ((1, 3), (4, 6)),
    Mode.REV: ((1, 1), (5, 5)),
    Mode.EXT: ((1, 1), (5, 5)),
}


class GenConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    count: int = 1
    size: int = 128
    mode: Mode = Mode.V
    curve_count_range: tuple = (1, 1)
    point_count_range: tuple = (4, 6)
    min_point_separation: float = 0.08
    margin: float = 0.05
    max_rejections: int = 1000
    cloud_size: int = 1024
    noise: float = 0.0
    with_image: bool = True

    def __post_init__(self):
        if self.count < 1:
            raise GenConfigError(f'count must be at least 1, got {self.count}.')
        if self.size < 32:
            raise GenConfigError(f'Images are at least 32 pixels wide, got {self.size}.')
        lo, hi = self.curve_count_range
        if not 1 <= lo <= hi <= 3:
            raise GenConfigError(f'Invalid curve_count_range {self.curve_count_range}.')
        lo, hi = self.point_count_range
        if not 4 <= lo <= hi <= 6:
            raise GenConfigError(f'Invalid point_count_range {self.point_count_range}.')
        if self.noise < 0:
            raise GenConfigError(f'noise must be non-negative, got {self.noise}.')

    @classmethod
    def for_mode(cls, mode, **options):
        mode = Mode(mode)
        curve_range, point_range = MODE_RANGES[mode]
        return cls(mode=mode, curve_count_range=curve_range,
                   point_count_range=point_range, **options)

    @classmethod
    def from_settings(cls, mode, **options):
        from django.conf import settings
        defaults = dict(
            size=settings.SPLINECRAFT_SAMPLING['image_size'],
            cloud_size=settings.SPLINECRAFT_SAMPLING['cloud_size'],
            margin=settings.SPLINECRAFT_GENERATION['margin'],
            min_point_separation=settings.SPLINECRAFT_GENERATION['min_point_separation'],
            max_rejections=settings.SPLINECRAFT_GENERATION['max_rejections'])
        defaults.update({k: v for k, v in options.items() if v is not None})
        return cls.for_mode(mode, **defaults)

    def record_seed(self, index):
        return self.seed ^ index

    def with_options(self, **options):
        return replace(self, **options)
