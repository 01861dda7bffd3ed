"""Binary dataset files.

Layout (little-endian): 4-byte magic ``SPL2`` (scenes) or ``SPL3`` (surfaces),
u16 version, u32 record count, then the records.

SPL2 record: u16 size, size*size u8 intensities, u8 n_curves, then per curve
u8 m and m (x, y) f32 pairs.

SPL3 record: u8 kind (0 revolution, 1 extrusion), f32 height, 5 (x, y) f32
generator points, u32 N, N (x, y, z) f32 triples, u16 image size (0 = none)
and size*size u8 intensities.
"""
import logging
import struct
from pathlib import Path

import numpy as np

from ..spline_core import (CurveSet, InvalidCurveError, InvalidSurfaceError, SplineCurve2D,
                           SurfaceKind, SurfaceSpec)
from .raster import RasterImage
from .records import Instance3D, Scene2D

logger = logging.getLogger(__name__)

MAGIC_2D = b'SPL2'
MAGIC_3D = b'SPL3'
VERSION = 1
HEADER = struct.Struct('<4sHI')


class DatasetFormatError(ValueError):
    pass


def _image_bytes(image):
    if image is None:
        return struct.pack('<H', 0)
    return struct.pack('<H', image.size) + image.to_bytes().tobytes()


def _encode_scene(scene):
    parts = [_image_bytes(scene.image), struct.pack('<B', len(scene.label))]
    for curve in scene.label:
        parts.append(struct.pack('<B', curve.m))
        parts.append(curve.control_points.astype('<f4').tobytes())
    return b''.join(parts)


def _encode_instance(instance):
    spec = instance.spec
    cloud = np.asarray(instance.cloud, dtype='<f4')
    return b''.join([
        struct.pack('<Bf', spec.kind.code, spec.height),
        spec.generator.control_points.astype('<f4').tobytes(),
        struct.pack('<I', len(cloud)),
        cloud.tobytes(),
        _image_bytes(instance.image)])


def encode_dataset(records):
    records = list(records)
    is_3d = bool(records) and isinstance(records[0], Instance3D)
    magic = MAGIC_3D if is_3d else MAGIC_2D
    encode = _encode_instance if is_3d else _encode_scene
    return HEADER.pack(magic, VERSION, len(records)) + b''.join(map(encode, records))


def write_dataset(records, path):
    """Writes records (all scenes or all surface instances) to ``path``."""
    data = encode_dataset(records)
    Path(path).write_bytes(data)
    logger.info('Wrote %s bytes to %s.', len(data), path)
    return len(data)


class _Reader:

    def __init__(self, data):
        self.data = data
        self.offset = 0

    def take(self, n):
        if self.offset + n > len(self.data):
            raise DatasetFormatError(
                f'Truncated record: need {n} bytes at offset {self.offset}, '
                f'file has {len(self.data)}.')
        chunk = self.data[self.offset:self.offset + n]
        self.offset += n
        return chunk

    def unpack(self, fmt):
        fmt = struct.Struct(fmt)
        return fmt.unpack(self.take(fmt.size))

    def array(self, dtype, count):
        dtype = np.dtype(dtype)
        return np.frombuffer(self.take(dtype.itemsize * count), dtype=dtype).astype(float)

    def image(self):
        (size,) = self.unpack('<H')
        if size == 0:
            return None
        pixels = np.frombuffer(self.take(size * size), dtype=np.uint8).reshape(size, size)
        return RasterImage.from_bytes(pixels)


def _decode_scene(reader):
    image = reader.image()
    if image is None:
        raise DatasetFormatError('Scene records must carry an image.')
    (n_curves,) = reader.unpack('<B')
    curves = []
    for _ in range(n_curves):
        (m,) = reader.unpack('<B')
        curves.append(SplineCurve2D(reader.array('<f4', 2 * m).reshape(m, 2)))
    return Scene2D(image=image, label=CurveSet(tuple(curves)))


def _decode_instance(reader):
    kind, height = reader.unpack('<Bf')
    if kind not in (0, 1):
        raise DatasetFormatError(f'Unknown surface kind {kind}.')
    generator = SplineCurve2D(reader.array('<f4', 10).reshape(5, 2))
    (n,) = reader.unpack('<I')
    cloud = reader.array('<f4', 3 * n).reshape(n, 3)
    spec = SurfaceSpec(generator, SurfaceKind.from_code(kind), float(height))
    return Instance3D(spec=spec, cloud=cloud, image=reader.image())


def decode_dataset(data):
    reader = _Reader(data)
    magic, version, count = reader.unpack(HEADER.format)
    if magic not in (MAGIC_2D, MAGIC_3D):
        raise DatasetFormatError(f'Bad magic {magic!r}; not a splinecraft dataset.')
    if version != VERSION:
        raise DatasetFormatError(f'Unsupported dataset version {version}.')
    decode = _decode_instance if magic == MAGIC_3D else _decode_scene
    records = []
    for index in range(count):
        try:
            records.append(decode(reader))
        except (InvalidCurveError, InvalidSurfaceError) as e:
            raise DatasetFormatError(f'Record {index} is corrupt: {e}') from e
    if reader.offset != len(data):
        raise DatasetFormatError(f'{len(data) - reader.offset} trailing bytes after records.')
    return records


def read_dataset(path):
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise DatasetFormatError(f'Cannot read dataset {path}: {e}') from e
    return decode_dataset(data)


def record_size(record):
    """Encoded size of one record in bytes."""
    if isinstance(record, Instance3D):
        image = 2 + (record.image.size ** 2 if record.image is not None else 0)
        return 1 + 4 + 40 + 4 + 12 * len(record.cloud) + image
    return 2 + record.image.size ** 2 + 1 + sum(1 + 8 * m for m in record.label.counts)
