from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..synth_data import RasterImage

WIDE_MODES = ('I', 'I;16', 'I;16B', 'I;16L')


class UnsupportedFormatError(ValueError):
    pass


def read_pixels(path):
    """Any raster Pillow can open (PGM/PPM included) as grayscale floats in [0, 1]."""
    try:
        with Image.open(path) as image:
            image.load()
            if image.mode in WIDE_MODES:
                pixels = np.asarray(image, dtype=float)
                scale = 65535.0 if pixels.max(initial=0) > 255 else 255.0
                return np.clip(pixels / scale, 0.0, 1.0)
            return np.asarray(image.convert('L'), dtype=float) / 255.0
    except (UnidentifiedImageError, OSError, ValueError) as e:
        raise UnsupportedFormatError(f'Cannot read {path} as a raster image: {e}') from e


def read_image(path):
    pixels = read_pixels(path)
    if pixels.shape[0] != pixels.shape[1]:
        raise UnsupportedFormatError(
            f'{path} is {pixels.shape[1]}x{pixels.shape[0]}; run preprocess to square it.')
    return RasterImage(pixels)


def to_pil(image):
    return Image.fromarray(image.to_bytes())


def write_image(image, path):
    """8-bit grayscale; the format follows the suffix (.pgm, .png, ...)."""
    try:
        to_pil(image).save(path)
    except (KeyError, ValueError, OSError) as e:
        raise UnsupportedFormatError(f'Cannot write {path}: {e}') from e


def write_attention_maps(maps, directory, prefix='attention'):
    """One PNG per attention map, each scaled to its own maximum."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, weights in enumerate(maps):
        weights = np.asarray(weights, dtype=float)
        peak = weights.max(initial=0.0)
        scaled = weights / peak if peak > 0 else weights
        path = directory / f'{prefix}_{index:02d}.png'
        write_image(RasterImage(scaled), path)
        paths.append(path)
    return paths
