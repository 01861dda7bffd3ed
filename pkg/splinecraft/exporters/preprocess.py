import logging

import numpy as np
from PIL import Image

from ..synth_data import RasterImage
from .thinning import zhang_suen

logger = logging.getLogger(__name__)

IMAGE_SIZE = 128
FOREGROUND = 0.5


def crop_to_foreground(pixels, threshold=FOREGROUND):
    rows, cols = np.nonzero(pixels > threshold)
    if not len(rows):
        return pixels
    return pixels[rows.min():rows.max() + 1, cols.min():cols.max() + 1]


def pad_to_square(pixels):
    """Centres the image on a square zero background."""
    h, w = pixels.shape
    side = max(h, w)
    top, left = (side - h) // 2, (side - w) // 2
    return np.pad(pixels, ((top, side - h - top), (left, side - w - left)))


def resize(pixels, size):
    if pixels.shape == (size, size):
        return pixels
    image = Image.fromarray(pixels.astype(np.float32))
    return np.asarray(image.resize((size, size), Image.BILINEAR), dtype=float)


def preprocess(pixels, size=IMAGE_SIZE, crop=False, invert=False, thin=False):
    """External raster -> size x size RasterImage with bright strokes on black.

    An input that is already size x size and needs none of the options
    comes back unchanged.
    """
    pixels = np.asarray(pixels, dtype=float)
    if pixels.ndim != 2 or not pixels.size:
        raise ValueError(f'Expected a non-empty grayscale image, got shape {pixels.shape}.')
    if invert:
        pixels = 1.0 - pixels
    if crop:
        pixels = crop_to_foreground(pixels)
    pixels = np.clip(resize(pad_to_square(pixels), size), 0.0, 1.0)
    if thin:
        pixels = zhang_suen(pixels > FOREGROUND).astype(float)
    logger.debug('Preprocessed to %sx%s (crop=%s invert=%s thin=%s).',
                 size, size, crop, invert, thin)
    return RasterImage(pixels)
