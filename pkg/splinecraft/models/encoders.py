from dataclasses import dataclass

import numpy as np

from ..autodiff import Tensor, ops
from .layers import add_dense, add_mlp, dense, mlp


@dataclass
class ImageFeatures:
    """Encoder output for one image.

    ``sites`` is the (d, l) matrix of the last feature map, one row per
    spatial location; ``vector`` is the pooled feature of size feature_dim.
    """

    sites: Tensor
    pooled: Tensor
    vector: Tensor


def image_batch(images):
    """Stacks RasterImages (or pixel arrays) into an (N, 1, H, W) array."""
    pixels = [getattr(image, 'pixels', image) for image in images]
    return np.stack([np.asarray(p, dtype=float) for p in pixels])[:, None]


class ImageEncoder:
    """3x3 conv + relu + 2x2 max-pool blocks, then mean pooling and a dense layer."""

    def __init__(self, store, config, prefix='image'):
        self.store = store
        self.prefix = prefix
        self.blocks = len(config.conv_channels)
        channels = (1,) + config.conv_channels
        for i, (c_in, c_out) in enumerate(zip(channels[:-1], channels[1:])):
            store.add(f'{prefix}.conv{i}.w', (c_out, c_in, 3, 3))
            store.add(f'{prefix}.conv{i}.b', (c_out,), init='zeros')
        add_dense(store, f'{prefix}.fc', config.conv_channels[-1], config.feature_dim)

    def feature_maps(self, images):
        x = Tensor(image_batch(images))
        for i in range(self.blocks):
            w = self.store[f'{self.prefix}.conv{i}.w']
            b = self.store[f'{self.prefix}.conv{i}.b']
            x = ops.maxpool2d(ops.relu(ops.conv2d(x, w, b)))
        return x

    def encode(self, images):
        """One ImageFeatures per image."""
        maps = self.feature_maps(images)
        pooled = ops.mean_pool_spatial(maps)
        vectors = dense(self.store, f'{self.prefix}.fc', pooled, ops.tanh)
        channels, height, width = maps.shape[1:]
        features = []
        for n in range(maps.shape[0]):
            sites = ops.transpose(ops.reshape(maps[n], (channels, height * width)))
            features.append(ImageFeatures(sites=sites, pooled=pooled[n], vector=vectors[n]))
        return features


class PointEncoder:
    """Shared per-point MLP, max over points, dense layer to feature_dim."""

    def __init__(self, store, config, prefix='points'):
        self.store = store
        self.prefix = prefix
        self.layers = len(config.point_mlp)
        add_mlp(store, f'{prefix}.mlp', (3,) + config.point_mlp)
        add_dense(store, f'{prefix}.fc', config.point_mlp[-1], config.feature_dim)

    def encode(self, cloud):
        cloud = Tensor(np.asarray(cloud, dtype=float))
        per_point = mlp(self.store, f'{self.prefix}.mlp', cloud, self.layers, ops.relu)
        return dense(self.store, f'{self.prefix}.fc', ops.max(per_point, axis=0), ops.tanh)
