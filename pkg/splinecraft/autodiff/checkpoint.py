"""
Checkpoint files.

Layout: magic ``SPCK`` | u16 version | u32 manifest length | manifest (UTF-8
JSON: ``kind``, ``config`` and ``tensors``, a list of ``[name, shape]``) |
the tensors' little-endian f64 buffers in manifest order.
"""

import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b'SPCK'
VERSION = 1
PREAMBLE = struct.Struct('<4sHI')


class CheckpointError(ValueError):
    pass


def encode_checkpoint(arrays, kind, config=None):
    manifest = {
        'kind': kind,
        'config': config or {},
        'tensors': [[name, list(np.shape(values))] for name, values in arrays.items()],
    }
    text = json.dumps(manifest, sort_keys=True).encode('utf-8')
    buffers = [np.ascontiguousarray(values, dtype='<f8').tobytes()
               for values in arrays.values()]
    return PREAMBLE.pack(MAGIC, VERSION, len(text)) + text + b''.join(buffers)


def decode_checkpoint(data):
    """Returns (manifest, {name: array}) from checkpoint bytes."""
    if len(data) < PREAMBLE.size:
        raise CheckpointError('Checkpoint is truncated.')
    magic, version, length = PREAMBLE.unpack_from(data)
    if magic != MAGIC:
        raise CheckpointError(f'Not a checkpoint (magic {magic!r}).')
    if version != VERSION:
        raise CheckpointError(f'Unsupported checkpoint version {version}.')
    offset = PREAMBLE.size
    try:
        manifest = json.loads(data[offset:offset + length].decode('utf-8'))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError(f'Corrupt checkpoint manifest: {e}') from e
    offset += length

    arrays = {}
    for name, shape in manifest['tensors']:
        nbytes = 8 * int(np.prod(shape, dtype=int))
        if offset + nbytes > len(data):
            raise CheckpointError(f'Checkpoint is truncated inside tensor {name!r}.')
        arrays[name] = np.frombuffer(data, dtype='<f8', count=nbytes // 8,
                                     offset=offset).astype(np.float64).reshape(shape)
        offset += nbytes
    if offset != len(data):
        raise CheckpointError(f'{len(data) - offset} trailing bytes after the last tensor.')
    return manifest, arrays


def save_checkpoint(path, store, kind, config=None):
    Path(path).write_bytes(encode_checkpoint(store.state_dict(), kind, config))


def load_checkpoint(path):
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise CheckpointError(f'Cannot read checkpoint {path}: {e}') from e
    return decode_checkpoint(data)
