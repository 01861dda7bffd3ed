import numpy as np
import trimesh

from ..spline_core import SurfaceKind, sweep


class PlyFormatError(ValueError):
    pass


def grid_faces(n_sweep, k, wrap):
    """Quad faces over a sweep-major (n_sweep, k) vertex grid.

    ``wrap`` joins the last sweep row back to the first (revolution).
    """
    rows = n_sweep if wrap else n_sweep - 1
    faces = []
    for i in range(rows):
        nxt = (i + 1) % n_sweep
        for j in range(k - 1):
            faces.append((i * k + j, i * k + j + 1, nxt * k + j + 1, nxt * k + j))
    return np.array(faces, dtype=int).reshape(-1, 4)


def surface_mesh(spec, n_sweep, k):
    vertices = sweep(spec, n_sweep, k)
    wrap = spec.kind is SurfaceKind.REVOLUTION
    return vertices, grid_faces(n_sweep, k, wrap)


def to_geometry(vertices, faces=None):
    """A trimesh point cloud, or a mesh with every quad split in two triangles."""
    vertices = np.asarray(vertices, dtype=float)
    if faces is None or not len(faces):
        return trimesh.PointCloud(vertices)
    faces = np.asarray(faces, dtype=int)
    if faces.shape[1] == 4:
        faces = trimesh.geometry.triangulate_quads(faces)
    return trimesh.Trimesh(vertices=vertices, faces=faces, process=False)


def write_ply(path, vertices, faces=None, encoding='ascii'):
    to_geometry(vertices, faces).export(str(path), file_type='ply', encoding=encoding)


def read_ply(path):
    """(vertices, triangle faces) of a PLY file, ascii or binary.

    Vertex order is kept as stored; a point cloud has no faces.
    """
    try:
        loaded = trimesh.load(str(path), file_type='ply', process=False)
    except (ValueError, KeyError, IndexError, TypeError, OSError) as e:
        raise PlyFormatError(f'{path} is not a readable PLY file: {e}') from e
    if isinstance(loaded, trimesh.Scene):
        raise PlyFormatError(f'{path} holds no vertices.')
    vertices = np.asarray(loaded.vertices, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != 3 or not len(vertices):
        raise PlyFormatError(f'{path} holds no x, y, z vertices.')
    faces = np.asarray(getattr(loaded, 'faces', np.zeros((0, 3))), dtype=int).reshape(-1, 3)
    return vertices, faces


def read_cloud(path):
    return read_ply(path)[0]
