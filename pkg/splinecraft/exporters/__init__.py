from .ply import (PlyFormatError, grid_faces, read_cloud, read_ply, surface_mesh, to_geometry,
                  write_ply)
from .preprocess import IMAGE_SIZE, crop_to_foreground, pad_to_square, preprocess, resize
from .raster_io import (UnsupportedFormatError, read_image, read_pixels,
                        write_attention_maps, write_image)
from .svg import SVG_SAMPLES, curves_svg, polyline_points, write_svg
from .thinning import zhang_suen
