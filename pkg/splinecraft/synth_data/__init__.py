from .dataset_io import (HEADER, MAGIC_2D, MAGIC_3D, DatasetFormatError, decode_dataset,
                         encode_dataset, read_dataset, record_size, write_dataset)
from .gen_config import GenConfig, GenConfigError, Mode
from .generators import (GenerationError, as_stored, canonical_order, dataset_summary,
                         gen_curve, gen_generator, gen_scene, gen_surface_instance,
                         generate_dataset, label_samples, make_record, validate_record)
from .raster import RasterImage, project, rasterize, render_surface, splat
from .records import Instance3D, Scene2D
