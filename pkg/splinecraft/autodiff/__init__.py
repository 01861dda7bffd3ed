from .adam import AdamState, adam_step
from .checkpoint import (MAGIC, CheckpointError, decode_checkpoint, encode_checkpoint,
                         load_checkpoint, save_checkpoint)
from .gradcheck import gradcheck, numerical_gradient, relative_error
from .gru import gru_cell, gru_parameter_shapes
from .store import ParameterStore
from .tensor import ContractError, NonFiniteError, ShapeError, Tape, Tensor, as_tensor
