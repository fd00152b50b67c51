"""Marker-delimited VT codec for segmented single-insdel and single-edit channels."""

from .common import BoundaryDecision, DecodeReport, SegmentError
from .edit import EditCodeParams, make_edit_params
from .errors import DecodeError, DecodeInvariantError, FrameError
from .insdel import InsdelCodeParams, make_insdel_params
from .vt import (
    VtParams,
    correct_deletion,
    correct_insertion,
    correct_single_edit,
    correct_substitution,
    default_residue,
    encode_systematic,
    extract_message,
    is_member,
    iter_codewords,
    syndrome,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryDecision",
    "DecodeError",
    "DecodeInvariantError",
    "DecodeReport",
    "EditCodeParams",
    "FrameError",
    "InsdelCodeParams",
    "SegmentError",
    "VtParams",
    "correct_deletion",
    "correct_insertion",
    "correct_single_edit",
    "correct_substitution",
    "default_residue",
    "encode_systematic",
    "extract_message",
    "is_member",
    "iter_codewords",
    "make_edit_params",
    "make_insdel_params",
    "syndrome",
]
