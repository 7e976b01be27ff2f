"""Arithmetic coding over the finite ring of integers mod P**N.

Messages shrink an interval of grid indexes; the digits the coder emits
are the path digits shared by the interval edges, so output is built
least significant digit first and decoding is incremental.  Special
models reproduce Huffman and Golomb-Rice codes bit for bit.
"""

from .codec import (
    CoderState,
    Decoder,
    Encoder,
    MalformedStreamError,
    decode,
    encode,
    renorm_prefix,
    straddle_check,
    straddle_flush,
    straddle_fold,
    width_floor,
)
from .core import (
    DigitVec,
    GridParams,
    common_path_len,
    cut_digits,
    digit_reverse,
    drop_digits,
    interval_width,
    joint_trimmed_len,
    lift,
    ord_p,
    prefix_agreement,
    shortest_path_point,
    take_digits,
    to_index,
    to_path,
    trimmed_len,
)
from .digitio import (
    ContainerError,
    ContainerHeader,
    DigitReader,
    DigitWriter,
    read_container,
    write_container,
)
from .models import (
    AdaptiveModel,
    HuffmanModel,
    StaticModel,
    UnaryModel,
    canonical_codebook,
    code_lengths,
    huffman_code_lengths,
)

__all__ = [
    "AdaptiveModel",
    "CoderState",
    "ContainerError",
    "ContainerHeader",
    "Decoder",
    "DigitReader",
    "DigitVec",
    "DigitWriter",
    "Encoder",
    "GridParams",
    "HuffmanModel",
    "MalformedStreamError",
    "StaticModel",
    "UnaryModel",
    "canonical_codebook",
    "code_lengths",
    "common_path_len",
    "cut_digits",
    "decode",
    "digit_reverse",
    "drop_digits",
    "encode",
    "huffman_code_lengths",
    "interval_width",
    "joint_trimmed_len",
    "lift",
    "ord_p",
    "prefix_agreement",
    "read_container",
    "renorm_prefix",
    "shortest_path_point",
    "straddle_check",
    "straddle_flush",
    "straddle_fold",
    "take_digits",
    "to_index",
    "to_path",
    "trimmed_len",
    "width_floor",
    "write_container",
]
