"""Prefix codes for pairs of independent geometrically distributed integers.

Encoders and decoders for the optimal pair codes at the design points
q = 2^(-1/k) and q = 2^(-k), the limit code for q -> 0, and Golomb
baselines, together with analysis tools (entropy, average lengths,
redundancy asymptotics, crossovers, adaptive selection) and a
truncated-Huffman optimality oracle.
"""

from .bitio import BitReader, BitWriter, Codeword, StreamExhausted
from .basecodes import (
    GolombPairCodec,
    golomb_decode,
    golomb_encode,
    quasi_uniform_decode,
    quasi_uniform_encode,
    unary_encode,
)
from .ck_codec import CkCodec
from .cminus_codec import (
    CminusCodec,
    LimitCodec,
    limit_decode,
    limit_encode,
    signature_length_row,
)
from .families import CodeFamily, make_codec
from .fringe2 import (
    fringe2_optimal_range,
    profile_from,
    top_code_params,
    top_code_table,
    WeightedSource,
)
from .analysis import (
    adaptive_select,
    asymptotic_redundancy,
    avg_len_by_series,
    avg_len_ck,
    avg_len_limit_closed,
    best_golomb_order,
    crossover,
    entropy_per_symbol,
)
from .oracle import (
    build_truncated_source,
    huffman_lengths,
    max_gap,
    oracle_optimal_avg_len,
    two_level_check,
)

__version__ = "0.1.0"

__all__ = [
    "BitReader",
    "BitWriter",
    "CkCodec",
    "CminusCodec",
    "CodeFamily",
    "Codeword",
    "GolombPairCodec",
    "LimitCodec",
    "StreamExhausted",
    "WeightedSource",
    "adaptive_select",
    "asymptotic_redundancy",
    "avg_len_by_series",
    "avg_len_ck",
    "avg_len_limit_closed",
    "best_golomb_order",
    "build_truncated_source",
    "crossover",
    "entropy_per_symbol",
    "fringe2_optimal_range",
    "golomb_decode",
    "golomb_encode",
    "huffman_lengths",
    "limit_decode",
    "limit_encode",
    "make_codec",
    "max_gap",
    "oracle_optimal_avg_len",
    "profile_from",
    "quasi_uniform_decode",
    "quasi_uniform_encode",
    "signature_length_row",
    "top_code_params",
    "top_code_table",
    "two_level_check",
    "unary_encode",
]
