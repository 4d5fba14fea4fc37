"""Python bindings for the sintra intra codec."""

from ._sintra import (
    DecodeError,
    FormatError,
    MetricError,
    SintraError,
    UsageError,
    bd_rate,
    compression_gain,
    decode,
    encode,
    gen,
    hit_ratio,
    lambda_from_qp,
    predict,
    psnr,
    time_ratio,
    variants,
)

__all__ = [
    "DecodeError",
    "FormatError",
    "MetricError",
    "SintraError",
    "UsageError",
    "bd_rate",
    "compression_gain",
    "decode",
    "encode",
    "gen",
    "hit_ratio",
    "lambda_from_qp",
    "predict",
    "psnr",
    "time_ratio",
    "variants",
]
