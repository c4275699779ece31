"""kpng: quantize-to-multiples-of-k pre-pass, from-scratch PNG/DEFLATE/BMP
codecs, quality metrics, and a compression benchmark harness."""

from .bench import BenchRecord
from .bmpcodec import decode_bmp, encode_bmp
from .corpus import CorpusSpec, generate
from .errors import KpngError
from .flate import (
    CompressionLevel,
    Literal,
    Match,
    Token,
    adler32,
    crc32,
    deflate_compress,
    inflate,
    lz77_expand,
    lz77_tokenize,
)
from .kmodulus import DEFAULT_K, K_MAX, K_MIN, ResidualGrid, kmm_pixel, kmm_transform, residual
from .metrics import QualityReport, compare, mse, psnr, ssim
from .pngcodec import (
    EncodeOptions,
    FilterType,
    PngChunk,
    apply_filter,
    choose_filter,
    decode_png,
    encode_png,
    paeth_predictor,
    unfilter,
)
from .raster import RasterImage

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "CompressionLevel",
    "CorpusSpec",
    "DEFAULT_K",
    "EncodeOptions",
    "FilterType",
    "K_MAX",
    "K_MIN",
    "KpngError",
    "Literal",
    "Match",
    "PngChunk",
    "QualityReport",
    "RasterImage",
    "ResidualGrid",
    "Token",
    "adler32",
    "apply_filter",
    "choose_filter",
    "compare",
    "crc32",
    "decode_bmp",
    "decode_png",
    "deflate_compress",
    "encode_bmp",
    "encode_png",
    "generate",
    "inflate",
    "kmm_pixel",
    "kmm_transform",
    "lz77_expand",
    "lz77_tokenize",
    "mse",
    "paeth_predictor",
    "psnr",
    "residual",
    "ssim",
    "unfilter",
]
