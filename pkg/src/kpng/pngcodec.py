"""PNG container codec for 8-bit grayscale and truecolor, non-interlaced.

Covers the feature subset the toolkit needs: signature, IHDR/IDAT/IEND,
chunk CRCs, and scanline filters 0-4 with an adaptive per-row chooser.
Filter arithmetic follows the public PNG standard; the compressed stream
comes from :mod:`kpng.flate`.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import flate
from .errors import ParameterError, PngCrcError, PngFormatError, UnsupportedImageError
from .flate import CompressionLevel, crc32
from .raster import RasterImage

SIGNATURE = bytes((137, 80, 78, 71, 13, 10, 26, 10))

_IDAT_SPLIT = 1 << 20  # split the zlib stream into 1 MiB IDAT chunks
_MAX_CHUNK = (1 << 31) - 1


class FilterType(IntEnum):
    NONE = 0
    SUB = 1
    UP = 2
    AVERAGE = 3
    PAETH = 4


@dataclass(frozen=True)
class EncodeOptions:
    """Encoder knobs: compression level and filter strategy.

    ``filter_strategy`` is a fixed :class:`FilterType`, or None for the
    adaptive minimum-sum heuristic (the default).
    """

    level: CompressionLevel = CompressionLevel.LAZY
    filter_strategy: FilterType | None = None

    def __post_init__(self) -> None:
        flate.check_level(self.level)
        if self.filter_strategy is not None:
            _check_filter_type(self.filter_strategy)


@dataclass(frozen=True)
class PngChunk:
    """One length/type/data/CRC unit of the PNG container."""

    type_code: bytes
    data: bytes
    crc: int

    @classmethod
    def build(cls, type_code: bytes, data: bytes) -> "PngChunk":
        return cls(type_code, data, crc32(type_code + data))

    def crc_ok(self) -> bool:
        return self.crc == crc32(self.type_code + self.data)

    def encoded(self) -> bytes:
        return (
            struct.pack(">I", len(self.data))
            + self.type_code
            + self.data
            + struct.pack(">I", self.crc)
        )


def _check_filter_type(ftype) -> int:
    if isinstance(ftype, bool) or not isinstance(ftype, (int, IntEnum)):
        raise ParameterError(f"filter type must be an integer 0..4, got {ftype!r}")
    f = int(ftype)
    if not 0 <= f <= 4:
        raise ParameterError(f"filter type must be 0..4, got {f}")
    return f


def paeth_predictor(a: int, b: int, c: int) -> int:
    """Pick whichever of left/above/upper-left is closest to a + b - c;
    ties prefer a, then b."""
    p = a + b - c
    pa = abs(p - a)
    pb = abs(p - b)
    pc = abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def _shifted_left(arr: np.ndarray, bpp: int) -> np.ndarray:
    left = np.zeros_like(arr)
    left[bpp:] = arr[:-bpp]
    return left


def _paeth_row(left: np.ndarray, above: np.ndarray, upleft: np.ndarray) -> np.ndarray:
    p = left + above - upleft
    pa = np.abs(p - left)
    pb = np.abs(p - above)
    pc = np.abs(p - upleft)
    return np.where((pa <= pb) & (pa <= pc), left, np.where(pb <= pc, above, upleft))


def apply_filter(row: bytes, prior_row: bytes, ftype: FilterType, bytes_per_pixel: int) -> bytes:
    """Filter one scanline (mod-256 subtraction of the predictor)."""
    f = _check_filter_type(ftype)
    if len(row) != len(prior_row):
        raise ParameterError(f"row length {len(row)} != prior row length {len(prior_row)}")
    if f == FilterType.NONE:
        return bytes(row)
    r = np.frombuffer(bytes(row), np.uint8).astype(np.int16)
    if f == FilterType.SUB:
        out = r - _shifted_left(r, bytes_per_pixel)
    elif f == FilterType.UP:
        out = r - np.frombuffer(bytes(prior_row), np.uint8).astype(np.int16)
    else:
        p = np.frombuffer(bytes(prior_row), np.uint8).astype(np.int16)
        left = _shifted_left(r, bytes_per_pixel)
        if f == FilterType.AVERAGE:
            out = r - ((left + p) >> 1)
        else:
            out = r - _paeth_row(left, p, _shifted_left(p, bytes_per_pixel))
    return (out & 0xFF).astype(np.uint8).tobytes()


def unfilter(filtered: bytes, prior_row: bytes, ftype: FilterType, bytes_per_pixel: int) -> bytes:
    """Exact inverse of :func:`apply_filter`."""
    f = _check_filter_type(ftype)
    if len(filtered) != len(prior_row):
        raise ParameterError(
            f"row length {len(filtered)} != prior row length {len(prior_row)}"
        )
    n = len(filtered)
    bpp = bytes_per_pixel
    if f == FilterType.NONE:
        return bytes(filtered)
    if f == FilterType.UP:
        fa = np.frombuffer(bytes(filtered), np.uint8).astype(np.int16)
        pa = np.frombuffer(bytes(prior_row), np.uint8).astype(np.int16)
        return ((fa + pa) & 0xFF).astype(np.uint8).tobytes()
    if f == FilterType.SUB and n % bpp == 0:
        fa = np.frombuffer(bytes(filtered), np.uint8).astype(np.int64)
        out = np.cumsum(fa.reshape(n // bpp, bpp), axis=0) & 0xFF
        return out.astype(np.uint8).tobytes()
    # remaining filters reconstruct left-to-right
    fl = list(filtered)
    pr = list(prior_row)
    out = [0] * n
    if f == FilterType.SUB:
        for i in range(n):
            a = out[i - bpp] if i >= bpp else 0
            out[i] = (fl[i] + a) & 0xFF
    elif f == FilterType.AVERAGE:
        for i in range(n):
            a = out[i - bpp] if i >= bpp else 0
            out[i] = (fl[i] + ((a + pr[i]) >> 1)) & 0xFF
    else:
        for i in range(n):
            if i >= bpp:
                a = out[i - bpp]
                c = pr[i - bpp]
            else:
                a = 0
                c = 0
            b = pr[i]
            p = a + b - c
            pa = p - a if p >= a else a - p
            pb = p - b if p >= b else b - p
            pc = p - c if p >= c else c - p
            if pa <= pb and pa <= pc:
                pred = a
            elif pb <= pc:
                pred = b
            else:
                pred = c
            out[i] = (fl[i] + pred) & 0xFF
    return bytes(out)


def _filter_score(filtered: bytes) -> int:
    # sum of absolute values, bytes read as signed
    a = np.frombuffer(filtered, np.uint8).astype(np.int32)
    return int(np.minimum(a, 256 - a).sum())


def choose_filter(row: bytes, prior_row: bytes, bytes_per_pixel: int) -> FilterType:
    """Minimum-sum-of-absolute-differences heuristic; ties go to the lowest type."""
    best = FilterType.NONE
    best_score = None
    for f in FilterType:
        score = _filter_score(apply_filter(row, prior_row, f, bytes_per_pixel))
        if best_score is None or score < best_score:
            best = f
            best_score = score
    return best


def _color_type(channels: int) -> int:
    if channels == 1:
        return 0
    if channels == 3:
        return 2
    raise UnsupportedImageError(f"cannot encode {channels}-channel images")


def encode_png(img: RasterImage, options: EncodeOptions | None = None) -> bytes:
    """Encode to a complete PNG byte string (signature through IEND)."""
    opts = options or EncodeOptions()
    color = _color_type(img.channels)
    bpp = img.channels
    stride = img.width * img.channels

    fixed = opts.filter_strategy
    parts = bytearray()
    prior = bytes(stride)
    for y in range(img.height):
        row = img.samples[y * stride : (y + 1) * stride]
        if fixed is not None:
            ft = fixed
            filtered = apply_filter(row, prior, ft, bpp)
        else:
            ft = FilterType.NONE
            filtered = None
            best = None
            for f in FilterType:
                cand = apply_filter(row, prior, f, bpp)
                score = _filter_score(cand)
                if best is None or score < best:
                    best = score
                    ft = f
                    filtered = cand
        parts.append(int(ft))
        parts += filtered
        prior = row

    stream = flate.deflate_compress(bytes(parts), opts.level)

    out = bytearray(SIGNATURE)
    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, color, 0, 0, 0)
    out += PngChunk.build(b"IHDR", ihdr).encoded()
    for off in range(0, max(len(stream), 1), _IDAT_SPLIT):
        out += PngChunk.build(b"IDAT", stream[off : off + _IDAT_SPLIT]).encoded()
    out += PngChunk.build(b"IEND", b"").encoded()
    return bytes(out)


def parse_chunks(data: bytes) -> list[PngChunk]:
    """Split a PNG byte string into chunks, verifying every CRC."""
    if len(data) < 8 or data[:8] != SIGNATURE:
        raise PngFormatError("bad PNG signature")
    chunks = []
    pos = 8
    n = len(data)
    while pos < n:
        if pos + 8 > n:
            raise PngFormatError("truncated chunk header")
        (length,) = struct.unpack_from(">I", data, pos)
        if length > _MAX_CHUNK:
            raise PngFormatError(f"chunk length {length} exceeds 2^31-1")
        type_code = data[pos + 4 : pos + 8]
        if not all(65 <= c <= 90 or 97 <= c <= 122 for c in type_code):
            raise PngFormatError(f"invalid chunk type {type_code!r}")
        end = pos + 8 + length
        if end + 4 > n:
            raise PngFormatError(f"truncated {type_code.decode()} chunk")
        payload = data[pos + 8 : end]
        (crc,) = struct.unpack_from(">I", data, end)
        chunk = PngChunk(type_code, payload, crc)
        if not chunk.crc_ok():
            raise PngCrcError(f"CRC mismatch in {type_code.decode()} chunk")
        chunks.append(chunk)
        pos = end + 4
        if type_code == b"IEND":
            if pos != n:
                raise PngFormatError(f"{n - pos} trailing bytes after IEND")
            return chunks
    raise PngFormatError("missing IEND chunk")


def decode_png(data: bytes) -> RasterImage:
    """Decode a PNG produced by this encoder's feature subset
    (8-bit, color type 0 or 2, non-interlaced)."""
    chunks = parse_chunks(bytes(data))
    if not chunks or chunks[0].type_code != b"IHDR":
        raise PngFormatError("first chunk is not IHDR")
    ihdr = chunks[0].data
    if len(ihdr) != 13:
        raise PngFormatError(f"IHDR length {len(ihdr)}, expected 13")
    width, height, depth, color, compression, filter_method, interlace = struct.unpack(
        ">IIBBBBB", ihdr
    )
    if width == 0 or height == 0:
        raise PngFormatError(f"invalid dimensions {width}x{height}")
    if depth != 8:
        raise UnsupportedImageError(f"bit depth {depth} not supported (only 8)")
    if color not in (0, 2):
        raise UnsupportedImageError(f"color type {color} not supported (only 0 and 2)")
    if compression != 0:
        raise UnsupportedImageError(f"compression method {compression} not supported")
    if filter_method != 0:
        raise UnsupportedImageError(f"filter method {filter_method} not supported")
    if interlace != 0:
        raise UnsupportedImageError("interlaced images not supported")

    idat = bytearray()
    saw_idat = False
    for chunk in chunks[1:]:
        tc = chunk.type_code
        if tc == b"IDAT":
            idat += chunk.data
            saw_idat = True
        elif tc == b"IEND":
            if chunk.data:
                raise PngFormatError("IEND chunk must be empty")
        elif tc == b"IHDR":
            raise PngFormatError("duplicate IHDR chunk")
        elif tc[0] & 0x20:
            continue  # ancillary chunk, safe to ignore
        else:
            raise UnsupportedImageError(f"unknown critical chunk {tc.decode()}")
    if not saw_idat:
        raise PngFormatError("no IDAT chunk")

    raw = flate.inflate(bytes(idat))
    channels = 1 if color == 0 else 3
    stride = width * channels
    if len(raw) != height * (stride + 1):
        raise PngFormatError(
            f"decompressed pixel data is {len(raw)} bytes, expected {height * (stride + 1)}"
        )

    samples = bytearray()
    prior = bytes(stride)
    pos = 0
    for _ in range(height):
        ftype = raw[pos]
        if ftype > 4:
            raise PngFormatError(f"invalid scanline filter type {ftype}")
        row = unfilter(raw[pos + 1 : pos + 1 + stride], prior, FilterType(ftype), channels)
        samples += row
        prior = row
        pos += stride + 1
    return RasterImage(width=width, height=height, channels=channels, samples=bytes(samples))
