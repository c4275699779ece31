"""Quantize samples to multiples of k.

Every sample is replaced by the closest multiple of k inside [0, 255].
When a sample sits exactly halfway between two multiples (residue k/2,
even k only) the lower multiple wins, and when the closest multiple would
be 256 or more the largest multiple <= 255 is used instead. Those two
rules pin the transform completely; everything else is plain rounding.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ParameterError
from .raster import RasterImage

K_MIN = 2
K_MAX = 25
DEFAULT_K = 10


def check_k(k: int) -> int:
    """Validate the quantization step; returns it unchanged."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise ParameterError(f"k must be an integer, got {k!r}")
    if not K_MIN <= k <= K_MAX:
        raise ParameterError(f"k must be in [{K_MIN}, {K_MAX}], got {k}")
    return k


@dataclass(frozen=True)
class ResidualGrid:
    """Signed per-sample differences original - transformed."""

    width: int
    height: int
    channels: int
    residuals: tuple[int, ...]

    def to_array(self) -> np.ndarray:
        return np.array(self.residuals, dtype=np.int16).reshape(
            self.height, self.width, self.channels
        )


def kmm_pixel(v: int, k: int) -> int:
    """Quantize one sample to the nearest multiple of k, ties down, clamped to 255."""
    check_k(k)
    try:
        v = operator.index(v)  # accept numpy integer scalars, reject floats
    except TypeError:
        raise ParameterError(f"sample must be an integer, got {v!r}") from None
    if not 0 <= v <= 255:
        raise ParameterError(f"sample must be in [0, 255], got {v}")
    r = v % k
    m = v - r + (k if 2 * r > k else 0)
    return min(m, (255 // k) * k)


def kmm_transform(img: RasterImage, k: int) -> RasterImage:
    """Quantize every sample of ``img``; the input image is left untouched."""
    check_k(k)
    v = np.frombuffer(img.samples, dtype=np.uint8).astype(np.int32)
    r = v % k
    out = v - r + k * (2 * r > k)
    np.minimum(out, (255 // k) * k, out=out)
    return RasterImage(
        width=img.width,
        height=img.height,
        channels=img.channels,
        samples=out.astype(np.uint8).tobytes(),
    )


def residual(original: RasterImage, transformed: RasterImage) -> ResidualGrid:
    """Per-sample signed difference original - transformed."""
    if not original.same_shape(transformed):
        raise DimensionMismatchError(
            f"shape mismatch: {original.width}x{original.height}x{original.channels} vs "
            f"{transformed.width}x{transformed.height}x{transformed.channels}"
        )
    a = np.frombuffer(original.samples, dtype=np.uint8).astype(np.int16)
    b = np.frombuffer(transformed.samples, dtype=np.uint8).astype(np.int16)
    return ResidualGrid(
        width=original.width,
        height=original.height,
        channels=original.channels,
        residuals=tuple(int(x) for x in a - b),
    )
