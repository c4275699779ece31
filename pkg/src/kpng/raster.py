"""In-memory pixel grid shared by every codec and transform in the package."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class RasterImage:
    """8-bit image, row-major, channel-interleaved.

    ``channels`` is 1 (grayscale) or 3 (RGB). ``samples`` holds exactly
    ``width * height * channels`` bytes; byte values are the sample values,
    so the [0, 255] range invariant comes for free.
    """

    width: int
    height: int
    channels: int
    samples: bytes

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ParameterError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ParameterError(f"channels must be 1 or 3, got {self.channels}")
        if not isinstance(self.samples, bytes):
            try:
                object.__setattr__(self, "samples", bytes(self.samples))
            except (TypeError, ValueError) as exc:
                raise ParameterError(f"samples are not 8-bit values: {exc}") from None
        expected = self.width * self.height * self.channels
        if len(self.samples) != expected:
            raise ParameterError(
                f"sample count {len(self.samples)} does not match "
                f"{self.width}x{self.height}x{self.channels} = {expected}"
            )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "RasterImage":
        """Build from an (H, W) or (H, W, C) uint8-compatible array."""
        a = np.asarray(arr)
        if a.ndim == 2:
            a = a[:, :, np.newaxis]
        if a.ndim != 3:
            raise ParameterError(f"expected a 2-D or 3-D array, got ndim={a.ndim}")
        h, w, c = a.shape
        if a.dtype != np.uint8:
            if a.min() < 0 or a.max() > 255:
                raise ParameterError("array values outside [0, 255]")
            a = a.astype(np.uint8)
        return cls(width=w, height=h, channels=c, samples=a.tobytes())

    def to_array(self) -> np.ndarray:
        """Return an (H, W, C) uint8 view of the samples."""
        a = np.frombuffer(self.samples, dtype=np.uint8)
        return a.reshape(self.height, self.width, self.channels)

    def same_shape(self, other: "RasterImage") -> bool:
        return (
            self.width == other.width
            and self.height == other.height
            and self.channels == other.channels
        )

    def row(self, y: int) -> bytes:
        """Raw bytes of scanline ``y`` (no filter byte, just samples)."""
        stride = self.width * self.channels
        return self.samples[y * stride : (y + 1) * stride]
