"""Image quality measures: MSE, PSNR, and SSIM.

MSE pools every sample across channels into one scalar. PSNR is
10*log10(255^2 / MSE) with +inf for identical images. SSIM uses the
standard defaults: 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03,
L=255, mean over fully-interior windows, channels averaged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .errors import DimensionMismatchError, ParameterError
from .raster import RasterImage

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
_C1 = (0.01 * 255) ** 2
_C2 = (0.03 * 255) ** 2


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr: float
    ssim: float


def _check_shapes(a: RasterImage, b: RasterImage) -> None:
    if not a.same_shape(b):
        raise DimensionMismatchError(
            f"shape mismatch: {a.width}x{a.height}x{a.channels} vs "
            f"{b.width}x{b.height}x{b.channels}"
        )


def mse(a: RasterImage, b: RasterImage) -> float:
    """Mean squared sample difference, all channels pooled."""
    _check_shapes(a, b)
    x = np.frombuffer(a.samples, np.uint8).astype(np.float64)
    y = np.frombuffer(b.samples, np.uint8).astype(np.float64)
    return float(np.mean((x - y) ** 2))


def psnr(a: RasterImage, b: RasterImage) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the images are identical."""
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / m)


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    """Normalized 2-D Gaussian weighting window."""
    half = (size - 1) / 2.0
    coords = np.arange(size) - half
    g = np.exp(-(coords**2) / (2.0 * sigma**2))
    w = np.outer(g, g)
    return w / w.sum()


def _ssim_plane(x: np.ndarray, y: np.ndarray, window: np.ndarray) -> float:
    mu_x = convolve2d(x, window, mode="valid")
    mu_y = convolve2d(y, window, mode="valid")
    mu_xx = mu_x * mu_x
    mu_yy = mu_y * mu_y
    mu_xy = mu_x * mu_y
    var_x = convolve2d(x * x, window, mode="valid") - mu_xx
    var_y = convolve2d(y * y, window, mode="valid") - mu_yy
    cov = convolve2d(x * y, window, mode="valid") - mu_xy
    s = ((2.0 * mu_xy + _C1) * (2.0 * cov + _C2)) / (
        (mu_xx + mu_yy + _C1) * (var_x + var_y + _C2)
    )
    return float(s.mean())


def ssim(a: RasterImage, b: RasterImage) -> float:
    """Mean local structural similarity; 1.0 means identical."""
    _check_shapes(a, b)
    if min(a.width, a.height) < SSIM_WINDOW:
        raise ParameterError(
            f"image {a.width}x{a.height} is smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} window"
        )
    window = gaussian_window()
    xa = a.to_array().astype(np.float64)
    ya = b.to_array().astype(np.float64)
    per_channel = [
        _ssim_plane(xa[:, :, c], ya[:, :, c], window) for c in range(a.channels)
    ]
    return float(np.mean(per_channel))


def compare(a: RasterImage, b: RasterImage) -> QualityReport:
    """All three quality measures at once."""
    return QualityReport(mse=mse(a, b), psnr=psnr(a, b), ssim=ssim(a, b))
