"""JPEG-like blockwise compression harness: 2-d transform, zig-zag
coefficient retention, reconstruction, and PSNR/SSIM/APE scoring.

Quality scores are computed on the clamped floating-point reconstruction;
quantization to 8-bit samples happens only when an image is written out.
Images whose dimensions are not multiples of the block size are
edge-replicated up and cropped back after reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import Transform

__all__ = [
    "RetentionPolicy",
    "QualityScores",
    "zigzag_order",
    "forward_2d",
    "inverse_2d",
    "retain",
    "psnr",
    "ssim",
    "ape",
    "compress_image",
    "retention_sweep",
    "ar1_test_image",
    "default_r_grid",
    "PSNR_IDENTICAL_SENTINEL",
]

PSNR_IDENTICAL_SENTINEL = 999.0

_SSIM_WINDOW = 8
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03
_SSIM_L = 255.0


def zigzag_order(n: int) -> list[tuple[int, int]]:
    """Zig-zag scan of an n x n grid: (0,0), (0,1), (1,0), ... along
    anti-diagonals, odd diagonals walked top-down."""
    if n < 2:
        raise ValueError(f"grid size must be at least 2, got {n}")
    order = []
    for s in range(2 * n - 1):
        lo = max(0, s - n + 1)
        hi = min(s, n - 1)
        rows = range(lo, hi + 1) if s % 2 else range(hi, lo - 1, -1)
        order.extend((i, s - i) for i in rows)
    return order


@lru_cache(maxsize=None)
def _zigzag_flat(n: int) -> tuple[int, ...]:
    return tuple(i * n + j for i, j in zigzag_order(n))


@lru_cache(maxsize=None)
def _retention_mask(n: int, kept: int) -> np.ndarray:
    mask = np.zeros(n * n)
    mask[list(_zigzag_flat(n)[:kept])] = 1.0
    mask = mask.reshape(n, n)
    mask.setflags(write=False)
    return mask


@dataclass(frozen=True)
class RetentionPolicy:
    """Keep a zig-zag prefix of the block coefficients, zero the rest."""

    n: int
    r_fraction: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r_fraction <= 1.0:
            raise ValueError(
                f"retention fraction must be in (0, 1], got {self.r_fraction}"
            )

    @property
    def retained_count(self) -> int:
        return int(math.floor(self.r_fraction * self.n * self.n + 0.5))

    @property
    def mask(self) -> np.ndarray:
        return _retention_mask(self.n, self.retained_count)


@dataclass(frozen=True)
class QualityScores:
    psnr_db: float
    ssim: float
    ape_psnr_pct: float | None = None
    ape_ssim_pct: float | None = None


def _as_matrix(transform) -> np.ndarray:
    if hasattr(transform, "transform"):  # ScaledTransform
        transform = transform.transform
    if isinstance(transform, Transform):
        return transform.matrix
    m = np.asarray(transform, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"transform must be square, got shape {m.shape}")
    return m


def forward_2d(transform, block: np.ndarray) -> np.ndarray:
    """Separable 2-d forward transform of one block: M @ A @ M^t."""
    m = _as_matrix(transform)
    block = np.asarray(block, dtype=np.float64)
    if block.shape != m.shape:
        raise ValueError(f"block shape {block.shape} != transform size {m.shape}")
    return m @ block @ m.T


def inverse_2d(transform, block: np.ndarray) -> np.ndarray:
    """Inverse of forward_2d for orthonormal transforms: M^t @ B @ M."""
    m = _as_matrix(transform)
    block = np.asarray(block, dtype=np.float64)
    if block.shape != m.shape:
        raise ValueError(f"block shape {block.shape} != transform size {m.shape}")
    return m.T @ block @ m


def retain(block: np.ndarray, policy: RetentionPolicy) -> np.ndarray:
    block = np.asarray(block, dtype=np.float64)
    if block.shape != (policy.n, policy.n):
        raise ValueError(f"block shape {block.shape} != policy size {policy.n}")
    return block * policy.mask


def psnr(reference: np.ndarray, test: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB against an 8-bit peak of 255.
    Identical inputs report the 999 dB sentinel instead of infinity."""
    reference = np.asarray(reference, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if reference.shape != test.shape:
        raise ValueError(f"shape mismatch {reference.shape} vs {test.shape}")
    err = np.mean((reference - test) ** 2)
    if err == 0.0:
        return PSNR_IDENTICAL_SENTINEL
    return float(10.0 * np.log10(255.0**2 / err))


def _box_means(x: np.ndarray, w: int) -> np.ndarray:
    # Integral image; one sliding-window mean per fully interior position.
    s = np.zeros((x.shape[0] + 1, x.shape[1] + 1))
    s[1:, 1:] = np.cumsum(np.cumsum(x, axis=0), axis=1)
    total = s[w:, w:] - s[:-w, w:] - s[w:, :-w] + s[:-w, :-w]
    return total / (w * w)


def ssim(a: np.ndarray, b: np.ndarray) -> float:
    """Mean structural similarity with a uniform 8x8 window (K1=0.01,
    K2=0.03, dynamic range 255)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if min(a.shape) < _SSIM_WINDOW:
        raise ValueError(f"image smaller than the {_SSIM_WINDOW}x{_SSIM_WINDOW} window")
    c1 = (_SSIM_K1 * _SSIM_L) ** 2
    c2 = (_SSIM_K2 * _SSIM_L) ** 2
    w = _SSIM_WINDOW
    mu_a = _box_means(a, w)
    mu_b = _box_means(b, w)
    var_a = _box_means(a * a, w) - mu_a * mu_a
    var_b = _box_means(b * b, w) - mu_b * mu_b
    cov = _box_means(a * b, w) - mu_a * mu_b
    s_map = ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) / (
        (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2)
    )
    return float(np.mean(s_map))


def ape(metric_approx: float, metric_baseline: float) -> float:
    """Absolute percentage error of a measurement against its baseline."""
    if metric_baseline == 0:
        raise ValueError("APE undefined for a zero baseline")
    return 100.0 * abs(metric_baseline - metric_approx) / abs(metric_baseline)


def _pad_to_multiple(image: np.ndarray, n: int) -> np.ndarray:
    h, w = image.shape
    pad_h = (-h) % n
    pad_w = (-w) % n
    if pad_h == 0 and pad_w == 0:
        return image
    return np.pad(image, ((0, pad_h), (0, pad_w)), mode="edge")


def _blockify(image: np.ndarray, n: int) -> np.ndarray:
    h, w = image.shape
    return image.reshape(h // n, n, w // n, n).swapaxes(1, 2).reshape(-1, n, n)


def _unblockify(blocks: np.ndarray, h: int, w: int, n: int) -> np.ndarray:
    return blocks.reshape(h // n, w // n, n, n).swapaxes(1, 2).reshape(h, w)


def _reconstruct(coeffs: np.ndarray, m: np.ndarray, mask: np.ndarray,
                 h: int, w: int, orig_h: int, orig_w: int) -> np.ndarray:
    rec = m.T @ (coeffs * mask) @ m
    out = _unblockify(rec, h, w, m.shape[0])[:orig_h, :orig_w]
    return np.clip(out, 0.0, 255.0)


def compress_image(image: np.ndarray, transform, policy: RetentionPolicy):
    """Blockwise forward -> retain -> inverse over a whole image.

    Returns (reconstruction, QualityScores); the reconstruction is float,
    clamped to [0, 255], same shape as the input.
    """
    m = _as_matrix(transform)
    n = m.shape[0]
    if policy.n != n:
        raise ValueError(f"policy block size {policy.n} != transform size {n}")
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2:
        raise ValueError(f"image must be 2-d, got shape {image.shape}")
    padded = _pad_to_multiple(image, n)
    h, w = padded.shape
    coeffs = m @ _blockify(padded, n) @ m.T
    recon = _reconstruct(coeffs, m, policy.mask, h, w, *image.shape)
    return recon, QualityScores(psnr_db=psnr(image, recon), ssim=ssim(image, recon))


def retention_sweep(
    image: np.ndarray, transform, r_values: Sequence[float]
) -> list[tuple[float, float, float]]:
    """(r, psnr, ssim) over a retention grid, forward-transforming once."""
    m = _as_matrix(transform)
    n = m.shape[0]
    image = np.asarray(image, dtype=np.float64)
    padded = _pad_to_multiple(image, n)
    h, w = padded.shape
    coeffs = m @ _blockify(padded, n) @ m.T
    out = []
    for r in r_values:
        mask = RetentionPolicy(n=n, r_fraction=r).mask
        recon = _reconstruct(coeffs, m, mask, h, w, *image.shape)
        out.append((r, psnr(image, recon), ssim(image, recon)))
    return out


def default_r_grid() -> tuple[float, ...]:
    """Retention fractions 0.25 to 0.99 in steps of 0.02."""
    return tuple(round(0.25 + 0.02 * k, 2) for k in range(38))


def ar1_test_image(
    height: int = 512,
    width: int = 512,
    rho: float = 0.95,
    seed: int = 20240817,
    mean: float = 128.0,
    std: float = 32.0,
) -> np.ndarray:
    """Synthetic grayscale image whose rows are AR(1) processes, quantized
    to uint8.  Deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((height, width))
    rows = np.empty((height, width))
    rows[:, 0] = noise[:, 0]
    c = math.sqrt(1.0 - rho * rho)
    for j in range(1, width):
        rows[:, j] = rho * rows[:, j - 1] + c * noise[:, j]
    pixels = np.clip(mean + std * rows, 0.0, 255.0)
    return np.rint(pixels).astype(np.uint8)
