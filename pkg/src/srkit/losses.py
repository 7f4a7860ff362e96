"""Composite training-loss formulas, used here as distance evaluators.

Two families of presets are shipped:

  oppo          L1 + 0.2 * (1 - MS-SSIM) + 0.2 * (1 - SSIM)
  inception_v1  plain L1
  inception_v2  0.16 * L1 + 0.84 * (1 - MS-SSIM)
  inception_v3  0.01 * L1 + 0.84 * (1 - MS-SSIM) + 0.15 * VGG

The VGG perceptual term is an injected scalar (feature extraction is out of
scope), so the module stays framework-free while the formula keeps its
shape. Distances are on the [0, 1] pixel scale by default.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .image import ensure_image
from .metrics import DEFAULT_SSIM_CONFIG, SsimConfig, ms_ssim, ssim

_PRESETS = {
    "oppo": (1.0, 0.2, 0.2),
    "inception_v1": (1.0, 0.0, 0.0),
    "inception_v2": (0.16, 0.84, 0.0),
    "inception_v3": (0.01, 0.84, 0.15),
}
MODES = tuple(_PRESETS) + ("custom",)


@dataclass(frozen=True)
class LossWeights:
    """(alpha, beta, gamma) over (L1, MS-SSIM loss, third term).

    The third term is the SSIM loss for mode "oppo" and the injected VGG
    scalar for the inception presets and "custom".
    """

    alpha: float
    beta: float
    gamma: float
    mode: str = "custom"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose one of {MODES}")

    @classmethod
    def preset(cls, mode: str) -> "LossWeights":
        if mode not in _PRESETS:
            raise ValueError(f"unknown preset {mode!r}; choose one of {tuple(_PRESETS)}")
        a, b, g = _PRESETS[mode]
        return cls(alpha=a, beta=b, gamma=g, mode=mode)


def l1_distance(x: np.ndarray, y: np.ndarray, pixel_scale: float = 1.0) -> float:
    """Mean absolute difference over all samples."""
    x = ensure_image(x, "x")
    y = ensure_image(y, "y")
    if x.shape != y.shape:
        raise DimensionMismatchError(f"image dimensions differ: {x.shape} vs {y.shape}")
    return float(np.mean(np.abs(x - y))) * pixel_scale


def ssim_loss(x: np.ndarray, y: np.ndarray, cfg: SsimConfig = DEFAULT_SSIM_CONFIG) -> float:
    """1 - SSIM; zero iff structurally identical, at most 2."""
    return 1.0 - ssim(x, y, cfg)


def ms_ssim_loss(x: np.ndarray, y: np.ndarray, cfg: SsimConfig = DEFAULT_SSIM_CONFIG) -> float:
    """1 - MS-SSIM."""
    return 1.0 - ms_ssim(x, y, cfg)


def composite_from_terms(
    w: LossWeights,
    l1_term: float,
    ms_ssim_term: float,
    ssim_term: float | None = None,
    vgg_term: float | None = None,
) -> float:
    """Combine already-computed term values under the given weights.

    Exposed separately so the arithmetic can be checked on stubbed values.
    """
    if w.mode == "oppo":
        if ssim_term is None:
            raise ValueError("oppo mode needs the SSIM loss term")
        third = ssim_term
    else:
        if w.gamma != 0.0:
            if vgg_term is None:
                raise ValueError("gamma != 0 requires an externally supplied vgg_term")
            third = vgg_term
        else:
            third = 0.0
    return w.alpha * l1_term + w.beta * ms_ssim_term + w.gamma * third


def composite_loss(
    x: np.ndarray,
    y: np.ndarray,
    w: LossWeights,
    vgg_term: float | None = None,
    cfg: SsimConfig = DEFAULT_SSIM_CONFIG,
    pixel_scale: float = 1.0,
) -> float:
    """alpha * L1 + beta * (1 - MS-SSIM) + gamma * third-term.

    See LossWeights for what the third term means per mode. The SSIM-based
    terms are scale-free; pixel_scale only affects the L1 term.
    """
    l1_term = l1_distance(x, y, pixel_scale)
    ms_term = ms_ssim_loss(x, y, cfg) if w.beta != 0.0 else 0.0
    s_term = ssim_loss(x, y, cfg) if w.mode == "oppo" and w.gamma != 0.0 else None
    if w.mode == "oppo" and s_term is None:
        s_term = 0.0
    return composite_from_terms(w, l1_term, ms_term, s_term, vgg_term)
