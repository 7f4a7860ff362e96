"""Multi-stage 2-D Haar analysis/synthesis and the wavelet loss built on it.

The transform is orthonormal: on each 2x2 block (a, b; c, d),

    LL = (a+b+c+d)/2    LH = (a-b+c-d)/2
    HL = (a+b-c-d)/2    HH = (a-b-c+d)/2

so coefficient energy equals image energy (Parseval) and the inverse is the
same butterfly. Recursion applies to the LL band. Odd dimensions are
handled by duplicating the last row/column before pairing; reconstruction
then crops back, which is still exact, but the duplicated samples add
energy, so Parseval holds only while dimensions stay even at every stage.

The loss puts L1 on every detail subband and squared L2 on every stage's
low band:

    high = sum_i |detail_i(x) - detail_i(y)|_1
    low  = sum_i ||low_i(x) - low_i(y)||_2^2
    total = L1(x, y) + lam * (low + high)

Sums are raw coefficient sums by default (the 2x2 worked example below
relies on that); reduction="mean" divides each term by its coefficient
count instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .image import ensure_image


def _pad_even(plane: np.ndarray) -> np.ndarray:
    """Duplicate the last row/column so both dims are even."""
    h, w = plane.shape
    if h % 2:
        plane = np.concatenate([plane, plane[-1:, :]], axis=0)
    if w % 2:
        plane = np.concatenate([plane, plane[:, -1:]], axis=1)
    return plane


def _analyze_once(plane: np.ndarray):
    x = _pad_even(np.asarray(plane, dtype=np.float64))
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    ll = (a + b + c + d) / 2.0
    lh = (a - b + c - d) / 2.0
    hl = (a + b - c - d) / 2.0
    hh = (a - b - c + d) / 2.0
    return ll, lh, hl, hh


def _synthesize_once(ll, lh, hl, hh, out_shape):
    a = (ll + lh + hl + hh) / 2.0
    b = (ll - lh + hl - hh) / 2.0
    c = (ll + lh - hl - hh) / 2.0
    d = (ll - lh - hl + hh) / 2.0
    h2, w2 = ll.shape
    out = np.empty((2 * h2, 2 * w2), dtype=np.float64)
    out[0::2, 0::2] = a
    out[0::2, 1::2] = b
    out[1::2, 0::2] = c
    out[1::2, 1::2] = d
    return out[: out_shape[0], : out_shape[1]]


@dataclass
class WaveletPyramid:
    """Haar decomposition: per-stage (LH, HL, HH) details plus the final LL.

    input_shapes[i] records the raster dims fed into stage i, which is what
    synthesis needs to undo odd-dimension padding.
    """

    stages: int
    details: list  # [(lh, hl, hh)] per stage, coarser stages later
    ll: np.ndarray
    input_shapes: list  # [(h, w)] per stage

    def band_shapes(self) -> list:
        return [d[0].shape for d in self.details]


def haar_analyze(plane: np.ndarray, stages: int) -> WaveletPyramid:
    """Decompose a single real raster into `stages` levels of subbands."""
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2:
        raise ValueError(f"expected a 2-D raster, got shape {plane.shape}")
    if stages < 1:
        raise ValueError(f"stages must be >= 1, got {stages}")
    if min(plane.shape) < 2**stages:
        raise ValueError(
            f"raster {plane.shape} too small for {stages} stages "
            f"(needs min dim >= {2 ** stages})"
        )
    details = []
    shapes = []
    current = plane
    for _ in range(stages):
        shapes.append(current.shape)
        ll, lh, hl, hh = _analyze_once(current)
        details.append((lh, hl, hh))
        current = ll
    return WaveletPyramid(stages=stages, details=details, ll=current, input_shapes=shapes)


def haar_synthesize(pyr: WaveletPyramid) -> np.ndarray:
    """Invert haar_analyze; exact for even-dimension inputs."""
    current = np.asarray(pyr.ll, dtype=np.float64)
    for (lh, hl, hh), shape in zip(reversed(pyr.details), reversed(pyr.input_shapes)):
        if not (lh.shape == hl.shape == hh.shape == current.shape):
            raise ValueError(
                f"inconsistent band dims: ll {current.shape}, "
                f"lh {lh.shape}, hl {hl.shape}, hh {hh.shape}"
            )
        current = _synthesize_once(current, lh, hl, hh, shape)
    return current


def _reduce(arr: np.ndarray, power: int, reduction: str) -> float:
    v = np.abs(arr) if power == 1 else arr * arr
    return float(v.sum() if reduction == "sum" else v.mean())


def wavelet_loss(
    x: np.ndarray,
    y: np.ndarray,
    stages: int = 2,
    lam: float = 1.0,
    reduction: str = "sum",
    pixel_scale: float = 1.0,
) -> tuple[float, float, float]:
    """(total, high, low) wavelet loss between two images.

    Defaults are two stages with lam=1. Computed per channel and summed over
    R, G, B. pixel_scale rescales inputs first (use 255.0 to compare against
    byte-scale training logs).
    """
    x = ensure_image(x, "x")
    y = ensure_image(y, "y")
    if x.shape != y.shape:
        raise DimensionMismatchError(f"image dimensions differ: {x.shape} vs {y.shape}")
    if reduction not in ("sum", "mean"):
        raise ValueError(f"reduction must be 'sum' or 'mean', got {reduction!r}")
    if stages < 1:
        raise ValueError(f"stages must be >= 1, got {stages}")
    if min(x.shape[:2]) < 2**stages:
        raise ValueError(
            f"image {x.shape[:2]} too small for {stages} stages "
            f"(needs min dim >= {2 ** stages})"
        )

    l1_term = _reduce((x - y) * pixel_scale, 1, reduction)
    high = 0.0
    low = 0.0
    for c in range(3):
        current_x = x[:, :, c] * pixel_scale
        current_y = y[:, :, c] * pixel_scale
        for _ in range(stages):
            ll_x, lh_x, hl_x, hh_x = _analyze_once(current_x)
            ll_y, lh_y, hl_y, hh_y = _analyze_once(current_y)
            for bx, by in ((lh_x, lh_y), (hl_x, hl_y), (hh_x, hh_y)):
                high += _reduce(bx - by, 1, reduction)
            low += _reduce(ll_x - ll_y, 2, reduction)
            current_x, current_y = ll_x, ll_y
    total = l1_term + lam * (low + high)
    return total, high, low
