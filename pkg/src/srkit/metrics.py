"""Full-reference metrics and the challenge ranking score.

PSNR is computed on RGB with an 8-bit peak (MSE pooled over all 3*H*W
samples). SSIM follows the canonical windowed form: 11x11 Gaussian window,
sigma 1.5, k1=0.01, k2=0.03, dynamic range 255, computed per channel and
averaged. MS-SSIM is the 5-scale product form with 2x average-pool
downsampling between scales.

The challenge score combines the normalized track averages,

    score = (psnr_avg / 50 + (ssim_avg - 0.4) / 0.6) / 2,

i.e. the mean of the two normalized terms. The published per-team scores
all equal this mean; the plain sum of the two terms is available under
``raw_sum=True`` for comparison.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.ndimage import correlate1d

from .errors import DimensionMismatchError, PairingError
from .image import MAX_VALUE, ensure_image, load_png

REPORT_SCHEMA_VERSION = 1

# Canonical 5-scale weights, normalized so they sum to 1 exactly (the
# textbook values 0.0448..0.1333 add up to 1.0001).
_RAW_MS_WEIGHTS = (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)
DEFAULT_MS_WEIGHTS = tuple(w / sum(_RAW_MS_WEIGHTS) for w in _RAW_MS_WEIGHTS)


def gaussian_window(size: int = 11, sigma: float = 1.5) -> np.ndarray:
    """2-D Gaussian weighting window, normalized to sum 1."""
    if size < 1 or size % 2 == 0:
        raise ValueError(f"window size must be odd and positive, got {size}")
    half = (size - 1) / 2.0
    x = np.arange(size, dtype=np.float64) - half
    g = np.exp(-(x**2) / (2.0 * sigma**2))
    win = np.outer(g, g)
    return win / win.sum()


@dataclass(frozen=True)
class SsimConfig:
    """Window and constants for SSIM / MS-SSIM."""

    window_size: int = 11
    sigma: float = 1.5
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = MAX_VALUE
    ms_weights: tuple = DEFAULT_MS_WEIGHTS

    def __post_init__(self):
        if self.dynamic_range <= 0:
            raise ValueError("dynamic_range must be positive")
        if abs(sum(self.ms_weights) - 1.0) > 1e-12:
            raise ValueError(
                f"ms_weights must sum to 1 within 1e-12, got {sum(self.ms_weights)!r}"
            )

    def window(self) -> np.ndarray:
        return gaussian_window(self.window_size, self.sigma)


DEFAULT_SSIM_CONFIG = SsimConfig()


def _check_same_dims(sr: np.ndarray, hr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    sr = ensure_image(sr, "sr")
    hr = ensure_image(hr, "hr")
    if sr.shape != hr.shape:
        raise DimensionMismatchError(
            f"image dimensions differ: sr {sr.shape} vs hr {hr.shape}"
        )
    return sr, hr


def psnr_rgb(sr: np.ndarray, hr: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB, pooled over all RGB samples.

    Identical images give math.inf (zero MSE has no finite dB value; the
    sentinel is carried, not hidden).
    """
    sr, hr = _check_same_dims(sr, hr)
    diff = (sr - hr) * MAX_VALUE
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(MAX_VALUE**2 / mse)


def _window_filter(plane: np.ndarray, kernel_1d: np.ndarray) -> np.ndarray:
    """Separable windowed weighted mean, valid region only."""
    r = (kernel_1d.size - 1) // 2
    out = correlate1d(plane, kernel_1d, axis=0, mode="constant")
    out = correlate1d(out, kernel_1d, axis=1, mode="constant")
    return out[r : plane.shape[0] - r, r : plane.shape[1] - r]


def _kernel_1d(cfg: SsimConfig) -> np.ndarray:
    xk = np.arange(cfg.window_size, dtype=np.float64) - (cfg.window_size - 1) / 2.0
    k1d = np.exp(-(xk**2) / (2.0 * cfg.sigma**2))
    return k1d / k1d.sum()


def _ssim_maps_plane(x: np.ndarray, y: np.ndarray, cfg: SsimConfig):
    """Luminance and contrast-structure maps for one channel plane.

    Both inputs are on the [0, dynamic_range] scale.
    """
    k1d = _kernel_1d(cfg)
    c1 = (cfg.k1 * cfg.dynamic_range) ** 2
    c2 = (cfg.k2 * cfg.dynamic_range) ** 2

    mu1 = _window_filter(x, k1d)
    mu2 = _window_filter(y, k1d)
    mu1_sq = mu1 * mu1
    mu2_sq = mu2 * mu2
    mu1_mu2 = mu1 * mu2
    sigma1_sq = _window_filter(x * x, k1d) - mu1_sq
    sigma2_sq = _window_filter(y * y, k1d) - mu2_sq
    sigma12 = _window_filter(x * y, k1d) - mu1_mu2

    lum = (2.0 * mu1_mu2 + c1) / (mu1_sq + mu2_sq + c1)
    cs = (2.0 * sigma12 + c2) / (sigma1_sq + sigma2_sq + c2)
    return lum, cs


def _ssim_cs_means(sr: np.ndarray, hr: np.ndarray, cfg: SsimConfig):
    """Mean SSIM and mean contrast-structure term, averaged over channels."""
    h, w = sr.shape[:2]
    if min(h, w) < cfg.window_size:
        raise DimensionMismatchError(
            f"image {h}x{w} smaller than the {cfg.window_size}x{cfg.window_size} window"
        )
    ssim_vals = []
    cs_vals = []
    for c in range(3):
        # contiguous planes: the separable filter is several times faster
        # than on strided channel views
        x = np.ascontiguousarray(sr[:, :, c]) * cfg.dynamic_range
        y = np.ascontiguousarray(hr[:, :, c]) * cfg.dynamic_range
        lum, cs = _ssim_maps_plane(x, y, cfg)
        ssim_vals.append(float(np.mean(lum * cs)))
        cs_vals.append(float(np.mean(cs)))
    return float(np.mean(ssim_vals)), float(np.mean(cs_vals))


def ssim(sr: np.ndarray, hr: np.ndarray, cfg: SsimConfig = DEFAULT_SSIM_CONFIG) -> float:
    """Mean structural similarity over all window positions and channels."""
    sr, hr = _check_same_dims(sr, hr)
    value, _ = _ssim_cs_means(sr, hr, cfg)
    return value


def average_pool2(img: np.ndarray) -> np.ndarray:
    """2x average-pool used between MS-SSIM scales.

    A trailing odd row/column is dropped before pooling, so output dims are
    floor(input/2). Works on (H, W) planes and (H, W, C) stacks.
    """
    h, w = img.shape[0] - img.shape[0] % 2, img.shape[1] - img.shape[1] % 2
    x = img[:h, :w]
    return 0.25 * (x[0::2, 0::2] + x[1::2, 0::2] + x[0::2, 1::2] + x[1::2, 1::2])


def ms_ssim(
    sr: np.ndarray, hr: np.ndarray, cfg: SsimConfig = DEFAULT_SSIM_CONFIG
) -> float:
    """Multi-scale SSIM: contrast-structure at every scale, luminance at the last.

        ms = prod_i cs_i ** w_i * lum_last ** w_last

    Scales are produced by 2x average pooling; with weights (0,0,0,0,1) this
    reduces to single-scale SSIM of the 16x-pooled pair.
    """
    sr, hr = _check_same_dims(sr, hr)
    levels = len(cfg.ms_weights)
    needed = cfg.window_size * 2 ** (levels - 1)
    h, w = sr.shape[:2]
    if min(h, w) < needed:
        raise DimensionMismatchError(
            f"image {h}x{w} too small for {levels} scales (needs min dim >= {needed})"
        )
    x, y = sr, hr
    result = 1.0
    for i, weight in enumerate(cfg.ms_weights):
        ssim_val, cs_val = _ssim_cs_means(x, y, cfg)
        term = ssim_val if i == levels - 1 else cs_val
        if weight != 0.0:
            result *= term**weight
        if i < levels - 1:
            x = average_pool2(x)
            y = average_pool2(y)
    return float(result)


def challenge_score(psnr_avg: float, ssim_avg: float, raw_sum: bool = False) -> float:
    """Track-ranking score from the two normalized averages.

    Default is the mean of psnr_avg/50 and (ssim_avg - 0.4)/0.6, which is
    what the published leaderboards print; raw_sum=True returns the plain
    sum of the two terms instead. Inputs are not clamped.
    """
    total = psnr_avg / 50.0 + (ssim_avg - 0.4) / 0.6
    return total if raw_sum else 0.5 * total


@dataclass(frozen=True)
class ImageMetrics:
    image_id: str
    psnr: float
    ssim: float
    ms_ssim: float | None = None


@dataclass
class MetricReport:
    """Per-image metrics plus aggregates for one SR-vs-HR directory run."""

    per_image: list[ImageMetrics] = field(default_factory=list)
    psnr_avg: float = math.nan
    ssim_avg: float = math.nan
    ms_ssim_avg: float | None = None
    score: float = math.nan
    non_finite_psnr: bool = False

    def to_json_dict(self) -> dict:
        def num(v, digits):
            if v is None:
                return None
            if not math.isfinite(v):
                return "inf" if v > 0 else "-inf"
            return round(v, digits)

        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "per_image": [
                {
                    "id": m.image_id,
                    "psnr": num(m.psnr, 3),
                    "ssim": num(m.ssim, 4),
                    "ms_ssim": num(m.ms_ssim, 4),
                }
                for m in self.per_image
            ],
            "psnr_avg": num(self.psnr_avg, 3),
            "ssim_avg": num(self.ssim_avg, 4),
            "ms_ssim_avg": num(self.ms_ssim_avg, 4),
            "score": num(self.score, 4),
            "non_finite_psnr": self.non_finite_psnr,
        }

    def write_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    def write_csv(self, path) -> None:
        def num(v, digits):
            if v is None:
                return ""
            if not math.isfinite(v):
                return "inf" if v > 0 else "-inf"
            return f"{v:.{digits}f}"

        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["image_id", "psnr", "ssim", "ms_ssim", "score"])
            for m in self.per_image:
                writer.writerow(
                    [m.image_id, num(m.psnr, 3), num(m.ssim, 4), num(m.ms_ssim, 4), ""]
                )
            writer.writerow(
                [
                    "average",
                    num(self.psnr_avg, 3),
                    num(self.ssim_avg, 4),
                    num(self.ms_ssim_avg, 4),
                    num(self.score, 4),
                ]
            )


def _pair_directories(sr_dir: Path, hr_dir: Path) -> list[tuple[str, Path, Path]]:
    """Match SR and HR files by stem (extensions ignored), sorted by stem."""

    def stems(d: Path) -> dict[str, Path]:
        out: dict[str, Path] = {}
        for p in sorted(d.iterdir()):
            if p.is_file() and p.suffix.lower() == ".png":
                if p.stem in out:
                    raise PairingError(f"duplicate stem '{p.stem}' in {d}")
                out[p.stem] = p
        return out

    sr_map = stems(sr_dir)
    hr_map = stems(hr_dir)
    missing = sorted(set(hr_map) - set(sr_map))
    extra = sorted(set(sr_map) - set(hr_map))
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"HR stems without SR file: {', '.join(missing)}")
        if extra:
            parts.append(f"SR stems without HR file: {', '.join(extra)}")
        raise PairingError("; ".join(parts))
    if not hr_map:
        raise PairingError(f"no PNG files found in {hr_dir}")
    return [(stem, sr_map[stem], hr_map[stem]) for stem in sorted(hr_map)]


def evaluate_pair(
    sr: np.ndarray,
    hr: np.ndarray,
    image_id: str,
    cfg: SsimConfig = DEFAULT_SSIM_CONFIG,
    include_ms_ssim: bool = True,
) -> ImageMetrics:
    if sr.shape != hr.shape:
        raise DimensionMismatchError(
            f"pair '{image_id}': sr {sr.shape} vs hr {hr.shape}"
        )
    return ImageMetrics(
        image_id=image_id,
        psnr=psnr_rgb(sr, hr),
        ssim=ssim(sr, hr, cfg),
        ms_ssim=ms_ssim(sr, hr, cfg) if include_ms_ssim else None,
    )


def evaluate_dirs(
    sr_dir,
    hr_dir,
    cfg: SsimConfig = DEFAULT_SSIM_CONFIG,
    include_ms_ssim: bool = True,
    exclude_nonfinite_psnr: bool = False,
    workers: int = 1,
) -> MetricReport:
    """Score every same-stem SR/HR pair in two directories.

    Results are aggregated in filename order regardless of worker count, so
    parallel runs are bit-identical to serial ones. Infinite PSNR entries
    (identical pairs) poison the average by default; pass
    exclude_nonfinite_psnr=True to average the finite entries only. Either
    way the report's non_finite_psnr flag is raised.
    """
    pairs = _pair_directories(Path(sr_dir), Path(hr_dir))

    def job(item):
        stem, sr_path, hr_path = item
        sr = load_png(sr_path)
        hr = load_png(hr_path)
        try:
            return evaluate_pair(sr, hr, stem, cfg, include_ms_ssim)
        except DimensionMismatchError as exc:
            raise DimensionMismatchError(
                f"pair '{stem}' ({sr_path} vs {hr_path}): {exc}"
            ) from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_image = list(pool.map(job, pairs))
    else:
        per_image = [job(p) for p in pairs]

    psnrs = [m.psnr for m in per_image]
    non_finite = any(not math.isfinite(p) for p in psnrs)
    if exclude_nonfinite_psnr:
        finite = [p for p in psnrs if math.isfinite(p)]
        if not finite:
            raise ValueError("all PSNR values are non-finite; no average exists")
        psnr_avg = float(np.mean(finite))
    else:
        psnr_avg = float(np.mean(psnrs))
    ssim_avg = float(np.mean([m.ssim for m in per_image]))
    ms_avg = (
        float(np.mean([m.ms_ssim for m in per_image])) if include_ms_ssim else None
    )
    return MetricReport(
        per_image=per_image,
        psnr_avg=psnr_avg,
        ssim_avg=ssim_avg,
        ms_ssim_avg=ms_avg,
        score=challenge_score(psnr_avg, ssim_avg),
        non_finite_psnr=non_finite,
    )
