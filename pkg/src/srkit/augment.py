"""Paired (LR, HR) augmentation operators with deterministic seeding.

Every operator keeps the two members of a pair aligned: geometric ops act
identically on both, and rectangle ops place the HR rectangle at exactly
scale-times the LR rectangle (integer arithmetic, no rounding drift).
Identity parameters (lambda 1, zero-area rectangle, identity permutation)
are exact no-ops.

Operator semantics, restated here so nothing depends on external text:

  cutout    zero (or mean-fill) a rectangle in LR; HR untouched
  cutmix    paste the partner pair's rectangle into both members
  mixup     lam * A + (1 - lam) * B on both members
  cutmixup  mixup inside a rectangle, A outside, on both members
  cutblur   paste a rectangle of nearest-upsampled LR into HR, or of
            box-downsampled HR into LR (direction drawn from the stream)
  rgb_perm  one channel permutation applied to both members
  blend     lam * image + (1 - lam) * constant color, both members
  hflip / vflip / rot90   same exact pixel permutation on both members

Randomness (rectangle geometry, cutblur direction) comes from a PCG64
stream seeded by the spec, so identical specs replay identical outputs on
any platform.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import DimensionMismatchError
from .image import ensure_image
from .models import box_downsample, nearest_upscale

AUG_SPEC_SCHEMA_VERSION = 1

OPS = (
    "cutout",
    "cutmix",
    "mixup",
    "cutmixup",
    "cutblur",
    "rgb_perm",
    "blend",
    "hflip",
    "vflip",
    "rot90",
)
_MIX_OPS = {"cutmix", "mixup", "cutmixup"}
_RECT_OPS = {"cutout", "cutmix", "cutmixup", "cutblur"}


def make_rng(seed: int, worker: int = 0) -> np.random.Generator:
    """Deterministic generator; (seed, worker) pairs give independent streams."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, worker])))


@dataclass(frozen=True)
class AugSpec:
    """One augmentation: the op, its parameters, and the stream seed."""

    op: str
    mix_lambda: float = 1.0
    rect_ratio: float = 0.0
    blend_color: tuple = (0.5, 0.5, 0.5)
    channel_perm: tuple = (0, 1, 2)
    cutout_fill: str = "zero"
    seed: int = 0

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown op {self.op!r}; choose one of {OPS}")
        if not 0.0 <= self.mix_lambda <= 1.0:
            raise ValueError(f"mix_lambda must be in [0, 1], got {self.mix_lambda}")
        if not 0.0 <= self.rect_ratio <= 1.0:
            raise ValueError(f"rect_ratio must be in [0, 1], got {self.rect_ratio}")
        if sorted(self.channel_perm) != [0, 1, 2]:
            raise ValueError(f"channel_perm must permute (0,1,2), got {self.channel_perm}")
        if len(self.blend_color) != 3 or any(not 0.0 <= c <= 1.0 for c in self.blend_color):
            raise ValueError(f"blend_color must be 3 values in [0,1], got {self.blend_color}")
        if self.cutout_fill not in ("zero", "mean"):
            raise ValueError(f"cutout_fill must be 'zero' or 'mean', got {self.cutout_fill!r}")

    def to_json(self) -> str:
        d = asdict(self)
        d["schema_version"] = AUG_SPEC_SCHEMA_VERSION
        d["blend_color"] = list(self.blend_color)
        d["channel_perm"] = list(self.channel_perm)
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AugSpec":
        d = json.loads(text)
        d.pop("schema_version", None)
        if "blend_color" in d:
            d["blend_color"] = tuple(d["blend_color"])
        if "channel_perm" in d:
            d["channel_perm"] = tuple(d["channel_perm"])
        return cls(**d)


def _check_pair(lr: np.ndarray, hr: np.ndarray, name: str) -> int:
    """Return the integer scale tying hr dims to lr dims."""
    lh, lw = lr.shape[:2]
    hh, hw = hr.shape[:2]
    if hh % lh or hw % lw or hh // lh != hw // lw:
        raise DimensionMismatchError(
            f"{name}: HR {hh}x{hw} is not an integer multiple of LR {lh}x{lw}"
        )
    return hh // lh


def sample_rect(rng: np.random.Generator, h: int, w: int, ratio: float):
    """(top, left, height, width) covering about ratio of the area.

    Area ratio first, then a log-uniform aspect in [1/2, 2], then position.
    ratio 0 yields no rectangle; ratio 1 covers everything.
    """
    if ratio <= 0.0:
        return None
    if ratio >= 1.0:
        return (0, 0, h, w)
    area = ratio * h * w
    aspect = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    rh = int(np.clip(round(math.sqrt(area * aspect)), 1, h))
    rw = int(np.clip(round(math.sqrt(area / aspect)), 1, w))
    top = int(rng.integers(0, h - rh + 1))
    left = int(rng.integers(0, w - rw + 1))
    return (top, left, rh, rw)


def _rect_slices(rect, factor: int = 1):
    top, left, rh, rw = rect
    return (
        slice(top * factor, (top + rh) * factor),
        slice(left * factor, (left + rw) * factor),
    )


def augment_pair(
    lr: np.ndarray,
    hr: np.ndarray,
    spec: AugSpec,
    other: tuple | None = None,
    rng: np.random.Generator | None = None,
):
    """Apply one augmentation to a pair, returning new (lr, hr) arrays.

    Mix-type ops (cutmix, mixup, cutmixup) need `other`, a second
    dimension-matched (lr, hr) pair. Pass an explicit rng to drive several
    calls from one stream; by default each call replays from spec.seed.
    """
    lr = ensure_image(lr, "lr")
    hr = ensure_image(hr, "hr")
    scale = _check_pair(lr, hr, "pair")

    lr2 = hr2 = None
    if spec.op in _MIX_OPS:
        if other is None:
            raise ValueError(f"op {spec.op!r} requires a partner pair")
        lr2 = ensure_image(other[0], "partner lr")
        hr2 = ensure_image(other[1], "partner hr")
        if lr2.shape != lr.shape or hr2.shape != hr.shape:
            raise DimensionMismatchError("partner pair dimensions differ from pair")

    if rng is None:
        rng = make_rng(spec.seed)
    out_lr, out_hr = lr.copy(), hr.copy()
    lam = spec.mix_lambda

    if spec.op == "mixup":
        out_lr = lam * lr + (1.0 - lam) * lr2
        out_hr = lam * hr + (1.0 - lam) * hr2

    elif spec.op in _RECT_OPS:
        rect = sample_rect(rng, lr.shape[0], lr.shape[1], spec.rect_ratio)
        if rect is not None:
            ys, xs = _rect_slices(rect)
            ys_h, xs_h = _rect_slices(rect, scale)
            if spec.op == "cutout":
                if spec.cutout_fill == "zero":
                    out_lr[ys, xs, :] = 0.0
                else:
                    out_lr[ys, xs, :] = lr.mean(axis=(0, 1))
            elif spec.op == "cutmix":
                out_lr[ys, xs, :] = lr2[ys, xs, :]
                out_hr[ys_h, xs_h, :] = hr2[ys_h, xs_h, :]
            elif spec.op == "cutmixup":
                out_lr[ys, xs, :] = lam * lr[ys, xs, :] + (1.0 - lam) * lr2[ys, xs, :]
                out_hr[ys_h, xs_h, :] = (
                    lam * hr[ys_h, xs_h, :] + (1.0 - lam) * hr2[ys_h, xs_h, :]
                )
            elif spec.op == "cutblur":
                if rng.integers(0, 2) == 0:
                    out_hr[ys_h, xs_h, :] = nearest_upscale(lr, scale)[ys_h, xs_h, :]
                else:
                    out_lr[ys, xs, :] = box_downsample(hr, scale)[ys, xs, :]

    elif spec.op == "rgb_perm":
        perm = list(spec.channel_perm)
        out_lr = lr[:, :, perm]
        out_hr = hr[:, :, perm]

    elif spec.op == "blend":
        color = np.asarray(spec.blend_color, dtype=np.float64)
        out_lr = lam * lr + (1.0 - lam) * color
        out_hr = lam * hr + (1.0 - lam) * color

    elif spec.op == "hflip":
        out_lr = lr[:, ::-1].copy()
        out_hr = hr[:, ::-1].copy()

    elif spec.op == "vflip":
        out_lr = lr[::-1, :].copy()
        out_hr = hr[::-1, :].copy()

    elif spec.op == "rot90":
        out_lr = np.rot90(lr, axes=(0, 1)).copy()
        out_hr = np.rot90(hr, axes=(0, 1)).copy()

    return np.ascontiguousarray(out_lr), np.ascontiguousarray(out_hr)
