"""Self-ensemble over the eight dihedral transforms and output fusion.

A transform is a clockwise quarter-turn count plus an optional horizontal
flip applied after the rotation; the eight of them form the dihedral
group of the square. Under one quarter-turn, input pixel (r, c) of an
HxW image lands at (c, H-1-r) in the WxH output. Self-ensemble runs a
model on every transformed copy of the input, undoes each transform on
the model output, and averages. Averaging uses a balanced pairwise fold
in a fixed
enumeration order, so results are bit-reproducible no matter how the
caller orders the subset, and the 8-branch mean of identical arrays is
bit-exact.

All averaging happens in real-valued space; quantize once at save time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError
from .image import ensure_image

# A model maps an (H, W, 3) image to an (s*H, s*W, 3) image for a fixed
# integer scale s; 1 is allowed for identity/debug models.
ModelFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, order=True)
class TransformId:
    """One dihedral-group element: rotate clockwise by rot quarter-turns,
    then flip horizontally if set."""

    rot: int
    flipped: bool

    def __post_init__(self):
        if self.rot not in (0, 1, 2, 3):
            raise ValueError(f"rot must be in 0..3, got {self.rot}")


IDENTITY = TransformId(0, False)
ROTATIONS = tuple(TransformId(r, False) for r in range(4))
ALL_TRANSFORMS = ROTATIONS + tuple(TransformId(r, True) for r in range(4))


def apply_transform(img: np.ndarray, t: TransformId) -> np.ndarray:
    """Exact pixel permutation; never interpolates."""
    out = np.rot90(img, k=-t.rot, axes=(0, 1))
    if t.flipped:
        out = out[:, ::-1]
    return np.ascontiguousarray(out)


def invert_transform(img: np.ndarray, t: TransformId) -> np.ndarray:
    """Undo apply_transform: invert_transform(apply_transform(x, t), t) == x."""
    out = img[:, ::-1] if t.flipped else img
    out = np.rot90(out, k=t.rot, axes=(0, 1))
    return np.ascontiguousarray(out)


def compose(first: TransformId, then: TransformId) -> TransformId:
    """The single transform equal to applying `first`, then `then`."""
    if first.flipped:
        rot = (first.rot - then.rot) % 4
    else:
        rot = (first.rot + then.rot) % 4
    return TransformId(rot, first.flipped != then.flipped)


def inverse(t: TransformId) -> TransformId:
    """Group inverse; flipped elements are involutions."""
    if t.flipped:
        return t
    return TransformId((-t.rot) % 4, False)


def _pairwise_mean(arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Balanced-tree sum then divide; exact for power-of-two identical inputs."""
    items = list(arrays)
    n = len(items)
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0] / n


def _infer_scale(in_shape, out_shape, t: TransformId) -> int:
    ih, iw = in_shape[:2]
    oh, ow = out_shape[:2]
    if oh % ih or ow % iw or oh // ih != ow // iw:
        raise DimensionMismatchError(
            f"model output {oh}x{ow} is not an integer multiple of its "
            f"{ih}x{iw} input (transform {t})"
        )
    return oh // ih


def self_ensemble(
    img: np.ndarray,
    model: ModelFn,
    transforms: Iterable[TransformId] = ALL_TRANSFORMS,
) -> np.ndarray:
    """Mean over the chosen transforms of undo(model(do(img)))."""
    img = ensure_image(img)
    chosen = set(transforms)
    if not chosen:
        raise ValueError("transform subset must be non-empty")
    ordered = [t for t in ALL_TRANSFORMS if t in chosen]

    outputs = []
    scale = None
    for t in ordered:
        fwd = apply_transform(img, t)
        out = model(fwd)
        out = ensure_image(out, f"model output for transform {t}")
        s = _infer_scale(fwd.shape, out.shape, t)
        if scale is None:
            scale = s
        elif s != scale:
            raise DimensionMismatchError(
                f"model scale changed between branches: {scale} then {s} "
                f"(transform {t})"
            )
        outputs.append(invert_transform(out, t))
    return _pairwise_mean(outputs)


def fuse_outputs(imgs: Sequence[np.ndarray]) -> np.ndarray:
    """Pixelwise arithmetic mean of dimension-matched images."""
    if len(imgs) == 0:
        raise ValueError("cannot fuse an empty list of images")
    imgs = [ensure_image(im, f"input {i}") for i, im in enumerate(imgs)]
    shape = imgs[0].shape
    for i, im in enumerate(imgs[1:], start=1):
        if im.shape != shape:
            raise DimensionMismatchError(
                f"input {i} has shape {im.shape}, expected {shape}"
            )
    return _pairwise_mean(imgs)
