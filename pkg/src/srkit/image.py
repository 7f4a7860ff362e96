"""Canonical image representation and 8-bit PNG I/O.

An image is a float64 numpy array of shape (H, W, 3), RGB order, values in
[0, 1]. Every other module trades in this representation; files are 8-bit
PNG on the way in and out. Quantization to bytes rounds half away from
zero (ensemble averaging and tile stitching hit exact .5 boundaries, so
the rule is pinned rather than left to the platform).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from .errors import ImageDecodeError, ImageFormatError

# 8-bit pipeline throughout: metric formulas rescale [0,1] data by this.
MAX_VALUE = 255.0

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

# PNG color types: 0 gray, 2 RGB, 4 gray+alpha, 6 RGBA. Palette (3) is out
# of scope, as is anything but 8 bits per sample (16-bit input is rejected
# rather than silently truncated).
_ACCEPTED_COLOR_TYPES = {0, 2, 4, 6}


def ensure_image(arr: np.ndarray, name: str = "image") -> np.ndarray:
    """Validate the (H, W, 3) float [0,1] contract, returning float64 data.

    Raises ValueError with the offending property spelled out.
    """
    a = np.asarray(arr, dtype=np.float64)
    if a.ndim != 3 or a.shape[2] != 3:
        raise ValueError(f"{name}: expected shape (H, W, 3), got {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name}: height and width must be >= 1, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name}: contains non-finite values")
    if a.min() < 0.0 or a.max() > 1.0:
        raise ValueError(
            f"{name}: values outside [0, 1] (min {a.min():.6g}, max {a.max():.6g})"
        )
    return a


def to_bytes(img: np.ndarray) -> np.ndarray:
    """Quantize [0,1] data to uint8, rounding half away from zero.

    Values are non-negative here, so floor(x*255 + 0.5) is exactly that rule
    (np.round would round half to even instead).
    """
    img = ensure_image(img)
    return np.floor(img * MAX_VALUE + 0.5).astype(np.uint8)


def from_bytes(raw: np.ndarray) -> np.ndarray:
    """Map uint8 data to the canonical [0,1] representation (u8/255 exactly)."""
    raw = np.asarray(raw)
    if raw.dtype != np.uint8:
        raise ValueError(f"expected uint8 data, got {raw.dtype}")
    return raw.astype(np.float64) / MAX_VALUE


def quantize(img: np.ndarray) -> np.ndarray:
    """Snap a [0,1] image onto the 256-level grid {0..255}/255.

    This is exactly what saving and reloading does to pixel values; apply it
    explicitly when a metric should see what a submission file would hold.
    """
    return from_bytes(to_bytes(img))


def _read_png_header(path: Path) -> tuple[int, int]:
    """Return (bit_depth, color_type) from the IHDR chunk."""
    try:
        with open(path, "rb") as fh:
            head = fh.read(26)
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise ImageDecodeError(f"{path}: unreadable ({exc})") from exc
    if len(head) < 26 or head[:8] != _PNG_SIGNATURE:
        raise ImageDecodeError(f"{path}: not a PNG stream")
    if head[12:16] != b"IHDR":
        raise ImageDecodeError(f"{path}: malformed PNG (missing IHDR)")
    return head[24], head[25]


def load_png(path) -> np.ndarray:
    """Load an 8-bit PNG as a canonical image.

    RGBA alpha is discarded; grayscale is replicated to three channels.
    Raises FileNotFoundError for a missing file, ImageFormatError for an
    unsupported bit depth or color type, ImageDecodeError for a corrupt
    stream. Returned values are u8/255 exactly.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such image file: {path}")
    bit_depth, color_type = _read_png_header(path)
    if bit_depth != 8:
        raise ImageFormatError(f"{path}: unsupported bit depth {bit_depth} (only 8-bit)")
    if color_type not in _ACCEPTED_COLOR_TYPES:
        raise ImageFormatError(
            f"{path}: unsupported color type {color_type} (grayscale/RGB/RGBA only)"
        )
    try:
        with PILImage.open(path) as pil:
            pil.load()
            raw = np.asarray(pil)
    except (UnidentifiedImageError, SyntaxError, OSError, ValueError) as exc:
        raise ImageDecodeError(f"{path}: corrupt PNG stream ({exc})") from exc

    if raw.dtype != np.uint8:
        raise ImageFormatError(f"{path}: decoded to {raw.dtype}, expected uint8")
    if raw.ndim == 2:  # grayscale
        raw = np.repeat(raw[:, :, None], 3, axis=2)
    elif raw.ndim == 3 and raw.shape[2] in (2, 4):  # drop alpha (LA / RGBA)
        raw = raw[:, :, :-1]
        if raw.shape[2] == 1:
            raw = np.repeat(raw, 3, axis=2)
    if raw.ndim != 3 or raw.shape[2] != 3:
        raise ImageFormatError(f"{path}: unexpected decoded shape {raw.shape}")
    return from_bytes(raw)


def save_png(img: np.ndarray, path) -> None:
    """Write a canonical image as an 8-bit RGB PNG.

    The written file reloads to quantize(img).
    """
    raw = to_bytes(img)
    path = Path(path)
    try:
        PILImage.fromarray(raw, mode="RGB").save(path, format="PNG")
    except OSError as exc:
        raise OSError(f"cannot write PNG to {path}: {exc}") from exc


def crop(img: np.ndarray, top: int, left: int, h: int, w: int) -> np.ndarray:
    """Copy an exact sub-raster; the window must lie inside the image."""
    img = ensure_image(img)
    H, W = img.shape[:2]
    if h < 1 or w < 1:
        raise ValueError(f"crop window must be at least 1x1, got {h}x{w}")
    if top < 0 or left < 0 or top + h > H or left + w > W:
        raise ValueError(
            f"crop window ({top},{left})+{h}x{w} out of bounds for {H}x{W} image"
        )
    return img[top : top + h, left : left + w, :].copy()
