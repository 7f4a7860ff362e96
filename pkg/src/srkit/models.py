"""Reference models and the external-command model adapter.

The toolkit never trains anything; these exist so the ensemble and tiling
machinery can be driven, tested and demonstrated. command_model wraps any
executable that turns an input PNG path into an output PNG path, which is
how real checkpointed networks plug into the CLI without the toolkit
taking a framework dependency.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
from pathlib import Path

import numpy as np
from scipy.ndimage import uniform_filter

from .ensemble import ModelFn
from .image import ensure_image, load_png, save_png


def nearest_upscale(img: np.ndarray, factor: int) -> np.ndarray:
    """Integer-factor nearest-neighbor upsampling via sample repetition."""
    if factor < 1:
        raise ValueError(f"factor must be >= 1, got {factor}")
    return np.repeat(np.repeat(img, factor, axis=0), factor, axis=1)


def box_downsample(img: np.ndarray, factor: int) -> np.ndarray:
    """Integer-factor box-mean downsampling; dims must be divisible."""
    h, w = img.shape[:2]
    if factor < 1:
        raise ValueError(f"factor must be >= 1, got {factor}")
    if h % factor or w % factor:
        raise ValueError(f"dims {h}x{w} not divisible by factor {factor}")
    return img.reshape(h // factor, factor, w // factor, factor, 3).mean(axis=(1, 3))


def identity_model(img: np.ndarray) -> np.ndarray:
    return np.array(img, dtype=np.float64, copy=True)


def nearest_upscale_model(factor: int) -> ModelFn:
    return lambda img: nearest_upscale(img, factor)


def constant_model(value: float, scale: int = 1) -> ModelFn:
    def run(img: np.ndarray) -> np.ndarray:
        h, w = img.shape[:2]
        return np.full((h * scale, w * scale, 3), value, dtype=np.float64)

    return run


def box_blur_model(radius: int) -> ModelFn:
    """(2r+1)-square zero-padded box blur; a scale-1, r-local operator."""

    def run(img: np.ndarray) -> np.ndarray:
        out = np.empty_like(img, dtype=np.float64)
        for c in range(3):
            out[:, :, c] = uniform_filter(
                img[:, :, c], size=2 * radius + 1, mode="constant", cval=0.0
            )
        return np.clip(out, 0.0, 1.0)

    return run


def command_model(cmd, expected_scale: int | None = None) -> ModelFn:
    """Wrap `<cmd> <in.png> <out.png>` as a model.

    cmd may be a shell-style string or an argument list. Each call round-trips
    through 8-bit PNG files in a fresh temporary directory, so the external
    model sees exactly what it would see in a submission pipeline.
    """
    args = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
    if not args:
        raise ValueError("empty model command")

    def run(img: np.ndarray) -> np.ndarray:
        img = ensure_image(img)
        with tempfile.TemporaryDirectory(prefix="srkit-model-") as td:
            in_path = Path(td) / "in.png"
            out_path = Path(td) / "out.png"
            save_png(img, in_path)
            proc = subprocess.run(
                args + [str(in_path), str(out_path)],
                capture_output=True,
                text=True,
            )
            if proc.returncode != 0:
                raise RuntimeError(
                    f"model command failed ({proc.returncode}): "
                    f"{proc.stderr.strip() or proc.stdout.strip()}"
                )
            if not out_path.exists():
                raise RuntimeError(f"model command produced no output at {out_path}")
            out = load_png(out_path)
        if expected_scale is not None:
            h, w = img.shape[:2]
            if out.shape[:2] != (h * expected_scale, w * expected_scale):
                raise ValueError(
                    f"model output {out.shape[:2]} does not match scale "
                    f"{expected_scale} for input {h}x{w}"
                )
        return out

    return run
