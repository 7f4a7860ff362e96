"""Deterministic overlap-tiled inference.

The image is carved into a stride-equals-core grid: core regions are the
exact partition [k*core, (k+1)*core) clipped at the image edge, and each
core gets a full-size window centered on it where possible, clamped so no
window ever leaves the image (models dislike synthetic borders, so edges
shift the window inward instead of padding). Tile outputs contribute only
their scaled core region when stitched, which kills seam artifacts: each
output pixel comes from exactly one tile.

A 380-wide axis with window 80 / core 60 yields 7 tiles; 192 with window
120 / core 110 yields 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ensemble import ModelFn
from .errors import DimensionMismatchError
from .image import ensure_image


@dataclass(frozen=True)
class Rect:
    top: int
    left: int
    height: int
    width: int

    @property
    def bottom(self) -> int:
        return self.top + self.height

    @property
    def right(self) -> int:
        return self.left + self.width

    def scaled(self, s: int) -> "Rect":
        return Rect(self.top * s, self.left * s, self.height * s, self.width * s)


@dataclass(frozen=True)
class Tile:
    """One window: where it reads (src), which part of it survives (core
    relative to the window), and where that part lands (dst, LR coords)."""

    src: Rect
    core_in_window: Rect
    dst: Rect


@dataclass(frozen=True)
class TileGrid:
    height: int
    width: int
    window: int
    core: int
    scale: int
    tiles: tuple


def _axis_schedule(length: int, window: int, core: int) -> list[tuple[int, int, int]]:
    """(window_start, core_start, core_length) runs along one axis."""
    n = math.ceil(length / core)
    margin = (window - core) // 2
    out = []
    for k in range(n):
        core_start = k * core
        core_len = min(core, length - core_start)
        win_start = min(max(core_start - margin, 0), length - window)
        out.append((win_start, core_start, core_len))
    return out


def plan_tiles(h: int, w: int, window: int, core: int, scale: int) -> TileGrid:
    """Row-major overlap-tile plan whose core rects partition the image."""
    if core <= 0:
        raise ValueError(f"core must be positive, got {core}")
    if core > window:
        raise ValueError(f"core {core} exceeds window {window}")
    if window > min(h, w):
        raise ValueError(f"window {window} larger than image {h}x{w}")
    if scale not in (1, 2, 3, 4):
        raise ValueError(f"scale must be 1, 2, 3 or 4, got {scale}")

    rows = _axis_schedule(h, window, core)
    cols = _axis_schedule(w, window, core)
    tiles = []
    for wy, cy, ch in rows:
        for wx, cx, cw in cols:
            src = Rect(wy, wx, window, window)
            dst = Rect(cy, cx, ch, cw)
            rel = Rect(cy - wy, cx - wx, ch, cw)
            tiles.append(Tile(src=src, core_in_window=rel, dst=dst))
    return TileGrid(height=h, width=w, window=window, core=core, scale=scale,
                    tiles=tuple(tiles))


def extract_tiles(img: np.ndarray, grid: TileGrid) -> list[np.ndarray]:
    img = ensure_image(img)
    if img.shape[:2] != (grid.height, grid.width):
        raise DimensionMismatchError(
            f"image {img.shape[:2]} does not match grid {grid.height}x{grid.width}"
        )
    return [
        img[t.src.top : t.src.bottom, t.src.left : t.src.right, :].copy()
        for t in grid.tiles
    ]


def stitch(grid: TileGrid, tiles: Sequence[np.ndarray]) -> np.ndarray:
    """Assemble model outputs: every output pixel comes from one tile's core."""
    if len(tiles) != len(grid.tiles):
        raise DimensionMismatchError(
            f"expected {len(grid.tiles)} tiles, got {len(tiles)}"
        )
    s = grid.scale
    expected = (grid.window * s, grid.window * s)
    out = np.empty((grid.height * s, grid.width * s, 3), dtype=np.float64)
    for i, (tile, spec) in enumerate(zip(tiles, grid.tiles)):
        tile = np.asarray(tile, dtype=np.float64)
        if tile.shape[:2] != expected:
            raise DimensionMismatchError(
                f"tile {i}: shape {tile.shape[:2]}, expected {expected}"
            )
        rel = spec.core_in_window.scaled(s)
        dst = spec.dst.scaled(s)
        out[dst.top : dst.bottom, dst.left : dst.right, :] = tile[
            rel.top : rel.bottom, rel.left : rel.right, :
        ]
    return out


def tiled_apply(
    img: np.ndarray,
    model: ModelFn,
    window: int,
    core: int,
    scale: int | None = None,
) -> np.ndarray:
    """Run a model tile by tile and stitch the cores back together.

    When scale is None it is inferred from the first tile's output.
    """
    img = ensure_image(img)
    h, w = img.shape[:2]
    plan = plan_tiles(h, w, window, core, scale if scale is not None else 1)
    crops = extract_tiles(img, plan)
    outputs = []
    inferred = scale
    for i, c in enumerate(crops):
        out = model(c)
        out = ensure_image(out, f"model output for tile {i}")
        oh, ow = out.shape[:2]
        if oh % window or ow % window or oh // window != ow // window:
            raise DimensionMismatchError(
                f"tile {i}: output {oh}x{ow} is not an integer multiple of the "
                f"{window}x{window} window"
            )
        s = oh // window
        if inferred is None:
            inferred = s
        elif s != inferred:
            raise DimensionMismatchError(
                f"tile {i}: scale {s} differs from expected {inferred}"
            )
        outputs.append(out)
    final = plan_tiles(h, w, window, core, inferred)
    return stitch(final, outputs)
