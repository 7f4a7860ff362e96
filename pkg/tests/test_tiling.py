"""Tile planning, partition coverage, stitching and locality bounds."""

import numpy as np
import pytest

from srkit.errors import DimensionMismatchError
from srkit.models import box_blur_model, identity_model, nearest_upscale, nearest_upscale_model
from srkit.tiling import extract_tiles, plan_tiles, stitch, tiled_apply


def coverage_map(grid):
    cover = np.zeros((grid.height, grid.width), dtype=int)
    for t in grid.tiles:
        cover[t.dst.top : t.dst.bottom, t.dst.left : t.dst.right] += 1
    return cover


def test_single_tile_when_window_covers_image():
    grid = plan_tiles(64, 64, 64, 64, 1)
    assert len(grid.tiles) == 1
    t = grid.tiles[0]
    assert (t.src.top, t.src.left, t.src.height, t.src.width) == (0, 0, 64, 64)
    assert (t.dst.height, t.dst.width) == (64, 64)


def test_published_geometry_80_60_on_380():
    grid = plan_tiles(380, 380, 80, 60, 2)
    assert len(grid.tiles) == 49  # 7 x 7
    cover = coverage_map(grid)
    assert cover.min() == 1 and cover.max() == 1


def test_published_geometry_120_110_on_192():
    grid = plan_tiles(192, 192, 120, 110, 4)
    assert len(grid.tiles) == 4  # 2 x 2
    cover = coverage_map(grid)
    assert cover.min() == 1 and cover.max() == 1


@pytest.mark.parametrize(
    "h, w, window, core",
    [(100, 73, 32, 20), (64, 64, 17, 17), (50, 90, 48, 13), (33, 41, 33, 30)],
)
def test_partition_and_containment_properties(h, w, window, core):
    grid = plan_tiles(h, w, window, core, 1)
    cover = coverage_map(grid)
    assert cover.min() == 1 and cover.max() == 1  # exact partition
    for t in grid.tiles:
        # windows stay in bounds
        assert 0 <= t.src.top and t.src.bottom <= h
        assert 0 <= t.src.left and t.src.right <= w
        assert (t.src.height, t.src.width) == (window, window)
        # core is inside its window
        assert t.src.top <= t.dst.top and t.dst.bottom <= t.src.bottom
        assert t.src.left <= t.dst.left and t.dst.right <= t.src.right
        # relative rect consistent with absolute rects
        assert t.core_in_window.top == t.dst.top - t.src.top
        assert t.core_in_window.left == t.dst.left - t.src.left


def test_planning_is_deterministic():
    assert plan_tiles(380, 380, 80, 60, 2) == plan_tiles(380, 380, 80, 60, 2)


def test_plan_rejects_bad_arguments():
    with pytest.raises(ValueError, match="larger than image"):
        plan_tiles(64, 64, 80, 60, 2)
    with pytest.raises(ValueError, match="positive"):
        plan_tiles(64, 64, 32, 0, 2)
    with pytest.raises(ValueError, match="exceeds"):
        plan_tiles(64, 64, 32, 40, 2)
    with pytest.raises(ValueError, match="scale"):
        plan_tiles(64, 64, 32, 24, 5)


@pytest.mark.parametrize("window, core", [(80, 60), (80, 80), (64, 37)])
def test_identity_model_round_trip_bit_exact(window, core):
    rng = np.random.default_rng(0)
    img = rng.random((133, 97, 3))
    w = min(window, 97)
    c = min(core, w)
    out = tiled_apply(img, identity_model, w, c, scale=1)
    assert np.array_equal(out, img)


def test_tiles_painted_with_index_match_dst_rects():
    grid = plan_tiles(60, 50, 20, 14, 1)
    shade = [np.full((20, 20, 3), i / len(grid.tiles)) for i in range(len(grid.tiles))]
    out = stitch(grid, shade)
    for i, t in enumerate(grid.tiles):
        block = out[t.dst.top : t.dst.bottom, t.dst.left : t.dst.right, :]
        assert np.all(block == i / len(grid.tiles))


def test_pixelwise_model_commutes_with_tiling():
    rng = np.random.default_rng(1)
    img = rng.random((70, 90, 3))

    def gamma(x):
        return x**2

    assert np.array_equal(tiled_apply(img, gamma, 32, 20, scale=1), gamma(img))


def test_constant_model_gives_constant_output():
    from srkit.models import constant_model

    img = np.random.default_rng(9).random((50, 70, 3))
    out = tiled_apply(img, constant_model(0.625, scale=2), 32, 20, scale=2)
    assert out.shape == (100, 140, 3)
    assert np.all(out == 0.625)


def test_nearest_upscale_commutes_with_tiling():
    rng = np.random.default_rng(2)
    img = rng.random((96, 64, 3))
    model = nearest_upscale_model(2)
    out = tiled_apply(img, model, 32, 24, scale=2)
    assert np.array_equal(out, nearest_upscale(img, 2))


def test_scaled_output_dims():
    rng = np.random.default_rng(3)
    img = rng.random((380, 380, 3))
    out = tiled_apply(img, nearest_upscale_model(2), 80, 60, scale=2)
    assert out.shape == (760, 760, 3)


def test_blur_locality_bound_holds_and_is_tight():
    rng = np.random.default_rng(4)
    img = rng.random((96, 96, 3))
    window, core = 32, 24
    margin = (window - core) // 2  # 4

    inside = box_blur_model(margin)
    whole = inside(img)
    tiled = tiled_apply(img, inside, window, core, scale=1)
    assert np.allclose(tiled, whole, atol=1e-12)

    beyond = box_blur_model(margin + 1)
    whole2 = beyond(img)
    tiled2 = tiled_apply(img, beyond, window, core, scale=1)
    assert not np.allclose(tiled2, whole2, atol=1e-12)


def test_scale_inference():
    rng = np.random.default_rng(5)
    img = rng.random((48, 48, 3))
    out = tiled_apply(img, nearest_upscale_model(3), 16, 12)  # scale omitted
    assert out.shape == (144, 144, 3)
    assert np.array_equal(out, nearest_upscale(img, 3))


def test_stitch_rejects_wrong_tile_count_and_dims():
    grid = plan_tiles(40, 40, 16, 12, 1)
    tiles = [np.zeros((16, 16, 3))] * (len(grid.tiles) - 1)
    with pytest.raises(DimensionMismatchError, match="tiles"):
        stitch(grid, tiles)
    tiles = [np.zeros((8, 8, 3))] * len(grid.tiles)
    with pytest.raises(DimensionMismatchError, match="tile 0"):
        stitch(grid, tiles)


def test_extract_tiles_needs_matching_image():
    grid = plan_tiles(40, 40, 16, 12, 1)
    with pytest.raises(DimensionMismatchError):
        extract_tiles(np.zeros((30, 40, 3)), grid)


def test_inconsistent_model_scale_detected():
    calls = []

    def flaky(x):
        calls.append(1)
        return nearest_upscale(x, 1 if len(calls) > 1 else 2)

    with pytest.raises(DimensionMismatchError, match="scale"):
        tiled_apply(np.zeros((40, 40, 3)), flaky, 16, 12)
