"""Paired augmentation semantics, alignment and replayability."""

import numpy as np
import pytest

from srkit.augment import OPS, AugSpec, augment_pair, make_rng, sample_rect
from srkit.errors import DimensionMismatchError
from srkit.models import box_downsample, nearest_upscale


def make_pair(seed=0, lr_size=(12, 16), scale=2):
    rng = np.random.default_rng(seed)
    lr = rng.random((*lr_size, 3))
    hr = rng.random((lr_size[0] * scale, lr_size[1] * scale, 3))
    return lr, hr


def make_partner(seed=100, lr_size=(12, 16), scale=2):
    return make_pair(seed, lr_size, scale)


# ---------------------------------------------------------------- identity params


def test_mixup_lambda_one_is_noop():
    lr, hr = make_pair()
    other = make_partner()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("mixup", mix_lambda=1.0), other)
    assert np.array_equal(out_lr, lr) and np.array_equal(out_hr, hr)


def test_identity_permutation_is_noop():
    lr, hr = make_pair()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("rgb_perm", channel_perm=(0, 1, 2)))
    assert np.array_equal(out_lr, lr) and np.array_equal(out_hr, hr)


def test_blend_lambda_one_is_noop():
    lr, hr = make_pair()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("blend", mix_lambda=1.0))
    assert np.array_equal(out_lr, lr) and np.array_equal(out_hr, hr)


@pytest.mark.parametrize("op", ["cutout", "cutmix", "cutmixup", "cutblur"])
def test_zero_area_rect_is_noop(op):
    lr, hr = make_pair()
    other = make_partner()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec(op, rect_ratio=0.0), other)
    assert np.array_equal(out_lr, lr) and np.array_equal(out_hr, hr)


# ---------------------------------------------------------------- op semantics


def test_cutmix_full_rect_returns_partner():
    lr, hr = make_pair()
    other = make_partner()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("cutmix", rect_ratio=1.0), other)
    assert np.array_equal(out_lr, other[0]) and np.array_equal(out_hr, other[1])


def test_mixup_blends_both_members():
    lr, hr = make_pair()
    other = make_partner()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("mixup", mix_lambda=0.25), other)
    assert np.allclose(out_lr, 0.25 * lr + 0.75 * other[0], atol=1e-15)
    assert np.allclose(out_hr, 0.25 * hr + 0.75 * other[1], atol=1e-15)


def test_cutout_zeroes_lr_only():
    lr, hr = make_pair()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec("cutout", rect_ratio=0.3, seed=5))
    assert np.array_equal(out_hr, hr)
    mask = np.any(out_lr != lr, axis=2)
    assert mask.any()
    assert np.all(out_lr[mask] == 0.0)


def test_cutout_mean_fill():
    lr, hr = make_pair()
    spec = AugSpec("cutout", rect_ratio=0.3, cutout_fill="mean", seed=5)
    out_lr, _ = augment_pair(lr, hr, spec)
    mask = np.any(out_lr != lr, axis=2)
    assert np.allclose(out_lr[mask], lr.mean(axis=(0, 1)), atol=1e-15)


def test_rect_alignment_between_members():
    # the HR-side rectangle must be exactly scale x the LR-side rectangle
    scale = 3
    lr, hr = make_pair(lr_size=(10, 14), scale=scale)
    zero = (np.zeros_like(lr), np.zeros_like(hr))
    spec = AugSpec("cutmix", rect_ratio=0.25, seed=11)
    out_lr, out_hr = augment_pair(lr, hr, spec, zero)
    lr_rows = np.nonzero(np.any(out_lr != lr, axis=(1, 2)))[0]
    lr_cols = np.nonzero(np.any(out_lr != lr, axis=(0, 2)))[0]
    hr_rows = np.nonzero(np.any(out_hr != hr, axis=(1, 2)))[0]
    hr_cols = np.nonzero(np.any(out_hr != hr, axis=(0, 2)))[0]
    assert hr_rows[0] == lr_rows[0] * scale
    assert hr_rows[-1] == lr_rows[-1] * scale + scale - 1
    assert hr_cols[0] == lr_cols[0] * scale
    assert hr_cols[-1] == lr_cols[-1] * scale + scale - 1


def test_cutmixup_blends_inside_rect_only():
    lr, hr = make_pair()
    other = make_partner()
    spec = AugSpec("cutmixup", rect_ratio=0.25, mix_lambda=0.5, seed=3)
    out_lr, out_hr = augment_pair(lr, hr, spec, other)
    mask = np.any(out_lr != lr, axis=2)
    assert mask.any()
    blended = 0.5 * lr + 0.5 * other[0]
    assert np.allclose(out_lr[mask], blended[mask], atol=1e-15)
    assert np.array_equal(out_lr[~mask], lr[~mask])


def test_cutblur_pastes_between_resolutions():
    lr, hr = make_pair(lr_size=(8, 8), scale=2)
    spec = AugSpec("cutblur", rect_ratio=0.4, seed=2)
    out_lr, out_hr = augment_pair(lr, hr, spec)
    lr_changed = not np.array_equal(out_lr, lr)
    hr_changed = not np.array_equal(out_hr, hr)
    assert lr_changed != hr_changed  # exactly one side is modified
    if hr_changed:
        up = nearest_upscale(lr, 2)
        mask = np.any(out_hr != hr, axis=2)
        assert np.array_equal(out_hr[mask], up[mask])
    else:
        down = box_downsample(hr, 2)
        mask = np.any(out_lr != lr, axis=2)
        assert np.array_equal(out_lr[mask], down[mask])


def test_rgb_perm_applies_same_permutation():
    lr, hr = make_pair()
    spec = AugSpec("rgb_perm", channel_perm=(2, 0, 1))
    out_lr, out_hr = augment_pair(lr, hr, spec)
    assert np.array_equal(out_lr, lr[:, :, [2, 0, 1]])
    assert np.array_equal(out_hr, hr[:, :, [2, 0, 1]])


def test_blend_mixes_with_constant_color():
    lr, hr = make_pair()
    spec = AugSpec("blend", mix_lambda=0.6, blend_color=(1.0, 0.0, 0.5))
    out_lr, out_hr = augment_pair(lr, hr, spec)
    color = np.array([1.0, 0.0, 0.5])
    assert np.allclose(out_lr, 0.6 * lr + 0.4 * color, atol=1e-15)
    assert np.allclose(out_hr, 0.6 * hr + 0.4 * color, atol=1e-15)


@pytest.mark.parametrize("op", ["hflip", "vflip", "rot90"])
def test_geometric_ops_act_identically(op):
    lr, hr = make_pair()
    out_lr, out_hr = augment_pair(lr, hr, AugSpec(op))
    ref = {
        "hflip": lambda a: a[:, ::-1],
        "vflip": lambda a: a[::-1, :],
        "rot90": lambda a: np.rot90(a, axes=(0, 1)),
    }[op]
    assert np.array_equal(out_lr, ref(lr))
    assert np.array_equal(out_hr, ref(hr))


@pytest.mark.parametrize("op", OPS)
def test_every_op_preserves_alignment_and_range(op):
    lr, hr = make_pair(lr_size=(10, 10), scale=2)
    other = make_partner(lr_size=(10, 10), scale=2)
    spec = AugSpec(op, mix_lambda=0.5, rect_ratio=0.3, seed=9)
    out_lr, out_hr = augment_pair(lr, hr, spec, other)
    assert out_hr.shape[0] == 2 * out_lr.shape[0]
    assert out_hr.shape[1] == 2 * out_lr.shape[1]
    assert out_lr.min() >= 0.0 and out_lr.max() <= 1.0
    assert out_hr.min() >= 0.0 and out_hr.max() <= 1.0


# ---------------------------------------------------------------- determinism


def test_same_seed_replays_identically():
    lr, hr = make_pair()
    other = make_partner()
    spec = AugSpec("cutmix", rect_ratio=0.3, seed=77)
    a = augment_pair(lr, hr, spec, other)
    b = augment_pair(lr, hr, spec, other)
    assert a[0].tobytes() == b[0].tobytes()
    assert a[1].tobytes() == b[1].tobytes()


def test_spec_json_round_trip_replays():
    lr, hr = make_pair()
    other = make_partner()
    spec = AugSpec("cutmixup", rect_ratio=0.4, mix_lambda=0.3, seed=13)
    replay = AugSpec.from_json(spec.to_json())
    assert replay == spec
    a = augment_pair(lr, hr, spec, other)
    b = augment_pair(lr, hr, replay, other)
    assert a[0].tobytes() == b[0].tobytes()
    assert a[1].tobytes() == b[1].tobytes()


def test_different_seeds_differ():
    rects = {
        seed: sample_rect(make_rng(seed), 100, 100, 0.2) for seed in range(8)
    }
    assert len(set(rects.values())) > 1


def test_make_rng_determinism_and_worker_streams():
    a = make_rng(42).random(5)
    b = make_rng(42).random(5)
    c = make_rng(42, worker=1).random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_rect_sampler_bounds():
    rng = make_rng(0)
    for _ in range(200):
        top, left, h, w = sample_rect(rng, 30, 50, 0.25)
        assert 0 <= top and top + h <= 30
        assert 0 <= left and left + w <= 50
        assert h >= 1 and w >= 1
    assert sample_rect(rng, 30, 50, 0.0) is None
    assert sample_rect(rng, 30, 50, 1.0) == (0, 0, 30, 50)


# ---------------------------------------------------------------- errors


def test_mix_ops_require_partner():
    lr, hr = make_pair()
    with pytest.raises(ValueError, match="partner"):
        augment_pair(lr, hr, AugSpec("mixup", mix_lambda=0.5))


def test_partner_dims_must_match():
    lr, hr = make_pair()
    other = make_partner(lr_size=(6, 6))
    with pytest.raises(DimensionMismatchError, match="partner"):
        augment_pair(lr, hr, AugSpec("cutmix", rect_ratio=0.5), other)


def test_pair_scale_must_be_integer():
    lr = np.zeros((10, 10, 3))
    hr = np.zeros((15, 15, 3))
    with pytest.raises(DimensionMismatchError, match="multiple"):
        augment_pair(lr, hr, AugSpec("hflip"))


def test_spec_validation():
    with pytest.raises(ValueError, match="op"):
        AugSpec("sharpen")
    with pytest.raises(ValueError, match="mix_lambda"):
        AugSpec("mixup", mix_lambda=1.5)
    with pytest.raises(ValueError, match="rect_ratio"):
        AugSpec("cutout", rect_ratio=-0.1)
    with pytest.raises(ValueError, match="channel_perm"):
        AugSpec("rgb_perm", channel_perm=(0, 0, 1))
    with pytest.raises(ValueError, match="blend_color"):
        AugSpec("blend", blend_color=(2.0, 0.0, 0.0))
    with pytest.raises(ValueError, match="cutout_fill"):
        AugSpec("cutout", cutout_fill="noise")
