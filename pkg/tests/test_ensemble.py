"""Dihedral-group correctness and ensemble averaging."""

import numpy as np
import pytest

from srkit.ensemble import (
    ALL_TRANSFORMS,
    IDENTITY,
    ROTATIONS,
    TransformId,
    apply_transform,
    compose,
    fuse_outputs,
    inverse,
    invert_transform,
    self_ensemble,
)
from srkit.errors import DimensionMismatchError
from srkit.models import constant_model, identity_model, nearest_upscale, nearest_upscale_model


def _probe(shape=(4, 4, 3)):
    x = np.arange(np.prod(shape), dtype=np.float64).reshape(shape)
    return x / x.max()


def test_eight_distinct_elements():
    assert len(ALL_TRANSFORMS) == 8
    assert len(set(ALL_TRANSFORMS)) == 8
    assert ALL_TRANSFORMS[:4] == ROTATIONS
    assert ALL_TRANSFORMS[0] == IDENTITY


def test_identity_leaves_image_unchanged():
    img = _probe()
    assert np.array_equal(apply_transform(img, IDENTITY), img)


def test_rot90_four_times_is_identity():
    img = _probe((3, 5, 3))
    out = img
    for _ in range(4):
        out = apply_transform(out, TransformId(1, False))
    assert np.array_equal(out, img)


def test_rot90_permutation_oracle():
    # one clockwise quarter turn: (r, c) -> (c, H-1-r)
    h, w = 2, 3
    img = _probe((h, w, 3))
    out = apply_transform(img, TransformId(1, False))
    assert out.shape == (w, h, 3)
    for r in range(h):
        for c in range(w):
            assert np.array_equal(out[c, h - 1 - r], img[r, c])


@pytest.mark.parametrize("shape", [(4, 4, 3), (3, 5, 3)])
def test_exhaustive_composition_table(shape):
    img = _probe(shape)
    for t1 in ALL_TRANSFORMS:
        for t2 in ALL_TRANSFORMS:
            combined = compose(t1, t2)
            assert combined in ALL_TRANSFORMS  # closure
            assert np.array_equal(
                apply_transform(apply_transform(img, t1), t2),
                apply_transform(img, combined),
            )


def test_unique_inverses():
    img = _probe((3, 4, 3))
    seen = set()
    for t in ALL_TRANSFORMS:
        inv = inverse(t)
        assert compose(t, inv) == IDENTITY
        assert compose(inv, t) == IDENTITY
        assert np.array_equal(invert_transform(apply_transform(img, t), t), img)
        seen.add(inv)
    assert seen == set(ALL_TRANSFORMS)


def test_invalid_rotation_rejected():
    with pytest.raises(ValueError):
        TransformId(4, False)


# ---------------------------------------------------------------- ensemble


def test_equivariant_model_collapses_to_plain_output():
    rng = np.random.default_rng(0)
    model = nearest_upscale_model(2)
    for _ in range(3):
        img = rng.random((6, 9, 3))
        assert np.array_equal(self_ensemble(img, model), model(img))


def test_identity_subset_equals_model():
    rng = np.random.default_rng(1)
    img = rng.random((5, 7, 3))
    model = nearest_upscale_model(3)
    assert np.array_equal(self_ensemble(img, model, [IDENTITY]), model(img))


@pytest.mark.parametrize("subset", [ALL_TRANSFORMS, ROTATIONS, (IDENTITY,), ALL_TRANSFORMS[:2]])
def test_constant_model_averages_to_constant(subset):
    img = np.random.default_rng(2).random((4, 4, 3))
    out = self_ensemble(img, constant_model(0.25, scale=2), subset)
    assert out.shape == (8, 8, 3)
    assert np.all(out == 0.25)


def test_constant_model_odd_subset_size():
    img = np.random.default_rng(3).random((4, 4, 3))
    out = self_ensemble(img, constant_model(0.37), ALL_TRANSFORMS[:3])
    assert np.allclose(out, 0.37, atol=1e-15)


def test_subset_order_is_irrelevant_bitwise():
    rng = np.random.default_rng(4)
    img = rng.random((4, 6, 3))

    def noisy_model(x):
        local = np.random.default_rng(x.shape[0] * 1000 + x.shape[1])
        return np.clip(x + local.normal(0, 0.01, x.shape), 0, 1)

    subset = [ALL_TRANSFORMS[5], ALL_TRANSFORMS[1], ALL_TRANSFORMS[6]]
    a = self_ensemble(img, noisy_model, subset)
    b = self_ensemble(img, noisy_model, list(reversed(subset)))
    assert np.array_equal(a, b)


def test_empty_subset_rejected():
    with pytest.raises(ValueError, match="non-empty"):
        self_ensemble(np.zeros((4, 4, 3)), identity_model, [])


def test_dim_violation_names_the_transform():
    img = np.random.default_rng(5).random((5, 7, 3))

    def broken(x):
        return nearest_upscale(img, 2)  # ignores the transformed input dims

    with pytest.raises(DimensionMismatchError, match="rot=1"):
        self_ensemble(img, broken)


def test_scale_change_between_branches_detected():
    calls = []

    def flaky(x):
        calls.append(1)
        return nearest_upscale(x, 2 if len(calls) == 1 else 1)

    with pytest.raises(DimensionMismatchError, match="scale"):
        self_ensemble(np.zeros((4, 4, 3)), flaky, ALL_TRANSFORMS[:2])


# ---------------------------------------------------------------- fusion


def test_fuse_single_image_is_itself():
    img = np.random.default_rng(6).random((4, 4, 3))
    assert np.array_equal(fuse_outputs([img]), img)


def test_fuse_black_and_white():
    out = fuse_outputs([np.zeros((3, 3, 3)), np.ones((3, 3, 3))])
    assert np.all(out == 0.5)


@pytest.mark.parametrize("k", [2, 4, 8])
def test_fuse_k_copies_is_identity(k):
    img = np.random.default_rng(7).random((5, 5, 3))
    assert np.array_equal(fuse_outputs([img] * k), img)


def test_fuse_three_copies_within_ulp():
    img = np.random.default_rng(8).random((5, 5, 3))
    assert np.allclose(fuse_outputs([img] * 3), img, atol=1e-15)


def test_fuse_rejects_empty_and_mismatched():
    with pytest.raises(ValueError, match="empty"):
        fuse_outputs([])
    with pytest.raises(DimensionMismatchError):
        fuse_outputs([np.zeros((4, 4, 3)), np.zeros((4, 5, 3))])
