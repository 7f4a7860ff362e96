"""Composite loss arithmetic and its preset weight table."""

import numpy as np
import pytest

from srkit.errors import DimensionMismatchError
from srkit.losses import (
    LossWeights,
    composite_from_terms,
    composite_loss,
    l1_distance,
    ms_ssim_loss,
    ssim_loss,
)
from srkit.metrics import ms_ssim, ssim


def test_l1_trivial_cases():
    zeros = np.zeros((4, 4, 3))
    ones = np.ones((4, 4, 3))
    assert l1_distance(zeros, zeros) == 0.0
    assert l1_distance(ones, zeros) == 1.0


def test_l1_half_pixels_differ():
    x = np.zeros((4, 4, 3))
    y = x.copy()
    y[:2, :, :] = 0.5  # half the samples off by 0.5
    assert l1_distance(x, y) == pytest.approx(0.25, abs=1e-15)


def test_l1_pixel_scale():
    rng = np.random.default_rng(0)
    x, y = rng.random((4, 4, 3)), rng.random((4, 4, 3))
    assert l1_distance(x, y, pixel_scale=255.0) == pytest.approx(
        255.0 * l1_distance(x, y), rel=1e-12
    )


def test_l1_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        l1_distance(np.zeros((4, 4, 3)), np.zeros((5, 4, 3)))


def test_ssim_losses_zero_on_identical():
    img = np.random.default_rng(1).random((176, 176, 3))
    assert ssim_loss(img, img) == 0.0
    assert ms_ssim_loss(img, img) == pytest.approx(0.0, abs=1e-12)


def test_ssim_loss_range():
    rng = np.random.default_rng(2)
    for _ in range(5):
        a = rng.random((16, 16, 3))
        b = rng.random((16, 16, 3))
        assert 0.0 <= ssim_loss(a, b) <= 2.0


def test_losses_match_metrics_module():
    rng = np.random.default_rng(3)
    a = rng.random((176, 176, 3))
    b = np.clip(a + rng.normal(0, 0.08, a.shape), 0, 1)
    assert ssim_loss(a, b) == pytest.approx(1.0 - ssim(a, b), abs=1e-12)
    assert ms_ssim_loss(a, b) == pytest.approx(1.0 - ms_ssim(a, b), abs=1e-12)


def test_preset_table():
    oppo = LossWeights.preset("oppo")
    assert (oppo.alpha, oppo.beta, oppo.gamma) == (1.0, 0.2, 0.2)
    v2 = LossWeights.preset("inception_v2")
    assert (v2.alpha, v2.beta, v2.gamma) == (0.16, 0.84, 0.0)
    v3 = LossWeights.preset("inception_v3")
    assert (v3.alpha, v3.beta, v3.gamma) == (0.01, 0.84, 0.15)
    with pytest.raises(ValueError, match="preset"):
        LossWeights.preset("nonsense")
    with pytest.raises(ValueError, match="mode"):
        LossWeights(1.0, 0.0, 0.0, mode="bogus")


def test_oppo_stubbed_arithmetic():
    # L1=0.1, ssim_loss=0.2, ms_ssim_loss=0.3 -> 0.1 + 0.2*0.3 + 0.2*0.2 = 0.2
    w = LossWeights.preset("oppo")
    assert composite_from_terms(w, 0.1, 0.3, ssim_term=0.2) == pytest.approx(0.2)


def test_composite_linear_in_each_term():
    w = LossWeights.preset("inception_v3")
    base = composite_from_terms(w, 0.1, 0.2, vgg_term=0.3)
    assert composite_from_terms(w, 0.2, 0.2, vgg_term=0.3) - base == pytest.approx(
        w.alpha * 0.1
    )
    assert composite_from_terms(w, 0.1, 0.4, vgg_term=0.3) - base == pytest.approx(
        w.beta * 0.2
    )
    assert composite_from_terms(w, 0.1, 0.2, vgg_term=0.6) - base == pytest.approx(
        w.gamma * 0.3
    )


def test_composite_zero_on_identical_without_vgg():
    img = np.random.default_rng(4).random((176, 176, 3))
    for mode in ("oppo", "inception_v1", "inception_v2"):
        assert composite_loss(img, img, LossWeights.preset(mode)) == pytest.approx(
            0.0, abs=1e-12
        )


def test_inception_v2_reduces_to_two_terms():
    rng = np.random.default_rng(5)
    a = rng.random((176, 176, 3))
    b = np.clip(a + rng.normal(0, 0.05, a.shape), 0, 1)
    w = LossWeights.preset("inception_v2")
    expected = 0.16 * l1_distance(a, b) + 0.84 * ms_ssim_loss(a, b)
    assert composite_loss(a, b, w) == pytest.approx(expected, abs=1e-12)


def test_oppo_total_on_images():
    rng = np.random.default_rng(6)
    a = rng.random((176, 176, 3))
    b = np.clip(a + rng.normal(0, 0.05, a.shape), 0, 1)
    expected = l1_distance(a, b) + 0.2 * ms_ssim_loss(a, b) + 0.2 * ssim_loss(a, b)
    assert composite_loss(a, b, LossWeights.preset("oppo")) == pytest.approx(
        expected, abs=1e-12
    )


def test_missing_vgg_term_errors():
    img = np.zeros((176, 176, 3))
    with pytest.raises(ValueError, match="vgg_term"):
        composite_loss(img, img, LossWeights.preset("inception_v3"))


def test_vgg_term_applied():
    img = np.random.default_rng(7).random((176, 176, 3))
    w = LossWeights.preset("inception_v3")
    assert composite_loss(img, img, w, vgg_term=2.0) == pytest.approx(
        0.15 * 2.0, abs=1e-12
    )
