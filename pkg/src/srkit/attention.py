"""Forward-only reference math for two feature-recalibration blocks.

Feature maps are (C, H, W) float64 arrays. Nothing here trains; weights
come from a seeded initializer or a JSON container, and the point is to
validate structure (softmax gates summing to 1, sigmoid gates in (0,1),
symmetry) at desk scale.

Selective-kernel fusion (three-stream form): sum the streams, global
average pool, squeeze through a dense channel-downscaling map (rectifier
after it), expand back once per stream, softmax across streams per
channel, and recombine:

    U = s1 * L1 + s2 * L2 + s3 * L3

Dual attention: a channel branch (squeeze-excite: GAP, two dense maps,
sigmoid gate per channel) plus a spatial branch (channel-mean and
channel-max stacked, one 2-in/1-out convolution, sigmoid gate per pixel).
The branch outputs are summed and the input added back; the merge is a
documented choice, not part of the published block description.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.ndimage import correlate

from .augment import make_rng

WEIGHTS_SCHEMA_VERSION = 1
CHANNEL_REDUCTION = 8


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def ensure_feature_map(m: np.ndarray, name: str = "feature map") -> np.ndarray:
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 3:
        raise ValueError(f"{name}: expected (C, H, W), got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name}: contains non-finite values")
    return a


def gap(m: np.ndarray) -> np.ndarray:
    """Global average pool across the spatial dims: (C, H, W) -> (C,)."""
    m = ensure_feature_map(m)
    return m.mean(axis=(1, 2))


def _check_channels(channels: int) -> int:
    if channels < CHANNEL_REDUCTION or channels % CHANNEL_REDUCTION:
        raise ValueError(
            f"channels must be a positive multiple of {CHANNEL_REDUCTION}, got {channels}"
        )
    return channels // CHANNEL_REDUCTION


@dataclass
class SkffWeights:
    """Dense maps for fuse-and-select over three streams of C channels."""

    w_down: np.ndarray  # (r, C)
    b_down: np.ndarray  # (r,)
    w_up: np.ndarray  # (3, C, r)
    b_up: np.ndarray  # (3, C)

    @property
    def channels(self) -> int:
        return self.w_down.shape[1]

    def validate(self) -> "SkffWeights":
        r = _check_channels(self.channels)
        if self.w_down.shape != (r, self.channels):
            raise ValueError(f"w_down shape {self.w_down.shape}, expected {(r, self.channels)}")
        if self.b_down.shape != (r,):
            raise ValueError(f"b_down shape {self.b_down.shape}, expected {(r,)}")
        if self.w_up.shape != (3, self.channels, r):
            raise ValueError(f"w_up shape {self.w_up.shape}, expected {(3, self.channels, r)}")
        if self.b_up.shape != (3, self.channels):
            raise ValueError(f"b_up shape {self.b_up.shape}, expected {(3, self.channels)}")
        return self


@dataclass
class DauWeights:
    """Channel-attention dense maps plus the spatial-attention kernel."""

    ca_w1: np.ndarray  # (r, C)
    ca_b1: np.ndarray  # (r,)
    ca_w2: np.ndarray  # (C, r)
    ca_b2: np.ndarray  # (C,)
    sa_kernel: np.ndarray  # (2, k, k), k odd
    sa_bias: float

    @property
    def channels(self) -> int:
        return self.ca_w1.shape[1]

    def validate(self) -> "DauWeights":
        r = _check_channels(self.channels)
        if self.ca_w1.shape != (r, self.channels):
            raise ValueError(f"ca_w1 shape {self.ca_w1.shape}, expected {(r, self.channels)}")
        if self.ca_b1.shape != (r,):
            raise ValueError(f"ca_b1 shape {self.ca_b1.shape}, expected {(r,)}")
        if self.ca_w2.shape != (self.channels, r):
            raise ValueError(f"ca_w2 shape {self.ca_w2.shape}, expected {(self.channels, r)}")
        if self.ca_b2.shape != (self.channels,):
            raise ValueError(f"ca_b2 shape {self.ca_b2.shape}, expected {(self.channels,)}")
        if (
            self.sa_kernel.ndim != 3
            or self.sa_kernel.shape[0] != 2
            or self.sa_kernel.shape[1] != self.sa_kernel.shape[2]
            or self.sa_kernel.shape[1] % 2 == 0
        ):
            raise ValueError(
                f"sa_kernel must be (2, k, k) with odd k, got {self.sa_kernel.shape}"
            )
        return self


def init_skff_weights(channels: int, seed: int = 0) -> SkffWeights:
    r = _check_channels(channels)
    rng = make_rng(seed)
    return SkffWeights(
        w_down=rng.normal(0.0, 1.0 / np.sqrt(channels), size=(r, channels)),
        b_down=rng.normal(0.0, 0.1, size=(r,)),
        w_up=rng.normal(0.0, 1.0 / np.sqrt(r), size=(3, channels, r)),
        b_up=rng.normal(0.0, 0.1, size=(3, channels)),
    ).validate()


def init_dau_weights(channels: int, seed: int = 0, sa_kernel_size: int = 7) -> DauWeights:
    r = _check_channels(channels)
    rng = make_rng(seed)
    k = sa_kernel_size
    return DauWeights(
        ca_w1=rng.normal(0.0, 1.0 / np.sqrt(channels), size=(r, channels)),
        ca_b1=rng.normal(0.0, 0.1, size=(r,)),
        ca_w2=rng.normal(0.0, 1.0 / np.sqrt(r), size=(channels, r)),
        ca_b2=rng.normal(0.0, 0.1, size=(channels,)),
        sa_kernel=rng.normal(0.0, 1.0 / k, size=(2, k, k)),
        sa_bias=float(rng.normal(0.0, 0.1)),
    ).validate()


def skff_forward(
    l1: np.ndarray, l2: np.ndarray, l3: np.ndarray, w: SkffWeights
) -> np.ndarray:
    """Softmax-gated recalibration and sum of three same-shape streams."""
    l1 = ensure_feature_map(l1, "l1")
    l2 = ensure_feature_map(l2, "l2")
    l3 = ensure_feature_map(l3, "l3")
    if not (l1.shape == l2.shape == l3.shape):
        raise ValueError(
            f"streams must share a shape: {l1.shape}, {l2.shape}, {l3.shape}"
        )
    w.validate()
    if l1.shape[0] != w.channels:
        raise ValueError(f"streams have {l1.shape[0]} channels, weights {w.channels}")

    fused = l1 + l2 + l3
    s = gap(fused)
    z = _relu(w.w_down @ s + w.b_down)
    logits = np.einsum("scr,r->sc", w.w_up, z) + w.b_up  # (3, C)
    gates = skff_gates_from_logits(logits)
    return (
        gates[0][:, None, None] * l1
        + gates[1][:, None, None] * l2
        + gates[2][:, None, None] * l3
    )


def skff_gates_from_logits(logits: np.ndarray) -> np.ndarray:
    """Per-channel softmax across the stream axis of a (3, C) logit array."""
    shifted = logits - logits.max(axis=0, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=0, keepdims=True)


def skff_gates(l1, l2, l3, w: SkffWeights) -> np.ndarray:
    """The (3, C) softmax attention gates the forward pass would use."""
    l1 = ensure_feature_map(l1, "l1")
    fused = l1 + ensure_feature_map(l2, "l2") + ensure_feature_map(l3, "l3")
    z = _relu(w.w_down @ gap(fused) + w.b_down)
    logits = np.einsum("scr,r->sc", w.w_up, z) + w.b_up
    return skff_gates_from_logits(logits)


def dau_gates(m: np.ndarray, w: DauWeights):
    """(channel_gate (C,), spatial_gate (H, W)) the forward pass would use."""
    m = ensure_feature_map(m)
    w.validate()
    if m.shape[0] != w.channels:
        raise ValueError(f"feature map has {m.shape[0]} channels, weights {w.channels}")
    d = gap(m)
    channel_gate = _sigmoid(w.ca_w2 @ _relu(w.ca_w1 @ d + w.ca_b1) + w.ca_b2)
    pooled = np.stack([m.mean(axis=0), m.max(axis=0)])  # (2, H, W)
    conv = sum(
        correlate(pooled[c], w.sa_kernel[c], mode="constant", cval=0.0)
        for c in range(2)
    )
    spatial_gate = _sigmoid(conv + w.sa_bias)
    return channel_gate, spatial_gate


def dau_forward(m: np.ndarray, w: DauWeights) -> np.ndarray:
    """Channel branch + spatial branch, then the residual input added back."""
    m = ensure_feature_map(m)
    channel_gate, spatial_gate = dau_gates(m, w)
    m_ca = m * channel_gate[:, None, None]
    m_sa = m * spatial_gate[None, :, :]
    return m_ca + m_sa + m


def _to_lists(arr):
    return np.asarray(arr).tolist()


def save_weights(w, path) -> None:
    """Write SKFF or DAU weights as a JSON container."""
    if isinstance(w, SkffWeights):
        payload = {
            "schema_version": WEIGHTS_SCHEMA_VERSION,
            "kind": "skff",
            "channels": w.channels,
            "w_down": _to_lists(w.w_down),
            "b_down": _to_lists(w.b_down),
            "w_up": _to_lists(w.w_up),
            "b_up": _to_lists(w.b_up),
        }
    elif isinstance(w, DauWeights):
        payload = {
            "schema_version": WEIGHTS_SCHEMA_VERSION,
            "kind": "dau",
            "channels": w.channels,
            "ca_w1": _to_lists(w.ca_w1),
            "ca_b1": _to_lists(w.ca_b1),
            "ca_w2": _to_lists(w.ca_w2),
            "ca_b2": _to_lists(w.ca_b2),
            "sa_kernel": _to_lists(w.sa_kernel),
            "sa_bias": w.sa_bias,
        }
    else:
        raise TypeError(f"cannot serialize weights of type {type(w).__name__}")
    Path(path).write_text(json.dumps(payload) + "\n")


def load_weights(path):
    """Read a JSON weight container back into SkffWeights or DauWeights."""
    d = json.loads(Path(path).read_text())
    kind = d.get("kind")
    if kind == "skff":
        return SkffWeights(
            w_down=np.asarray(d["w_down"], dtype=np.float64),
            b_down=np.asarray(d["b_down"], dtype=np.float64),
            w_up=np.asarray(d["w_up"], dtype=np.float64),
            b_up=np.asarray(d["b_up"], dtype=np.float64),
        ).validate()
    if kind == "dau":
        return DauWeights(
            ca_w1=np.asarray(d["ca_w1"], dtype=np.float64),
            ca_b1=np.asarray(d["ca_b1"], dtype=np.float64),
            ca_w2=np.asarray(d["ca_w2"], dtype=np.float64),
            ca_b2=np.asarray(d["ca_b2"], dtype=np.float64),
            sa_kernel=np.asarray(d["sa_kernel"], dtype=np.float64),
            sa_bias=float(d["sa_bias"]),
        ).validate()
    raise ValueError(f"{path}: unknown weight container kind {kind!r}")
