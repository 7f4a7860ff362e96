"""Desk-scale forwards through the two attention blocks.

Fuse-and-select: three feature streams are summed, pooled, squeezed
through a bottleneck, and re-expanded into per-channel softmax gates that
recombine the streams. Dual attention: a per-channel sigmoid gate (from
global pooling) plus a per-pixel sigmoid gate (from stacked channel
mean/max), branches summed with a residual.
"""

import numpy as np

from srkit import (
    dau_forward,
    dau_gates,
    init_dau_weights,
    init_skff_weights,
    skff_forward,
    skff_gates,
)
from srkit.augment import make_rng

C = 32
rng = make_rng(6)
l1, l2, l3 = (rng.normal(size=(C, 8, 8)) for _ in range(3))

w = init_skff_weights(C, seed=0)
gates = skff_gates(l1, l2, l3, w)
fused = skff_forward(l1, l2, l3, w)
print("fuse-and-select")
print(f"  gate matrix shape: {gates.shape} (streams x channels)")
print(f"  per-channel gate sums: max |sum - 1| = {np.abs(gates.sum(axis=0) - 1).max():.2e}")
print(f"  mean gate per stream: {gates.mean(axis=1).round(3)}")
print(f"  fused output shape: {fused.shape}")

m = rng.normal(size=(C, 8, 8))
dw = init_dau_weights(C, seed=1)
cg, sg = dau_gates(m, dw)
out = dau_forward(m, dw)
print("\ndual attention")
print(f"  channel gate range: ({cg.min():.3f}, {cg.max():.3f})")
print(f"  spatial gate range: ({sg.min():.3f}, {sg.max():.3f})")
print(f"  signs preserved: {bool(np.all(np.sign(out) == np.sign(m)))}")
print(f"  zero input stays zero: {bool(np.all(dau_forward(np.zeros_like(m), dw) == 0))}")
