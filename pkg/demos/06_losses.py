"""The composite loss presets, evaluated on one noisy pair.

Each preset weighs pixel L1 against structural (SSIM-family) terms; the
third slot is the SSIM loss for the "oppo" recipe and an externally
supplied perceptual scalar for the inception recipes.
"""

import numpy as np

from srkit import LossWeights, composite_loss, l1_distance, ms_ssim_loss, ssim_loss

rng = np.random.default_rng(4)
hr = rng.random((192, 192, 3))
sr = np.clip(hr + rng.normal(0, 0.04, hr.shape), 0, 1)

print(f"l1            {l1_distance(sr, hr):.5f}")
print(f"ssim loss     {ssim_loss(sr, hr):.5f}")
print(f"ms-ssim loss  {ms_ssim_loss(sr, hr):.5f}")
print()

for mode in ("oppo", "inception_v1", "inception_v2"):
    w = LossWeights.preset(mode)
    print(f"{mode:13s} (a={w.alpha}, b={w.beta}, g={w.gamma}) "
          f"-> {composite_loss(sr, hr, w):.5f}")

w3 = LossWeights.preset("inception_v3")
print(f"inception_v3  (a={w3.alpha}, b={w3.beta}, g={w3.gamma}) "
      f"-> {composite_loss(sr, hr, w3, vgg_term=0.12):.5f}  (vgg term injected)")
