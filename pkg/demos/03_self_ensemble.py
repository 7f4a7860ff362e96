"""Self-ensemble over the eight dihedral transforms.

Uses a deliberately anisotropic "model" (a horizontal-only box blur plus
nearest x2 upscale) so the benefit is visible: the model treats rows and
columns differently, and averaging its outputs over rotations/flips of the
input washes that bias out. A genuinely equivariant model gains nothing
and the ensemble collapses to the plain output bit-for-bit.
"""

import numpy as np

from srkit import ALL_TRANSFORMS, psnr_rgb, self_ensemble
from srkit.models import nearest_upscale, nearest_upscale_model

rng = np.random.default_rng(1)
yy, xx = np.mgrid[0:64, 0:64] / 64.0
lr = np.clip(
    np.stack([np.sin(9 * xx) * np.cos(9 * yy)] * 3, axis=2) * 0.4 + 0.5, 0, 1
)
truth = nearest_upscale(lr, 2)


def anisotropic_model(img):
    # horizontal 1-2-1 smoothing only, then nearest x2: rows != columns
    smeared = img.copy()
    smeared[:, 1:-1] = 0.25 * img[:, :-2] + 0.5 * img[:, 1:-1] + 0.25 * img[:, 2:]
    return nearest_upscale(smeared, 2)


plain = anisotropic_model(lr)
ensembled = self_ensemble(lr, anisotropic_model)

print(f"plain model      psnr vs truth: {psnr_rgb(plain, truth):7.3f} dB")
print(f"x8 self-ensemble psnr vs truth: {psnr_rgb(ensembled, truth):7.3f} dB")

equivariant = nearest_upscale_model(2)
identical = np.array_equal(self_ensemble(lr, equivariant), equivariant(lr))
print(f"\nequivariant model: ensemble == plain output bit-exactly? {identical}")
print(f"transforms used: {len(ALL_TRANSFORMS)}")
