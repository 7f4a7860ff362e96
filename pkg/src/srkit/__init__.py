"""Real-image super-resolution scoring and inference toolkit.

Images are float64 numpy arrays of shape (H, W, 3) with values in [0, 1];
see srkit.image for the conversion rules. The public surface re-exported
here covers metrics and the challenge score, wavelet loss, composite
losses, dihedral self-ensemble, overlap-tiled inference, paired
augmentations, attention-block reference math and leaderboard assembly.
"""

from .attention import (
    DauWeights,
    SkffWeights,
    dau_forward,
    dau_gates,
    gap,
    init_dau_weights,
    init_skff_weights,
    load_weights,
    save_weights,
    skff_forward,
    skff_gates,
)
from .augment import AugSpec, augment_pair, make_rng, sample_rect
from .ensemble import (
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
from .errors import (
    ConfigError,
    DimensionMismatchError,
    ImageDecodeError,
    ImageFormatError,
    PairingError,
    SrkitError,
)
from .harness import LeaderboardEntry, build_leaderboard, run_eval
from .image import crop, ensure_image, load_png, quantize, save_png
from .losses import (
    LossWeights,
    composite_from_terms,
    composite_loss,
    l1_distance,
    ms_ssim_loss,
    ssim_loss,
)
from .metrics import (
    DEFAULT_SSIM_CONFIG,
    ImageMetrics,
    MetricReport,
    SsimConfig,
    average_pool2,
    challenge_score,
    evaluate_dirs,
    evaluate_pair,
    gaussian_window,
    ms_ssim,
    psnr_rgb,
    ssim,
)
from .models import (
    box_blur_model,
    box_downsample,
    command_model,
    constant_model,
    identity_model,
    nearest_upscale,
    nearest_upscale_model,
)
from .tiling import Rect, Tile, TileGrid, plan_tiles, stitch, tiled_apply
from .wavelet import WaveletPyramid, haar_analyze, haar_synthesize, wavelet_loss

__version__ = "0.1.0"
