"""Published results and dataset geometry of the AIM 2020 real-image
super-resolution challenge (three tracks: x2, x3, x4 on DSLR-captured
pairs).

FINAL_STANDINGS holds, per track and in the published order, each entry's
averaged PSNR (dB, 3 decimals), averaged SSIM (3 decimals) and the printed
weighted score. The printed inputs are rounded, so recomputed scores match
the printed ones to about +/-0.001, not exactly.
"""

TRACKS = ("x2", "x3", "x4")

# LR patch edge length used for training crops, per track.
TRAIN_PATCH_SIZE = {"x2": 380, "x3": 272, "x4": 192}
TRAIN_PATCH_COUNT = 19000
VALIDATION_IMAGE_COUNT = 20
TEST_IMAGE_COUNT = 60

# (team, psnr_avg, ssim_avg, printed_score)
FINAL_STANDINGS = {
    "x2": (
        ("Baidu", 33.446, 0.927, 0.7736),
        ("CETC-CSKT", 33.314, 0.925, 0.7702),
        ("OPPO_CAMERA", 33.309, 0.924, 0.7699),
        ("AiAiR", 33.263, 0.924, 0.7695),
        ("TeamInception", 33.232, 0.924, 0.7690),
        ("Noah_TerminalVision", 33.289, 0.923, 0.7686),
        ("DeepBlueAI", 33.177, 0.924, 0.7681),
        ("ALONG", 33.098, 0.924, 0.7674),
        ("LISA-ULB", 32.987, 0.923, 0.7659),
        ("lyl", 32.937, 0.921, 0.7635),
        ("GDUT-SL", 32.973, 0.920, 0.7634),
        ("MCML-Yonsei", 32.903, 0.919, 0.7612),
        ("Kailos", 32.708, 0.920, 0.7601),
        ("qwq", 31.640, 0.913, 0.7436),
        ("debut_kele", 31.236, 0.889, 0.7196),
        ("EDSR*", 31.220, 0.889, 0.7194),
        ("RRDN_IITKGP", 29.851, 0.845, 0.6696),
    ),
    "x3": (
        ("Baidu", 30.950, 0.876, 0.7063),
        ("CETC-CSKT", 30.765, 0.871, 0.7005),
        ("OPPO_CAMERA", 30.537, 0.870, 0.6966),
        ("Noah_TerminalVision", 30.564, 0.866, 0.6941),
        ("MCML-Yonsei", 30.477, 0.866, 0.6931),
        ("TeamInception", 30.418, 0.866, 0.6928),
        ("ALONG", 30.375, 0.866, 0.6922),
        ("DeepBlueAI", 30.302, 0.867, 0.6918),
        ("lyl", 30.365, 0.864, 0.6905),
        ("Kailos", 30.130, 0.866, 0.6900),
        ("qwq", 29.266, 0.852, 0.6694),
        ("EDSR*", 28.763, 0.821, 0.6383),
        ("anonymous", 18.190, 0.825, 0.5357),
    ),
    "x4": (
        ("Baidu", 31.396, 0.875, 0.7099),
        ("ALONG", 31.237, 0.874, 0.7075),
        ("CETC-CSKT", 31.123, 0.874, 0.7066),
        ("SR-IM", 31.174, 0.873, 0.7057),
        ("DeepBlueAI", 30.964, 0.874, 0.7044),
        ("JNSR", 30.999, 0.872, 0.7035),
        ("OPPO_CAMERA", 30.86, 0.874, 0.7033),
        ("Kailos", 30.866, 0.873, 0.7032),
        ("SR_DLu", 30.605, 0.866, 0.6944),
        ("Noah_TerminalVision", 30.587, 0.866, 0.6944),
        ("Webbzhou", 30.417, 0.867, 0.6936),
        ("TeamInception", 30.347, 0.868, 0.6935),
        ("lyl", 30.319, 0.866, 0.6911),
        ("MCML-Yonsei", 30.420, 0.864, 0.6906),
        ("MoonCloud", 30.283, 0.864, 0.6898),
        ("qwq", 29.588, 0.855, 0.6748),
        ("SrDance", 29.595, 0.852, 0.6729),
        ("MLP_SR", 28.619, 0.831, 0.6457),
        ("EDSR*", 28.212, 0.824, 0.6356),
        ("RRDN_IITKGP", 27.971, 0.809, 0.6201),
        ("congxiaofeng", 26.392, 0.826, 0.6187),
    ),
}


def total_entries() -> int:
    return sum(len(rows) for rows in FINAL_STANDINGS.values())
