"""Rebuild the published challenge leaderboards from raw averages.

Feeds each track's printed (PSNR_avg, SSIM_avg) pairs through the scoring
formula and ranks them. Recomputed scores land within +/-0.001 of print
(inputs are quoted at 3 decimals), and the ordering agrees wherever the
printed scores are separated by more than that rounding fog.
"""

from srkit import build_leaderboard
from srkit.aim2020 import FINAL_STANDINGS, TRACKS

for track in TRACKS:
    rows = FINAL_STANDINGS[track]
    board = build_leaderboard([(t, p, s) for t, p, s, _ in rows], track)
    printed = {t: score for t, _, _, score in rows}
    print(f"\n=== track {track} ===")
    print(f"rank  {'team':22s} {'psnr':>8s} {'ssim':>7s} {'score':>7s} {'printed':>8s}")
    for e in board:
        print(
            f"{e.rank:>4d}  {e.team:22s} {e.psnr_avg:8.3f} {e.ssim_avg:7.3f}"
            f" {e.score:7.4f} {printed[e.team]:8.4f}"
        )

worst = max(
    abs(build_leaderboard([(t, p, s)], track)[0].score - score)
    for track in TRACKS
    for t, p, s, score in FINAL_STANDINGS[track]
)
print(f"\nworst |recomputed - printed| over all rows: {worst:.5f}")
