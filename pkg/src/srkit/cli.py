"""Command-line harness.

Subcommands: eval, leaderboard, ensemble, fuse, tile-apply, augment,
wavelet-loss, loss-probe, skff-demo, dau-demo.

Exit codes:
    0  success
    2  bad arguments, config or spec file
    3  SR/HR directories could not be paired
    4  dimension mismatch
    5  image file missing, unreadable or unwritable
    6  invalid parameter value
    1  unexpected internal error

Floating output is printed at fixed precision (PSNR 3 decimals, SSIM and
scores 4) so reruns diff cleanly.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import attention, augment, losses, wavelet
from .aim2020 import FINAL_STANDINGS, TRACKS
from .ensemble import ALL_TRANSFORMS, IDENTITY, ROTATIONS, fuse_outputs, self_ensemble
from .errors import (
    ConfigError,
    DimensionMismatchError,
    ImageDecodeError,
    ImageFormatError,
    PairingError,
)
from .harness import build_leaderboard, run_eval
from .image import load_png, save_png
from .models import command_model
from .tiling import tiled_apply


def _png_files(directory: Path) -> list[Path]:
    files = sorted(
        p for p in Path(directory).iterdir()
        if p.is_file() and p.suffix.lower() == ".png"
    )
    if not files:
        raise PairingError(f"no PNG files found in {directory}")
    return files


def _fmt(value: float, digits: int) -> str:
    if value is None:
        return "n/a"
    if not np.isfinite(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}f}"


def _cmd_eval(args) -> int:
    report, entry = run_eval(args.config)
    for m in report.per_image:
        line = f"{m.image_id}  psnr={_fmt(m.psnr, 3)}  ssim={_fmt(m.ssim, 4)}"
        if m.ms_ssim is not None:
            line += f"  ms_ssim={_fmt(m.ms_ssim, 4)}"
        print(line)
    print(
        f"average  psnr={_fmt(report.psnr_avg, 3)}  ssim={_fmt(report.ssim_avg, 4)}"
        f"  score={_fmt(report.score, 4)}"
    )
    if report.non_finite_psnr:
        print("warning: non-finite PSNR present (identical image pair)")
    if entry is not None:
        print(f"entry: {entry.team} [{entry.track}] score={_fmt(entry.score, 4)}")
    return 0


def _read_entries_csv(path: Path) -> list[tuple]:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"team", "psnr", "ssim"} <= set(
                reader.fieldnames
            ):
                raise ConfigError(
                    f"{path}: entries CSV needs a header with team, psnr, ssim"
                )
            return [(row["team"], float(row["psnr"]), float(row["ssim"])) for row in reader]
    except FileNotFoundError:
        raise ConfigError(f"entries file not found: {path}")
    except ValueError as exc:
        raise ConfigError(f"{path}: bad numeric value ({exc})")


def _cmd_leaderboard(args) -> int:
    if args.published:
        track = args.published
        rows = [(t, p, s) for t, p, s, _ in FINAL_STANDINGS[track]]
    else:
        if not args.entries:
            raise ConfigError("provide --entries CSV or --published TRACK")
        track = args.track
        rows = _read_entries_csv(Path(args.entries))
    board = build_leaderboard(rows, track)
    print(f"rank  {'team':24s}  {'psnr':>8s}  {'ssim':>7s}  {'score':>7s}")
    for e in board:
        print(
            f"{e.rank:>4d}  {e.team:24s}  {_fmt(e.psnr_avg, 3):>8s}"
            f"  {_fmt(e.ssim_avg, 4):>7s}  {_fmt(e.score, 4):>7s}"
        )
    if args.json_out:
        payload = [e.to_json_dict() for e in board]
        Path(args.json_out).write_text(json.dumps(payload, indent=2) + "\n")
    return 0


_TRANSFORM_SUBSETS = {"8": ALL_TRANSFORMS, "4": ROTATIONS, "1": (IDENTITY,)}


def _cmd_ensemble(args) -> int:
    model = command_model(args.model_cmd, expected_scale=args.scale)
    subset = _TRANSFORM_SUBSETS[args.transforms]
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in _png_files(Path(args.inp)):
        result = self_ensemble(load_png(path), model, subset)
        save_png(result, out_dir / path.name)
        print(f"{path.name}: ensembled over {len(subset)} transforms")
    return 0


def _cmd_fuse(args) -> int:
    dirs = [Path(d) for d in args.inputs.split(",") if d]
    if len(dirs) < 1:
        raise ConfigError("--inputs needs at least one directory")
    stem_lists = [_png_files(d) for d in dirs]
    names = [sorted(p.name for p in files) for files in stem_lists]
    if any(n != names[0] for n in names[1:]):
        raise PairingError("input directories do not hold the same file names")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names[0]:
        fused = fuse_outputs([load_png(d / name) for d in dirs])
        save_png(fused, out_dir / name)
        print(f"{name}: fused {len(dirs)} sources")
    return 0


def _cmd_tile_apply(args) -> int:
    model = command_model(args.model_cmd, expected_scale=args.scale)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in _png_files(Path(args.inp)):
        result = tiled_apply(
            load_png(path), model, args.window, args.core, scale=args.scale
        )
        save_png(result, out_dir / path.name)
        print(f"{path.name}: tiled ({args.window}/{args.core}) at x{args.scale}")
    return 0


def _load_augment_pipeline(path: Path):
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"spec file not found: {path}")
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot parse spec ({exc})")
    try:
        if "ops" in raw:
            seed = raw["seed"]
            steps = []
            for entry in raw["ops"]:
                entry = dict(entry)
                probability = entry.pop("probability")
                steps.append((augment.AugSpec(seed=seed, **entry), float(probability)))
            return seed, steps
        return raw.get("seed", 0), [(augment.AugSpec.from_json(json.dumps(raw)), 1.0)]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: bad augmentation spec ({exc})")


def _cmd_augment(args) -> int:
    seed, steps = _load_augment_pipeline(Path(args.spec))
    lr_files = _png_files(Path(args.in_lr))
    hr_files = _png_files(Path(args.in_hr))
    lr_stems = [p.stem for p in lr_files]
    hr_stems = [p.stem for p in hr_files]
    if lr_stems != hr_stems:
        raise PairingError("LR and HR directories do not pair by stem")
    out_lr = Path(args.out) / "lr"
    out_hr = Path(args.out) / "hr"
    out_lr.mkdir(parents=True, exist_ok=True)
    out_hr.mkdir(parents=True, exist_ok=True)
    pairs = [(load_png(l), load_png(h)) for l, h in zip(lr_files, hr_files)]
    rng = augment.make_rng(seed)
    for i, (lr_img, hr_img) in enumerate(pairs):
        partner = pairs[(i + 1) % len(pairs)]  # cyclic partner for mix ops
        for spec, probability in steps:
            if rng.uniform() < probability:
                lr_img, hr_img = augment.augment_pair(
                    lr_img, hr_img, spec, other=partner, rng=rng
                )
        save_png(lr_img, out_lr / lr_files[i].name)
        save_png(hr_img, out_hr / hr_files[i].name)
        print(f"{lr_files[i].stem}: augmented ({len(steps)} ops in pipeline)")
    return 0


def _cmd_wavelet_loss(args) -> int:
    x = load_png(args.a)
    y = load_png(args.b)
    payload = {"stages": args.stages, "lambda": args.lam}
    for reduction in ("sum", "mean"):
        total, high, low = wavelet.wavelet_loss(
            x, y, stages=args.stages, lam=args.lam,
            reduction=reduction, pixel_scale=args.pixel_scale,
        )
        payload[reduction] = {"total": total, "high": high, "low": low}
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_loss_probe(args) -> int:
    x = load_png(args.a)
    y = load_png(args.b)
    l1 = losses.l1_distance(x, y, pixel_scale=args.pixel_scale)
    s_loss = losses.ssim_loss(x, y)
    ms_loss = losses.ms_ssim_loss(x, y)
    print(f"l1            {l1:.6f}")
    print(f"ssim_loss     {s_loss:.6f}")
    print(f"ms_ssim_loss  {ms_loss:.6f}")
    w = losses.LossWeights.preset(args.preset)
    total = losses.composite_from_terms(
        w, l1, ms_loss, ssim_term=s_loss, vgg_term=args.vgg_term
    )
    print(f"{args.preset:13s} {total:.6f}")
    return 0


def _cmd_skff_demo(args) -> int:
    if args.weights:
        w = attention.load_weights(args.weights)
        if not isinstance(w, attention.SkffWeights):
            raise ConfigError(f"{args.weights}: expected an skff container")
    else:
        w = attention.init_skff_weights(args.channels, seed=args.seed)
    rng = augment.make_rng(args.seed, worker=1)
    shape = (w.channels, args.size, args.size)
    l1, l2, l3 = (rng.normal(size=shape) for _ in range(3))
    gates = attention.skff_gates(l1, l2, l3, w)
    out = attention.skff_forward(l1, l2, l3, w)
    same = attention.skff_forward(l1, l1, l1, _tied_skff(w))
    print(f"output shape          {out.shape}")
    print(f"gate sum deviation    {np.abs(gates.sum(axis=0) - 1.0).max():.3e}")
    print(f"equal-input residual  {np.abs(same - l1).max():.3e}")
    if args.save_weights:
        attention.save_weights(w, args.save_weights)
        print(f"weights saved to {args.save_weights}")
    return 0


def _tied_skff(w: attention.SkffWeights) -> attention.SkffWeights:
    tied_up = np.broadcast_to(w.w_up[0], w.w_up.shape).copy()
    tied_b = np.broadcast_to(w.b_up[0], w.b_up.shape).copy()
    return attention.SkffWeights(w.w_down, w.b_down, tied_up, tied_b)


def _cmd_dau_demo(args) -> int:
    if args.weights:
        w = attention.load_weights(args.weights)
        if not isinstance(w, attention.DauWeights):
            raise ConfigError(f"{args.weights}: expected a dau container")
    else:
        w = attention.init_dau_weights(args.channels, seed=args.seed)
    rng = augment.make_rng(args.seed, worker=1)
    m = rng.normal(size=(w.channels, args.size, args.size))
    cg, sg = attention.dau_gates(m, w)
    out = attention.dau_forward(m, w)
    zero = attention.dau_forward(np.zeros_like(m), w)
    print(f"output shape        {out.shape}")
    print(f"channel gate range  ({cg.min():.4f}, {cg.max():.4f})")
    print(f"spatial gate range  ({sg.min():.4f}, {sg.max():.4f})")
    print(f"zero-input output   {np.abs(zero).max():.3e}")
    if args.save_weights:
        attention.save_weights(w, args.save_weights)
        print(f"weights saved to {args.save_weights}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srkit",
        description="Real-image super-resolution scoring and inference toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="score an SR directory against an HR directory")
    p.add_argument("--config", required=True, help="declarative JSON config file")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("leaderboard", help="score and rank (team, psnr, ssim) entries")
    p.add_argument("--entries", help="CSV with header team,psnr,ssim")
    p.add_argument("--track", choices=TRACKS, default="x2")
    p.add_argument(
        "--published", choices=TRACKS,
        help="rank the bundled published standings for a track instead",
    )
    p.add_argument("--json-out", help="write the ranked board as JSON")
    p.set_defaults(fn=_cmd_leaderboard)

    p = sub.add_parser("ensemble", help="self-ensemble an external model over a directory")
    p.add_argument("--model-cmd", required=True, help="executable: <cmd> in.png out.png")
    p.add_argument("--scale", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--in", dest="inp", required=True, help="input LR directory")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--transforms", choices=("8", "4", "1"), default="8")
    p.set_defaults(fn=_cmd_ensemble)

    p = sub.add_parser("fuse", help="pixelwise-average same-name images across directories")
    p.add_argument("--inputs", required=True, help="comma-separated directories")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_fuse)

    p = sub.add_parser("tile-apply", help="run an external model tile by tile")
    p.add_argument("--model-cmd", required=True)
    p.add_argument("--window", type=int, default=80)
    p.add_argument("--core", type=int, default=60)
    p.add_argument("--scale", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_tile_apply)

    p = sub.add_parser("augment", help="apply a paired augmentation pipeline")
    p.add_argument("--spec", required=True, help="JSON spec or pipeline file")
    p.add_argument("--in-lr", dest="in_lr", required=True)
    p.add_argument("--in-hr", dest="in_hr", required=True)
    p.add_argument("--out", required=True, help="writes <out>/lr and <out>/hr")
    p.set_defaults(fn=_cmd_augment)

    p = sub.add_parser("wavelet-loss", help="wavelet loss triple for an image pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--pixel-scale", type=float, default=1.0)
    p.set_defaults(fn=_cmd_wavelet_loss)

    p = sub.add_parser("loss-probe", help="named loss breakdown for an image pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--preset", choices=losses.MODES[:-1], default="oppo")
    p.add_argument("--vgg-term", type=float, default=None)
    p.add_argument("--pixel-scale", type=float, default=1.0)
    p.set_defaults(fn=_cmd_loss_probe)

    p = sub.add_parser("skff-demo", help="seeded fuse-and-select forward with checks")
    p.add_argument("--channels", type=int, default=32)
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="JSON weight container to load")
    p.add_argument("--save-weights", help="write the used weights to this path")
    p.set_defaults(fn=_cmd_skff_demo)

    p = sub.add_parser("dau-demo", help="seeded dual-attention forward with checks")
    p.add_argument("--channels", type=int, default=32)
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="JSON weight container to load")
    p.add_argument("--save-weights", help="write the used weights to this path")
    p.set_defaults(fn=_cmd_dau_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PairingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (FileNotFoundError, ImageFormatError, ImageDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 6


if __name__ == "__main__":
    sys.exit(main())
