"""Leaderboard assembly and config-driven directory evaluation.

Evaluation runs are described by a single declarative JSON config (they
get rerun and diffed, so no flag soup):

    {
      "sr_dir": "path/to/sr",            required
      "hr_dir": "path/to/hr",            required
      "json_out": "report.json",         optional
      "csv_out": "report.csv",           optional
      "track": "x2" | "x3" | "x4",       optional
      "team": "display name",            optional; adds a scored entry
      "include_ms_ssim": true,           optional, default true
      "exclude_nonfinite_psnr": false,   optional, default false
      "workers": 1                       optional, default 1
    }

Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .aim2020 import TRACKS
from .errors import ConfigError
from .metrics import (
    DEFAULT_SSIM_CONFIG,
    MetricReport,
    challenge_score,
    evaluate_dirs,
)


@dataclass(frozen=True)
class LeaderboardEntry:
    team: str
    track: str
    psnr_avg: float
    ssim_avg: float
    score: float
    rank: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "team": self.team,
            "track": self.track,
            "psnr_avg": round(self.psnr_avg, 3) if math.isfinite(self.psnr_avg) else "inf",
            "ssim_avg": round(self.ssim_avg, 4),
            "score": round(self.score, 4) if math.isfinite(self.score) else "inf",
            "rank": self.rank,
        }


def build_leaderboard(entries, track: str) -> list[LeaderboardEntry]:
    """Score and rank (team, psnr_avg, ssim_avg) triples for one track.

    Ordering is score descending, ties broken by PSNR descending then team
    name ascending; input order never matters. Duplicate team names within
    a track are an error.
    """
    if track not in TRACKS:
        raise ValueError(f"unknown track {track!r}; choose one of {TRACKS}")
    rows = list(entries)
    if not rows:
        raise ValueError("leaderboard needs at least one entry")
    seen = set()
    scored = []
    for team, psnr_avg, ssim_avg in rows:
        if team in seen:
            raise ValueError(f"duplicate team name {team!r} in track {track}")
        seen.add(team)
        scored.append(
            LeaderboardEntry(
                team=str(team),
                track=track,
                psnr_avg=float(psnr_avg),
                ssim_avg=float(ssim_avg),
                score=challenge_score(float(psnr_avg), float(ssim_avg)),
            )
        )
    scored.sort(key=lambda e: (-e.score, -e.psnr_avg, e.team))
    return [
        LeaderboardEntry(
            team=e.team,
            track=e.track,
            psnr_avg=e.psnr_avg,
            ssim_avg=e.ssim_avg,
            score=e.score,
            rank=i + 1,
        )
        for i, e in enumerate(scored)
    ]


_CONFIG_KEYS = {
    "sr_dir": (str, None),
    "hr_dir": (str, None),
    "json_out": (str, ""),
    "csv_out": (str, ""),
    "track": (str, ""),
    "team": (str, ""),
    "include_ms_ssim": (bool, True),
    "exclude_nonfinite_psnr": (bool, False),
    "workers": (int, 1),
}


def load_eval_config(path) -> dict:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot parse config ({exc})")
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = set(raw) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(sorted(unknown))}")
    cfg = {}
    for key, (typ, default) in _CONFIG_KEYS.items():
        if key in raw:
            value = raw[key]
            if typ is int and isinstance(value, bool):
                raise ConfigError(f"{path}: key {key!r} must be {typ.__name__}")
            if not isinstance(value, typ):
                raise ConfigError(f"{path}: key {key!r} must be {typ.__name__}")
            cfg[key] = value
        elif default is None:
            raise ConfigError(f"{path}: missing required key {key!r}")
        else:
            cfg[key] = default
    if cfg["track"] and cfg["track"] not in TRACKS:
        raise ConfigError(f"{path}: track must be one of {TRACKS}")
    if cfg["workers"] < 1:
        raise ConfigError(f"{path}: workers must be >= 1")
    return cfg


def run_eval(config_path) -> tuple[MetricReport, LeaderboardEntry | None]:
    """Run a config-described evaluation and write its reports.

    Returns the report plus a scored entry when the config names a team.
    """
    cfg = load_eval_config(config_path)
    report = evaluate_dirs(
        cfg["sr_dir"],
        cfg["hr_dir"],
        DEFAULT_SSIM_CONFIG,
        include_ms_ssim=cfg["include_ms_ssim"],
        exclude_nonfinite_psnr=cfg["exclude_nonfinite_psnr"],
        workers=cfg["workers"],
    )
    entry = None
    if cfg["team"]:
        entry = LeaderboardEntry(
            team=cfg["team"],
            track=cfg["track"],
            psnr_avg=report.psnr_avg,
            ssim_avg=report.ssim_avg,
            score=report.score,
        )
    if cfg["json_out"]:
        payload = report.to_json_dict()
        if entry is not None:
            payload["entry"] = entry.to_json_dict()
        Path(cfg["json_out"]).write_text(json.dumps(payload, indent=2) + "\n")
    if cfg["csv_out"]:
        report.write_csv(cfg["csv_out"])
    return report, entry
