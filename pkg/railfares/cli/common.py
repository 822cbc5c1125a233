# railfares/cli/common.py
"""Options and run configuration shared by the subcommands."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from railfares.access.reach import check_budgets
from railfares.config import Settings
from railfares.feed.bundle import FeedBundle, resolve_stations
from railfares.feed.ingest import load_feed
from railfares.feed.models import PoiKind
from railfares.observability import log_duration

log = logging.getLogger(__name__)

SubParsers = argparse._SubParsersAction


class RunConfig(BaseModel):
    """Resolved options of one invocation; paths absolute, budgets ascending."""

    model_config = ConfigDict(frozen=True)

    command: str
    feed_dir: Path | None = None
    ticket: str = "SGL"
    out: Path | None = None
    origins: list[str] = Field(default_factory=list)
    budgets: list[int] = Field(default_factory=list)
    radius_km: float | None = Field(None, gt=0)
    poi_file: Path | None = None
    poi_kind: PoiKind | None = None
    jobs: int = Field(1, ge=1)
    seed: int | None = None

    @field_validator("feed_dir", "out", "poi_file")
    @classmethod
    def _absolute(cls, v: Path | None) -> Path | None:
        return v.expanduser().resolve() if v is not None else None

    @field_validator("budgets")
    @classmethod
    def _ascending(cls, v: list[int]) -> list[int]:
        # BudgetOrderError is not a ValueError, so it reaches the caller unwrapped.
        return check_budgets(v) if v else v

    @classmethod
    def from_args(cls, args: argparse.Namespace, settings: Settings) -> RunConfig:
        budgets: list[int] = []
        if getattr(args, "budgets", None) is not None:
            budgets = list(args.budgets)
        elif getattr(args, "budget", None) is not None:
            budgets = [args.budget]
        values: dict[str, Any] = {
            "command": args.command,
            "feed_dir": getattr(args, "feed", None),
            "ticket": getattr(args, "ticket", None) or settings.TICKET,
            "out": getattr(args, "out", None),
            "origins": getattr(args, "origin", None) or [],
            "budgets": budgets,
            "radius_km": getattr(args, "radius_km", None),
            "poi_file": getattr(args, "poi", None),
            "poi_kind": getattr(args, "kind", None),
            "jobs": settings.JOBS if getattr(args, "jobs", None) is None else args.jobs,
            "seed": getattr(args, "seed", None),
        }
        return cls(**values)


# ---- Argument helpers ---------------------------------------------------------


def pence_list(text: str) -> list[int]:
    """argparse type for `--budgets 0,500,2000`."""
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated pence integers, got {text!r}"
        ) from None


def feed_parent(settings: Settings) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument(
        "--feed",
        default=settings.FEED_DIR,
        help="feed directory (default: $RAILFARES_FEED_DIR)",
    )
    p.set_defaults(needs_feed=True)
    return p


def add_ticket(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument(
        "--ticket",
        default=settings.TICKET,
        help=f"ticket code (default: {settings.TICKET})",
    )


def add_jobs(parser: argparse.ArgumentParser, settings: Settings) -> None:
    parser.add_argument(
        "--jobs",
        type=int,
        default=settings.JOBS,
        help=f"worker processes for bulk runs (default: {settings.JOBS})",
    )


def add_out(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("--out", required=True, help=f"{what} to write")


# ---- Shared steps -------------------------------------------------------------


def load_bundle(cfg: RunConfig) -> FeedBundle:
    assert cfg.feed_dir is not None
    with log_duration(log, "feed_load", dir=cfg.feed_dir):
        bundle = load_feed(cfg.feed_dir)
    counts = " ".join(f"{k}={v}" for k, v in bundle.counts().items())
    log.info("feed_ready %s", counts)
    return bundle


def origin_nlcs(bundle: FeedBundle, keys: list[str]) -> list[str] | None:
    """Station keys (CRS or NLC) to nlcs; None means every station."""
    if not keys:
        return None
    return list(dict.fromkeys(s.nlc for s in resolve_stations(bundle, keys)))
