# railfares/cli/synth.py
"""`railfares synth`: write a seeded synthetic feed."""

from __future__ import annotations

import argparse
import logging

from railfares.cli.common import RunConfig, SubParsers
from railfares.config import Settings
from railfares.errors import EXIT_OK
from railfares.fares.synth import SyntheticFeedSpec, generate_synthetic_feed

log = logging.getLogger(__name__)


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    parser = sub.add_parser(
        "synth",
        help="generate a synthetic feed",
        description="Write a deterministic synthetic feed; identical options give identical bytes.",
    )
    parser.add_argument("--stations", type=int, required=True)
    parser.add_argument("--clusters", type=int, required=True)
    parser.add_argument("--flows", type=int, required=True)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--groups", type=int, default=None, help="default: stations // 10")
    parser.add_argument("--mean-cluster-size", type=float, default=4.0)
    parser.add_argument(
        "--tickets", default="SGL,RTN", help="comma-separated ticket codes (default: SGL,RTN)"
    )
    parser.add_argument("--pois", type=int, default=0, help="synthetic hospitals to write")
    parser.add_argument("--out", required=True, help="output directory")
    parser.set_defaults(func=run, needs_feed=False)


def run(args: argparse.Namespace, cfg: RunConfig) -> int:
    spec = SyntheticFeedSpec(
        station_count=args.stations,
        cluster_count=args.clusters,
        flow_count=args.flows,
        seed=args.seed,
        mean_cluster_size=args.mean_cluster_size,
        ticket_codes=tuple(t.strip() for t in args.tickets.split(",") if t.strip()),
        group_count=args.groups,
        poi_count=args.pois,
    )
    assert cfg.out is not None
    out = generate_synthetic_feed(spec, cfg.out)
    log.info('synth_written dir="%s" stations=%d flows=%d', out, spec.station_count, spec.flow_count)
    return EXIT_OK
