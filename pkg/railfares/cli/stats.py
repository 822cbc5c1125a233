# railfares/cli/stats.py
"""`railfares stats` and `railfares distfare`."""

from __future__ import annotations

import argparse

from railfares.cli.common import (
    RunConfig,
    SubParsers,
    add_jobs,
    add_out,
    add_ticket,
    feed_parent,
    load_bundle,
    origin_nlcs,
)
from railfares.config import Settings
from railfares.errors import EXIT_OK
from railfares.export import write_dist_fare_csv, write_stats_csv, write_values_csv
from railfares.stats.fares import (
    distance_fare_pairs,
    network_fare_distribution,
    station_fare_distribution,
    summary_stats,
)


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    stats = sub.add_parser(
        "stats",
        parents=[feed_parent(settings)],
        help="summary statistics of minimum fares",
        description=(
            "Mean, median, extremes and quartiles of minimum fares, over the whole "
            "network or per origin station."
        ),
    )
    stats.add_argument(
        "--origin", action="append", help="per-station row instead of the network (repeatable)"
    )
    stats.add_argument("--values-out", help="also write the raw fare values (scope,fare_pence)")
    add_ticket(stats, settings)
    add_jobs(stats, settings)
    add_out(stats, "stats.csv")
    stats.set_defaults(func=run_stats)

    distfare = sub.add_parser(
        "distfare",
        parents=[feed_parent(settings)],
        help="great-circle distance against minimum fare",
        description="Write (distance, fare) for every priced destination of each origin.",
    )
    distfare.add_argument("--origin", action="append", required=True, help="origin (repeatable)")
    add_ticket(distfare, settings)
    add_out(distfare, "dist_fare.csv")
    distfare.set_defaults(func=run_distfare)


def run_stats(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    origins = origin_nlcs(bundle, cfg.origins)
    if origins is None:
        bundle.require_ticket(cfg.ticket)
        scoped = [("network", network_fare_distribution(bundle, cfg.ticket, jobs=cfg.jobs))]
    else:
        scoped = [
            (bundle.stations[nlc].crs, station_fare_distribution(bundle, nlc, cfg.ticket))
            for nlc in origins
        ]
    entries = [(scope, cfg.ticket, summary_stats(values)) for scope, values in scoped]
    assert cfg.out is not None
    write_stats_csv(cfg.out, entries)
    if args.values_out:
        write_values_csv(args.values_out, scoped)
    return EXIT_OK


def run_distfare(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    origins = origin_nlcs(bundle, cfg.origins) or []
    entries = [(nlc, distance_fare_pairs(bundle, nlc, cfg.ticket)) for nlc in origins]
    assert cfg.out is not None
    write_dist_fare_csv(cfg.out, bundle, entries)
    return EXIT_OK
