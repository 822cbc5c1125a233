# railfares/cli/validate.py
"""`railfares validate`: load a feed and report what it holds."""

from __future__ import annotations

import argparse

from railfares.cli.common import RunConfig, SubParsers, feed_parent, load_bundle
from railfares.config import Settings
from railfares.errors import EXIT_OK
from railfares.feed.ingest import parse_poi_file


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    parser = sub.add_parser(
        "validate",
        parents=[feed_parent(settings)],
        help="parse and cross-check a feed directory",
        description="Parse all six feed files, check every reference, print a summary.",
    )
    parser.add_argument("--poi", help="also validate this POI file")
    parser.add_argument(
        "--verbose", action="store_true", help="list groups and ticket types as well"
    )
    parser.set_defaults(func=run)


def run(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    c = bundle.counts()
    print(
        f"{c['stations']} stations, {c['clusters']} clusters, "
        f"{c['flows']} flows, {c['fares']} fares"
    )
    if args.verbose:
        print(f"{c['groups']} groups, {c['tickets']} ticket types")
        for code, ticket in sorted(bundle.tickets.items()):
            print(f"ticket {code} {ticket.name}")
    if cfg.poi_file is not None:
        pois = parse_poi_file(cfg.poi_file)
        print(f"{len(pois)} pois")
    return EXIT_OK
