# railfares/cli/fares.py
"""`railfares od` and `railfares reach`."""

from __future__ import annotations

import argparse
import logging

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
from railfares.export import write_od_csv
from railfares.fares.od import od_matrix, reachable_set

log = logging.getLogger(__name__)


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    od = sub.add_parser(
        "od",
        parents=[feed_parent(settings)],
        help="write the minimum-fare origin-destination matrix",
        description="Stream minimum fares for every ordered station pair to od.csv.",
    )
    od.add_argument(
        "--origin", action="append", help="restrict to this origin CRS/NLC (repeatable)"
    )
    add_ticket(od, settings)
    add_jobs(od, settings)
    add_out(od, "od.csv")
    od.set_defaults(func=run_od)

    reach = sub.add_parser(
        "reach",
        parents=[feed_parent(settings)],
        help="print stations reachable within a budget",
        description="Print the CRS of every station whose minimum fare is within the budget.",
    )
    reach.add_argument("--origin", action="append", required=True, help="origin CRS or NLC")
    reach.add_argument("--budget", type=int, required=True, help="budget in pence")
    add_ticket(reach, settings)
    reach.set_defaults(func=run_reach)


def run_od(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    rows = od_matrix(
        bundle, cfg.ticket, origin_nlcs(bundle, cfg.origins), jobs=cfg.jobs, by_crs=True
    )
    assert cfg.out is not None
    written = write_od_csv(cfg.out, bundle, rows)
    log.info('od_written path="%s" pairs=%d', cfg.out, written)
    return EXIT_OK


def run_reach(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    origins = origin_nlcs(bundle, cfg.origins) or []
    crs: set[str] = set()
    for nlc in origins:
        reached = reachable_set(bundle, nlc, cfg.ticket, cfg.budgets[0])
        crs.update(bundle.stations[d].crs for d in reached)
    for code in sorted(crs):
        print(code)
    return EXIT_OK
