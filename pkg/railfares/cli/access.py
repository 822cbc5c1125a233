# railfares/cli/access.py
"""`railfares meandist`, `railfares poi` and `railfares geojson`."""

from __future__ import annotations

import argparse
import logging

from railfares.access.reach import mean_distance_results, poi_results
from railfares.cli.common import (
    RunConfig,
    SubParsers,
    add_jobs,
    add_out,
    add_ticket,
    feed_parent,
    load_bundle,
    origin_nlcs,
    pence_list,
)
from railfares.config import Settings
from railfares.errors import EXIT_OK
from railfares.export import (
    station_geojson,
    write_geojson,
    write_meandist_csv,
    write_poi_reach_csv,
)
from railfares.feed.ingest import parse_poi_file
from railfares.feed.models import PoiKind

log = logging.getLogger(__name__)


def add_subparser(sub: SubParsers, settings: Settings) -> None:
    meandist = sub.add_parser(
        "meandist",
        parents=[feed_parent(settings)],
        help="mean great-circle distance reachable within a budget",
        description="Mean distance in km to the stations reachable within --budget pence.",
    )
    which = meandist.add_mutually_exclusive_group(required=True)
    which.add_argument("--origin", action="append", help="origin CRS/NLC (repeatable)")
    which.add_argument("--all", action="store_true", help="every station as origin")
    meandist.add_argument("--budget", type=int, required=True, help="budget in pence")
    add_ticket(meandist, settings)
    add_jobs(meandist, settings)
    add_out(meandist, "meandist.csv")
    meandist.set_defaults(func=run_meandist)

    poi = sub.add_parser(
        "poi",
        parents=[feed_parent(settings)],
        help="points of interest reachable under a ladder of budgets",
        description=(
            "Count distinct POIs within --radius-km of the origin or of any station "
            "reachable within each budget."
        ),
    )
    poi.add_argument("--poi", required=True, help="POI file (poi_id,kind,name,lat,lon)")
    poi.add_argument(
        "--kind",
        choices=[k.value for k in PoiKind],
        default=PoiKind.HOSPITAL.value,
        help="POI kind to count (default: HOSPITAL)",
    )
    poi.add_argument(
        "--budgets", type=pence_list, required=True, help="ascending pence, e.g. 0,500,2500"
    )
    poi.add_argument("--radius-km", type=float, default=5.0, help="catchment radius (default: 5)")
    poi.add_argument("--origin", action="append", help="restrict origins (repeatable)")
    add_ticket(poi, settings)
    add_jobs(poi, settings)
    add_out(poi, "poi_reach.csv")
    poi.set_defaults(func=run_poi)

    geojson = sub.add_parser(
        "geojson",
        parents=[feed_parent(settings)],
        help="turn a per-station metric CSV into a GeoJSON point layer",
        description="Join one column of a metric CSV onto station coordinates (RFC 7946).",
    )
    geojson.add_argument("--metric", required=True, help="column holding the value")
    geojson.add_argument("--in", dest="src", required=True, help="metric CSV")
    geojson.add_argument(
        "--key-column", default="origin_crs", help="column naming the station (default: origin_crs)"
    )
    geojson.add_argument("--budget", type=int, help="keep only rows with this budget_pence")
    add_out(geojson, "GeoJSON file")
    geojson.set_defaults(func=run_geojson)


def run_meandist(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    results = mean_distance_results(
        bundle,
        cfg.ticket,
        cfg.budgets[0],
        None if args.all else origin_nlcs(bundle, cfg.origins),
        jobs=cfg.jobs,
    )
    assert cfg.out is not None
    written = write_meandist_csv(cfg.out, bundle, results)
    log.info('meandist_written path="%s" rows=%d', cfg.out, written)
    return EXIT_OK


def run_poi(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    assert cfg.poi_file is not None and cfg.poi_kind is not None and cfg.radius_km is not None
    pois = parse_poi_file(cfg.poi_file)
    results = poi_results(
        bundle,
        pois,
        cfg.ticket,
        cfg.budgets,
        cfg.radius_km,
        cfg.poi_kind,
        origin_nlcs(bundle, cfg.origins),
        jobs=cfg.jobs,
    )
    assert cfg.out is not None
    written = write_poi_reach_csv(cfg.out, bundle, results)
    log.info('poi_written path="%s" rows=%d', cfg.out, written)
    return EXIT_OK


def run_geojson(args: argparse.Namespace, cfg: RunConfig) -> int:
    bundle = load_bundle(cfg)
    collection = station_geojson(
        bundle, args.src, args.metric, key_column=args.key_column, budget_pence=args.budget
    )
    assert cfg.out is not None
    write_geojson(cfg.out, collection)
    log.info('geojson_written path="%s" features=%d', cfg.out, len(collection["features"]))
    return EXIT_OK
