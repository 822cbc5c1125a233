# railfares/export.py
"""
Result files: od.csv, poi_reach.csv, meandist.csv, stats.csv, dist_fare.csv,
raw fare values, and station GeoJSON layers (RFC 7946, lon/lat order).

Every writer goes through atomic_open, so a failed run never leaves a
truncated file behind.
"""

from __future__ import annotations

import csv
import json
import math
import os
import re
from collections.abc import Iterable
from decimal import Decimal
from pathlib import Path
from typing import Any

import numpy as np

from railfares.access.reach import AccessResult
from railfares.errors import FeedIoError, InputError
from railfares.fares.od import OdRow
from railfares.feed.bundle import FeedBundle
from railfares.infra.atomic import atomic_open, atomic_write_text
from railfares.stats.fares import DistanceFare, SummaryStats

OD_HEADER = ("origin_crs", "dest_crs", "ticket_code", "fare_pence")
POI_REACH_HEADER = ("origin_crs", "ticket_code", "budget_pence", "poi_kind", "radius_km", "count")
MEANDIST_HEADER = (
    "origin_crs",
    "ticket_code",
    "budget_pence",
    "mean_distance_km",
    "reachable_count",
)
STATS_HEADER = (
    "scope",
    "ticket_code",
    "count",
    "mean_pence",
    "median_pence",
    "min_pence",
    "max_pence",
    "lq_pence",
    "uq_pence",
)
VALUES_HEADER = ("scope", "fare_pence")
DIST_FARE_HEADER = ("origin_crs", "dest_crs", "distance_km", "fare_pence")

_INT_RE = re.compile(r"-?[0-9]+")


def format_number(x: int | float | Decimal | None) -> str:
    if x is None:
        return ""
    if isinstance(x, Decimal):
        return str(x)
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return np.format_float_positional(x, trim="0") if isinstance(x, float) else str(x)


def _writer(f: Any, header: Iterable[str]) -> Any:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(header)
    return w


def write_od_csv(path: str | os.PathLike[str], bundle: FeedBundle, rows: Iterable[OdRow]) -> int:
    """Stream rows to od.csv; rows must arrive in origin-crs order. Returns data rows written."""
    stations = bundle.stations
    written = 0
    with atomic_open(path, "w") as f:
        w = _writer(f, OD_HEADER)
        for row in rows:
            origin_crs = stations[row.origin_nlc].crs
            lines = sorted((stations[d].crs, fare) for d, fare in row.fares.items())
            w.writerows((origin_crs, crs, row.ticket_code, fare) for crs, fare in lines)
            written += len(lines)
    return written


def write_poi_reach_csv(
    path: str | os.PathLike[str], bundle: FeedBundle, results: Iterable[AccessResult]
) -> int:
    written = 0
    with atomic_open(path, "w") as f:
        w = _writer(f, POI_REACH_HEADER)
        for r in results:
            w.writerow(
                (
                    bundle.stations[r.origin_nlc].crs,
                    r.ticket_code,
                    r.budget_pence,
                    r.poi_kind.value if r.poi_kind else "",
                    format_number(r.radius_km),
                    format_number(r.value),
                )
            )
            written += 1
    return written


def write_meandist_csv(
    path: str | os.PathLike[str], bundle: FeedBundle, results: Iterable[AccessResult]
) -> int:
    written = 0
    with atomic_open(path, "w") as f:
        w = _writer(f, MEANDIST_HEADER)
        for r in results:
            mean = "" if r.value is None else f"{r.value:.3f}"
            w.writerow(
                (
                    bundle.stations[r.origin_nlc].crs,
                    r.ticket_code,
                    r.budget_pence,
                    mean,
                    r.reachable_count if r.reachable_count is not None else "",
                )
            )
            written += 1
    return written


def write_stats_csv(
    path: str | os.PathLike[str], entries: Iterable[tuple[str, str, SummaryStats]]
) -> None:
    with atomic_open(path, "w") as f:
        w = _writer(f, STATS_HEADER)
        for scope, ticket_code, s in entries:
            w.writerow(
                (
                    scope,
                    ticket_code,
                    s.count,
                    format_number(s.mean),
                    format_number(s.median),
                    format_number(s.min),
                    format_number(s.max),
                    format_number(s.lower_quartile),
                    format_number(s.upper_quartile),
                )
            )


def write_values_csv(
    path: str | os.PathLike[str], entries: Iterable[tuple[str, Iterable[int]]]
) -> None:
    with atomic_open(path, "w") as f:
        w = _writer(f, VALUES_HEADER)
        for scope, values in entries:
            w.writerows((scope, v) for v in values)


def write_dist_fare_csv(
    path: str | os.PathLike[str],
    bundle: FeedBundle,
    entries: Iterable[tuple[str, list[DistanceFare]]],
) -> int:
    """entries: (origin_nlc, pairs); rows sorted by (origin_crs, dest_crs)."""
    stations = bundle.stations
    lines = sorted(
        (stations[origin].crs, stations[p.dest_nlc].crs, f"{p.km:.3f}", p.fare_pence)
        for origin, pairs in entries
        for p in pairs
    )
    with atomic_open(path, "w") as f:
        _writer(f, DIST_FARE_HEADER).writerows(lines)
    return len(lines)


# ---- GeoJSON ------------------------------------------------------------------


def _parse_value(raw: str) -> int | float | None:
    raw = raw.strip()
    if raw == "":
        return None
    if _INT_RE.fullmatch(raw):
        return int(raw)
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"metric value {raw!r} is not a number") from None
    if not math.isfinite(value):
        raise InputError(f"metric value {raw!r} is not finite")
    return value


def station_geojson(
    bundle: FeedBundle,
    metric_csv: str | os.PathLike[str],
    metric: str,
    key_column: str = "origin_crs",
    budget_pence: int | None = None,
) -> dict[str, Any]:
    """
    Build a FeatureCollection of station points carrying one metric column.

    Properties are exactly {crs, metric_name, value}; an empty value becomes null.
    """
    src = Path(metric_csv)
    try:
        with src.open(encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            columns = reader.fieldnames or []
            for needed in (key_column, metric):
                if needed not in columns:
                    raise InputError(f"{src}: column {needed!r} not in header {columns}")
            if budget_pence is not None and "budget_pence" not in columns:
                raise InputError(f"{src}: --budget given but file has no budget_pence column")
            values: dict[str, int | float | None] = {}
            for rec in reader:
                if budget_pence is not None and int(rec["budget_pence"]) != budget_pence:
                    continue
                crs = bundle.station_lookup(rec[key_column]).crs
                if crs in values:
                    raise InputError(
                        f"{src}: several rows for {crs}; filter with --budget or --key-column"
                    )
                values[crs] = _parse_value(rec[metric])
    except OSError as e:
        raise FeedIoError(str(src), str(e)) from e

    features = []
    for crs in sorted(values):
        s = bundle.station_lookup(crs)
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [s.lon, s.lat]},
                "properties": {"crs": crs, "metric_name": metric, "value": values[crs]},
            }
        )
    return {"type": "FeatureCollection", "features": features}


def write_geojson(path: str | os.PathLike[str], collection: dict[str, Any]) -> None:
    atomic_write_text(path, json.dumps(collection, ensure_ascii=False, indent=1) + "\n")
