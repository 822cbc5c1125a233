# railfares/fares/synth.py
"""
Seeded synthetic feeds in the canonical file format.

Output is a pure function of the SyntheticFeedSpec: the same spec always
yields the same bytes. Fares grow with the distance between fare-point
centroids so distance/fare plots look plausible.
"""

from __future__ import annotations

import logging
import os
import string
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from railfares.access.geo import haversine_km_pairs
from railfares.errors import SpecError
from railfares.feed.ingest import format_coordinate, open_feed_writer
from railfares.feed.models import TICKET_RE

log = logging.getLogger(__name__)

# Great Britain bounding box (degrees)
GB_LAT = (49.9, 58.7)
GB_LON = (-8.2, 1.8)

MAX_STATIONS = 9000  # nlc 1000-9999
MAX_GROUPS = 999  # nlc 0001-0999
MAX_CLUSTERS = 1000  # K000-K999

KNOWN_TICKET_NAMES = {"SGL": "Anytime Single", "RTN": "Anytime Return"}


@dataclass(frozen=True)
class SyntheticFeedSpec:
    station_count: int
    cluster_count: int
    flow_count: int
    seed: int
    mean_cluster_size: float = 4.0
    ticket_codes: tuple[str, ...] = ("SGL", "RTN")
    group_count: int | None = None  # default: station_count // 10
    poi_count: int = 0
    reversible_share: float = 0.5
    point_weights: dict[str, float] = field(
        default_factory=lambda: {"station": 0.8, "group": 0.05, "cluster": 0.15}
    )

    @property
    def groups(self) -> int:
        return self.station_count // 10 if self.group_count is None else self.group_count

    def validate(self) -> None:
        problems: list[str] = []
        if not 1 <= self.station_count <= MAX_STATIONS:
            problems.append(f"station_count must be in 1..{MAX_STATIONS}")
        if not 1 <= self.cluster_count <= MAX_CLUSTERS:
            problems.append(f"cluster_count must be in 1..{MAX_CLUSTERS}")
        if not 0 <= self.groups <= MAX_GROUPS:
            problems.append(f"group_count must be in 0..{MAX_GROUPS}")
        if self.groups and self.station_count < 2:
            problems.append("groups need at least 2 stations")
        if self.flow_count < 1:
            problems.append("flow_count must be positive")
        if not 1 <= self.mean_cluster_size <= self.station_count:
            problems.append("mean_cluster_size must be in 1..station_count")
        if not self.ticket_codes or len(set(self.ticket_codes)) != len(self.ticket_codes):
            problems.append("ticket_codes must be non-empty and unique")
        bad = [t for t in self.ticket_codes if not TICKET_RE.fullmatch(t)]
        if bad:
            problems.append(f"ticket codes must be 3 alphanumerics: {bad}")
        if self.poi_count < 0:
            problems.append("poi_count must be non-negative")
        if not 0.0 <= self.reversible_share <= 1.0:
            problems.append("reversible_share must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            problems.append("seed must be a 64-bit unsigned integer")
        if problems:
            raise SpecError("inconsistent synthetic feed spec: " + "; ".join(problems))


def _crs(i: int) -> str:
    letters = string.ascii_uppercase
    return letters[i // 676 % 26] + letters[i // 26 % 26] + letters[i % 26]


def _coord(x: float) -> str:
    return format_coordinate(round(float(x), 5))


def generate_synthetic_feed(spec: SyntheticFeedSpec, out_dir: str | os.PathLike[str]) -> Path:
    """Write the six feed files (and pois.csv when poi_count > 0) into `out_dir`."""
    spec.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)

    n = spec.station_count
    lats = np.round(rng.uniform(*GB_LAT, size=n), 5)
    lons = np.round(rng.uniform(*GB_LON, size=n), 5)
    nlcs = [f"{1000 + i:04d}" for i in range(n)]

    with open_feed_writer(out / "locations.csv", "locations") as w:
        w.writerows(
            (nlcs[i], _crs(i), f"Station {_crs(i)}", _coord(lats[i]), _coord(lons[i]))
            for i in range(n)
        )

    # Groups: 2-4 stations each.
    group_members: list[np.ndarray] = []
    for _ in range(spec.groups):
        size = int(rng.integers(2, min(4, n) + 1))
        group_members.append(np.sort(rng.choice(n, size=size, replace=False)))
    group_codes = [f"{g + 1:04d}" for g in range(spec.groups)]
    with open_feed_writer(out / "groups.csv", "groups") as w:
        for g, members in enumerate(group_members):
            w.writerows((group_codes[g], f"Group {g + 1}", nlcs[m]) for m in members)

    # Clusters: stations, occasionally with one group.
    cluster_codes = [f"K{k:03d}" for k in range(spec.cluster_count)]
    cluster_station_sets: list[np.ndarray] = []
    with open_feed_writer(out / "clusters.csv", "clusters") as w:
        for k in range(spec.cluster_count):
            size = int(min(n, max(1, rng.poisson(spec.mean_cluster_size))))
            members = np.sort(rng.choice(n, size=size, replace=False))
            covered = set(members.tolist())
            w.writerows((cluster_codes[k], nlcs[m]) for m in members)
            if group_members and rng.random() < 0.2:
                g = int(rng.integers(len(group_members)))
                w.writerow((cluster_codes[k], group_codes[g]))
                covered.update(group_members[g].tolist())
            cluster_station_sets.append(np.array(sorted(covered)))

    # Fare points with their centroids.
    point_codes = nlcs + group_codes + cluster_codes
    point_lat = np.concatenate(
        [lats]
        + [[lats[m].mean() for m in group_members]]
        + [[lats[m].mean() for m in cluster_station_sets]]
    )
    point_lon = np.concatenate(
        [lons]
        + [[lons[m].mean() for m in group_members]]
        + [[lons[m].mean() for m in cluster_station_sets]]
    )
    kinds = [("station", n), ("group", len(group_codes)), ("cluster", len(cluster_codes))]
    weights = np.concatenate(
        [np.full(count, spec.point_weights[kind] / count) for kind, count in kinds if count]
    )
    weights = weights / weights.sum()
    total_points = len(point_codes)

    m = spec.flow_count
    origin = rng.choice(total_points, size=m, p=weights)
    dest = rng.choice(total_points, size=m, p=weights)
    dest = np.where(dest == origin, (dest + 1) % total_points, dest)
    reversible = rng.random(m) < spec.reversible_share
    km = haversine_km_pairs(point_lat[origin], point_lon[origin], point_lat[dest], point_lon[dest])
    base = np.rint(150 + km * (9 + 6 * rng.random(m))).astype(np.int64)

    origin_l, dest_l, rev_l = origin.tolist(), dest.tolist(), reversible.tolist()
    with open_feed_writer(out / "flows.csv", "flows") as w:
        w.writerows(
            (i + 1, point_codes[origin_l[i]], point_codes[dest_l[i]], "R" if rev_l[i] else "S")
            for i in range(m)
        )

    fare_cols = [
        np.rint(base * (1 + 0.8 * t)).astype(np.int64).tolist()
        for t in range(len(spec.ticket_codes))
    ]
    with open_feed_writer(out / "fares.csv", "fares") as w:
        for i in range(m):
            w.writerows(
                (i + 1, code, fare_cols[t][i]) for t, code in enumerate(spec.ticket_codes)
            )

    with open_feed_writer(out / "tickets.csv", "tickets") as w:
        w.writerows(
            (code, KNOWN_TICKET_NAMES.get(code, f"Ticket {code}")) for code in spec.ticket_codes
        )

    if spec.poi_count:
        near = rng.integers(n, size=spec.poi_count)
        jitter = rng.uniform(-0.05, 0.05, size=(spec.poi_count, 2))
        with open_feed_writer(out / "pois.csv", "pois") as w:
            for p in range(spec.poi_count):
                lat = float(np.clip(lats[near[p]] + jitter[p, 0], -90, 90))
                lon = float(np.clip(lons[near[p]] + jitter[p, 1], -180, 180))
                w.writerow((f"H{p + 1}", "HOSPITAL", f"Hospital {p + 1}", _coord(lat), _coord(lon)))

    log.info(
        'synthetic_feed_written dir="%s" stations=%d groups=%d clusters=%d flows=%d seed=%d',
        out,
        n,
        spec.groups,
        spec.cluster_count,
        m,
        spec.seed,
    )
    return out
