# railfares/stats/fares.py
"""Fare distributions, summary statistics and distance/fare pairs."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import NamedTuple

import numpy as np

from railfares.access.geo import haversine_km_many
from railfares.errors import EmptyInputError
from railfares.fares.od import od_matrix, od_row
from railfares.feed.bundle import FeedBundle

Number = int | float


@dataclass(frozen=True, slots=True)
class SummaryStats:
    count: int
    mean: Decimal  # rounded half-up to 2 dp
    median: Number
    min: Number
    max: Number
    lower_quartile: Number
    upper_quartile: Number


def network_fare_distribution(
    bundle: FeedBundle, ticket_code: str, *, jobs: int = 1
) -> list[int]:
    """Minimum fare of every priced ordered pair, in (origin_nlc, dest_nlc) order."""
    values: list[int] = []
    for row in od_matrix(bundle, ticket_code, jobs=jobs):
        values.extend(row.fares.values())
    return values


def station_fare_distribution(bundle: FeedBundle, origin_nlc: str, ticket_code: str) -> list[int]:
    return list(od_row(bundle, origin_nlc, ticket_code).fares.values())


def _as_number(x: float, integral_inputs: bool) -> Number:
    if integral_inputs and float(x).is_integer():
        return int(x)
    return float(x)


def summary_stats(values: Sequence[Number]) -> SummaryStats:
    """
    Mean, median, extremes and quartiles.

    Quantiles use linear interpolation between closest ranks at position
    (n - 1) * q of the sorted values.
    """
    if len(values) == 0:
        raise EmptyInputError("summary statistics need at least one value")
    integral = all(isinstance(v, int | np.integer) for v in values)
    arr = np.sort(np.asarray(values))
    lq, med, uq = np.quantile(arr, [0.25, 0.5, 0.75], method="linear")
    total = sum(Decimal(int(v)) if integral else Decimal(float(v)) for v in values)
    mean = (total / Decimal(len(values))).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    return SummaryStats(
        count=len(values),
        mean=mean,
        median=_as_number(med, integral),
        min=_as_number(arr[0], integral),
        max=_as_number(arr[-1], integral),
        lower_quartile=_as_number(lq, integral),
        upper_quartile=_as_number(uq, integral),
    )


class DistanceFare(NamedTuple):
    km: float
    fare_pence: int
    dest_nlc: str


def distance_fare_pairs(
    bundle: FeedBundle, origin_nlc: str, ticket_code: str
) -> list[DistanceFare]:
    """(great-circle km, min fare) for each priced destination, ordered by dest_nlc."""
    row = od_row(bundle, origin_nlc, ticket_code)
    if not row.fares:
        return []
    origin = bundle.stations[origin_nlc]
    dests = [bundle.stations[d] for d in row.fares]
    km = haversine_km_many(origin.lat, origin.lon, [d.lat for d in dests], [d.lon for d in dests])
    return [
        DistanceFare(float(k), fare, d.nlc)
        for d, k, fare in zip(dests, km.tolist(), row.fares.values(), strict=True)
    ]
