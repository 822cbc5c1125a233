# railfares/access/geo.py
"""Great-circle helpers. Distances are in kilometres on a spherical Earth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# IUGG mean Earth radius
EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True, slots=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.lat <= 90.0 and -180.0 <= self.lon <= 180.0):
            raise ValueError(f"coordinates out of range: ({self.lat}, {self.lon})")


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    lat1, lon1, lat2, lon2 = map(math.radians, (a.lat, a.lon, b.lat, b.lon))
    h = (
        math.sin((lat2 - lat1) / 2) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def haversine_km_many(lat: float, lon: float, lats, lons) -> np.ndarray:
    """Distances from one point to arrays of points."""
    lat1, lon1 = np.radians(lat), np.radians(lon)
    lats2 = np.radians(np.asarray(lats, dtype=float))
    lons2 = np.radians(np.asarray(lons, dtype=float))
    h = (
        np.sin((lats2 - lat1) / 2) ** 2
        + np.cos(lat1) * np.cos(lats2) * np.sin((lons2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * np.arcsin(np.minimum(1.0, np.sqrt(h)))


def haversine_km_pairs(lats1, lons1, lats2, lons2) -> np.ndarray:
    """Element-wise distances between two equally long coordinate arrays."""
    lats1, lons1, lats2, lons2 = (
        np.radians(np.asarray(x, dtype=float)) for x in (lats1, lons1, lats2, lons2)
    )
    h = (
        np.sin((lats2 - lats1) / 2) ** 2
        + np.cos(lats1) * np.cos(lats2) * np.sin((lons2 - lons1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_KM * np.arcsin(np.minimum(1.0, np.sqrt(h)))
