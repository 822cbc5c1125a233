# tests/test_geo.py
import random

import numpy as np
import pytest

from oracle import haversine
from railfares.access.geo import GeoPoint, haversine_km, haversine_km_many, haversine_km_pairs


def _gb_point(rng: random.Random) -> GeoPoint:
    return GeoPoint(rng.uniform(49.9, 58.7), rng.uniform(-8.2, 1.8))


def test_coincident_points():
    p = GeoPoint(51.0, -3.0)
    assert haversine_km(p, p) == 0.0


def test_aaa_to_bbb():
    d = haversine_km(GeoPoint(50.70, -3.50), GeoPoint(51.45, -2.58))
    assert d == pytest.approx(105.4, abs=0.5)


def test_half_circumference():
    assert haversine_km(GeoPoint(90, 0), GeoPoint(-90, 0)) == pytest.approx(20015.1, abs=0.5)


def test_out_of_range_point():
    with pytest.raises(ValueError):
        GeoPoint(91.0, 0.0)


def test_against_independent_formula():
    rng = random.Random(4)
    for _ in range(1000):
        a, b = _gb_point(rng), _gb_point(rng)
        expected = haversine(a.lat, a.lon, b.lat, b.lon)
        assert haversine_km(a, b) == pytest.approx(expected, rel=0.005, abs=1e-9)


def test_symmetry_is_exact():
    rng = random.Random(5)
    for _ in range(1000):
        a, b = _gb_point(rng), _gb_point(rng)
        assert haversine_km(a, b) == haversine_km(b, a)


def test_triangle_inequality():
    rng = random.Random(6)
    for _ in range(1000):
        a, b, c = _gb_point(rng), _gb_point(rng), _gb_point(rng)
        assert haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-9


def test_vectorised_forms_agree():
    rng = random.Random(7)
    pts = [_gb_point(rng) for _ in range(50)]
    origin = pts[0]
    many = haversine_km_many(origin.lat, origin.lon, [p.lat for p in pts], [p.lon for p in pts])
    pairs = haversine_km_pairs(
        [origin.lat] * len(pts), [origin.lon] * len(pts), [p.lat for p in pts], [p.lon for p in pts]
    )
    scalar = np.array([haversine_km(origin, p) for p in pts])
    assert np.allclose(many, scalar, rtol=1e-12, atol=1e-9)
    assert np.allclose(pairs, scalar, rtol=1e-12, atol=1e-9)
