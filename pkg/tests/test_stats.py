# tests/test_stats.py
import random
from decimal import Decimal

import pytest

from oracle import haversine, od_table, quantile, random_feed
from railfares.errors import EmptyInputError
from railfares.fares.od import od_row
from railfares.stats.fares import (
    distance_fare_pairs,
    network_fare_distribution,
    station_fare_distribution,
    summary_stats,
)


def test_network_distribution(tiny):
    assert network_fare_distribution(tiny, "SGL") == [450, 450, 2000, 450, 450, 700, 700]


def test_network_distribution_rtn(tiny):
    # flow 2 is reversible, flow 4 is not
    assert network_fare_distribution(tiny, "RTN") == [800, 800, 3600, 800, 800]


def test_network_distribution_parallel(tiny):
    assert network_fare_distribution(tiny, "SGL", jobs=2) == network_fare_distribution(tiny, "SGL")


def test_station_distribution(tiny):
    assert station_fare_distribution(tiny, "1000", "SGL") == [450, 450, 2000]
    assert station_fare_distribution(tiny, "1004", "SGL") == [700]


def test_station_distribution_empty(tiny):
    assert station_fare_distribution(tiny, "1004", "RTN") == []


def test_network_multiset_is_union_of_rows():
    for seed in range(10):
        feed = random_feed(seed)
        bundle = feed.bundle()
        rows = [v for nlc in bundle.station_nlcs() for v in od_row(bundle, nlc, "SGL").fares.values()]
        got = network_fare_distribution(bundle, "SGL")
        assert sorted(got) == sorted(rows) == sorted(od_table(feed, "SGL").values())


def test_summary_tiny_aaa():
    s = summary_stats([450, 450, 2000])
    assert s.count == 3
    assert s.mean == Decimal("966.67")
    assert (s.median, s.min, s.max, s.lower_quartile, s.upper_quartile) == (450, 450, 2000, 450, 1225)
    assert isinstance(s.median, int)


def test_summary_singleton():
    s = summary_stats([65])
    assert s.mean == Decimal("65.00")
    assert {s.median, s.min, s.max, s.lower_quartile, s.upper_quartile} == {65}


def test_summary_half_up_rounding():
    # 1/8 = 0.125 rounds up, not to even
    assert summary_stats([0, 0, 0, 0, 0, 0, 0, 1]).mean == Decimal("0.13")


def test_summary_fractional_quantile():
    s = summary_stats([1, 2])
    assert s.median == 1.5
    assert s.lower_quartile == 1.25


def test_summary_empty():
    with pytest.raises(EmptyInputError):
        summary_stats([])


def test_summary_against_independent_quantiles():
    rng = random.Random(12)
    for _ in range(1000):
        values = [rng.randint(0, 30000) for _ in range(rng.randint(1, 60))]
        s = summary_stats(values)
        assert s.min <= s.lower_quartile <= s.median <= s.upper_quartile <= s.max
        assert s.min == min(values) and s.max == max(values)
        for got, q in ((s.lower_quartile, 0.25), (s.median, 0.5), (s.upper_quartile, 0.75)):
            assert got == pytest.approx(quantile(values, q), rel=1e-12, abs=1e-9)
        exact = Decimal(sum(values)) / Decimal(len(values))
        assert abs(s.mean - exact) <= Decimal("0.005")
        shuffled = values[:]
        rng.shuffle(shuffled)
        assert summary_stats(shuffled) == s


def test_distance_fare_pairs(tiny):
    pairs = distance_fare_pairs(tiny, "1000", "SGL")
    assert [(p.dest_nlc, p.fare_pence) for p in pairs] == [("1001", 450), ("1002", 450), ("1003", 2000)]
    aaa = tiny.stations["1000"]
    for p in pairs:
        dest = tiny.stations[p.dest_nlc]
        assert p.km == pytest.approx(haversine(aaa.lat, aaa.lon, dest.lat, dest.lon), rel=1e-9)


def test_distance_fare_pairs_empty(tiny):
    assert distance_fare_pairs(tiny, "1004", "RTN") == []


def test_distance_fare_symmetry_on_reversible_feed():
    bundle = random_feed(3, all_reversible=True).bundle()
    nlcs = bundle.station_nlcs()
    a = nlcs[0]
    for p in distance_fare_pairs(bundle, a, "SGL"):
        back = {q.dest_nlc: q for q in distance_fare_pairs(bundle, p.dest_nlc, "SGL")}
        assert back[a].fare_pence == p.fare_pence
        assert back[a].km == pytest.approx(p.km, rel=1e-12)
