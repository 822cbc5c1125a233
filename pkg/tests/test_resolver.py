# tests/test_resolver.py
import pytest

from oracle import load_raw, random_feed
from oracle import min_fare as oracle_min_fare
from railfares.errors import NoFlowError, UnknownStationError, UnknownTicketError
from railfares.fares.resolver import candidate_fares, min_fare
from railfares.feed.models import FareRecord


def test_candidates_aaa_bbb(tiny):
    got = [
        (c.flow_id, c.fare_pence, c.reversed)
        for c in candidate_fares(tiny, "1000", "1001", "SGL")
    ]
    assert got == [(2, 450, False), (1, 500, False), (3, 700, False)]


def test_candidate_via_group_in_cluster(tiny):
    via = {c.flow_id: c for c in candidate_fares(tiny, "1000", "1001", "SGL")}
    assert via[3].via_origin_code == "K501"
    assert via[3].via_dest_code == "1001"


def test_reversed_candidate(tiny):
    got = candidate_fares(tiny, "1001", "1000", "SGL")
    assert len(got) == 1
    assert (got[0].flow_id, got[0].fare_pence, got[0].reversed) == (2, 450, True)
    assert got[0].via_origin_code == "K500"


def test_no_candidates(tiny):
    assert candidate_fares(tiny, "1000", "1004", "SGL") == []


def test_same_station_has_no_candidates(tiny):
    assert candidate_fares(tiny, "1000", "1000", "SGL") == []
    with pytest.raises(NoFlowError):
        min_fare(tiny, "1000", "1000", "SGL")


@pytest.mark.parametrize(
    ("origin", "dest", "ticket", "fare"),
    [
        ("1000", "1001", "SGL", 450),
        ("1004", "1001", "SGL", 700),
        ("1000", "1001", "RTN", 800),
        ("1000", "1003", "SGL", 2000),
        ("1000", "1003", "RTN", 3600),
    ],
)
def test_min_fare(tiny, origin, dest, ticket, fare):
    assert min_fare(tiny, origin, dest, ticket) == fare


def test_min_fare_no_flow(tiny):
    with pytest.raises(NoFlowError) as err:
        min_fare(tiny, "1000", "1004", "SGL")
    assert (err.value.origin, err.value.dest, err.value.ticket_code) == ("1000", "1004", "SGL")


def test_lookup_errors(tiny):
    with pytest.raises(UnknownStationError):
        candidate_fares(tiny, "1000", "9999", "SGL")
    with pytest.raises(UnknownTicketError):
        min_fare(tiny, "1000", "1001", "ADV")


def test_tiny_matches_oracle(tiny, tiny_dir):
    feed = load_raw(tiny_dir)
    for o in tiny.station_nlcs():
        for d in tiny.station_nlcs():
            for t in ("SGL", "RTN"):
                expected = oracle_min_fare(feed, o, d, t)
                if expected is None:
                    assert candidate_fares(tiny, o, d, t) == []
                else:
                    assert min_fare(tiny, o, d, t) == expected


def test_random_feeds_match_oracle():
    for seed in range(50):
        feed = random_feed(seed)
        bundle = feed.bundle()
        nlcs = [s.nlc for s in feed.stations]
        for o in nlcs:
            for d in nlcs:
                for t in ("SGL", "RTN"):
                    expected = oracle_min_fare(feed, o, d, t)
                    if expected is None:
                        with pytest.raises(NoFlowError):
                            min_fare(bundle, o, d, t)
                    else:
                        assert min_fare(bundle, o, d, t) == expected, (seed, o, d, t)


def test_candidate_order_is_total():
    for seed in range(10):
        bundle = random_feed(seed).bundle()
        nlcs = bundle.station_nlcs()
        for o in nlcs[:5]:
            for d in nlcs:
                got = candidate_fares(bundle, o, d, "SGL")
                keys = [(c.fare_pence, c.flow_id, c.reversed) for c in got]
                assert keys == sorted(keys)


def test_adding_a_fare_never_raises_min_fare():
    for seed in range(20):
        feed = random_feed(seed, max_flows=40)
        if not feed.flows:
            continue
        before = feed.bundle()
        priced = {(f.flow_id, f.ticket_code) for f in feed.fares}
        extra = next(
            (f.flow_id for f in feed.flows if (f.flow_id, "SGL") not in priced), None
        )
        if extra is None:
            continue
        feed.fares.append(FareRecord(extra, "SGL", 1))
        after = feed.bundle()
        for o in before.station_nlcs():
            for d in before.station_nlcs():
                try:
                    old = min_fare(before, o, d, "SGL")
                except NoFlowError:
                    continue
                assert min_fare(after, o, d, "SGL") <= old


def test_all_reversible_is_symmetric():
    for seed in range(20):
        bundle = random_feed(seed, max_flows=60, all_reversible=True).bundle()
        nlcs = bundle.station_nlcs()
        for i, a in enumerate(nlcs):
            for b in nlcs[i + 1 :]:
                ab = [c.fare_pence for c in candidate_fares(bundle, a, b, "SGL")]
                ba = [c.fare_pence for c in candidate_fares(bundle, b, a, "SGL")]
                assert min(ab, default=None) == min(ba, default=None)
