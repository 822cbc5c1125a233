# tests/test_mutations.py
"""Single-field corruptions of tiny-gb: each must be caught with the right class and line."""

import pytest

from railfares.cli.main import run
from railfares.errors import (
    DuplicateKeyError,
    FeedErrors,
    FieldError,
    RailFaresError,
    ReferentialError,
)
from railfares.feed.ingest import load_feed

MUTATIONS = [
    # file, old text, new text, error class, line
    ("fares.csv", "3,SGL,700", "99,SGL,700", ReferentialError, 5),
    ("fares.csv", "4,RTN,3600", "4,XYZ,3600", ReferentialError, 7),
    ("fares.csv", "2,RTN,800", "2,SGL,800", DuplicateKeyError, 4),
    ("clusters.csv", "K501,1003", "K501,1999", ReferentialError, 5),
    ("clusters.csv", "K500,1002", "K500,K501", FieldError, 3),
    ("groups.csv", "0900,Alphaton Stns,1004", "0900,Alphaton Stns,1998", ReferentialError, 3),
    ("groups.csv", "0900,Alphaton Stns,1004", "1001,Alphaton Stns,1004", DuplicateKeyError, 3),
    ("flows.csv", "3,K501,1001,S", "3,K501,1001,X", FieldError, 4),
    ("flows.csv", "4,1000,1003,S", "4,1000,K777,S", ReferentialError, 5),
    ("flows.csv", "4,1000,1003,S", "1,1000,1003,S", DuplicateKeyError, 5),
    ("flows.csv", "2,1000,K500,R", "2,1000,1000,R", FieldError, 3),
    ("locations.csv", "1003,DDD", "1003,BBB", DuplicateKeyError, 5),
    ("locations.csv", "1004,EEE", "1000,EEE", DuplicateKeyError, 6),
    ("locations.csv", "51.45,-2.58", "151.45,-2.58", FieldError, 3),
    ("locations.csv", "52.48,-1.9", "52.48,-1.9x", FieldError, 5),
    ("locations.csv", "1002,CCC", "102,CCC", FieldError, 4),
    ("tickets.csv", "RTN,Anytime Return", "SGL,Anytime Return", DuplicateKeyError, 3),
]


def _flatten(err: RailFaresError) -> list[RailFaresError]:
    return err.errors if isinstance(err, FeedErrors) else [err]


def _mutate(directory, name, old, new):
    p = directory / name
    text = p.read_text(encoding="utf-8")
    assert old in text
    p.write_text(text.replace(old, new, 1), encoding="utf-8")


@pytest.mark.parametrize(("name", "old", "new", "cls", "line"), MUTATIONS)
def test_mutation_is_detected(feed_copy, name, old, new, cls, line):
    _mutate(feed_copy, name, old, new)
    with pytest.raises(RailFaresError) as err:
        load_feed(feed_copy)
    found = [(type(e), e.line) for e in _flatten(err.value)]
    assert (cls, line) in found


@pytest.mark.parametrize(("name", "old", "new", "cls", "line"), MUTATIONS[::4])
def test_mutation_fails_validate(feed_copy, capsys, name, old, new, cls, line):
    _mutate(feed_copy, name, old, new)
    assert run(["validate", "--feed", str(feed_copy)]) == 1
    assert "error" in capsys.readouterr().err


def test_unmutated_copy_passes(feed_copy):
    assert load_feed(feed_copy).counts()["flows"] == 4
