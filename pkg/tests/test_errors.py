# tests/test_errors.py
import pytest

from railfares.errors import (
    EXIT_DATA,
    ErrorKind,
    FeedErrors,
    FieldError,
    MissingFileError,
    NoFlowError,
    exit_code_for,
    get_taxonomy,
    raise_collected,
)


def test_taxonomy_covers_every_kind():
    kinds = {row["kind"] for row in get_taxonomy()}
    assert kinds == {k.value for k in ErrorKind}
    for row in get_taxonomy():
        assert row["exit_code"] == EXIT_DATA
        assert row["severity"] in {"low", "medium", "high"}
        assert row["operator_action"]


def test_exit_code_for_data_errors():
    assert exit_code_for(ErrorKind.NO_FLOW) == 1


def test_to_dict():
    d = FieldError("flows.csv", 3, "direction", "'X' is not one of R, S").to_dict()
    assert d["kind"] == "field"
    assert d["details"] == {
        "path": "flows.csv",
        "line": 3,
        "column": "direction",
        "reason": "'X' is not one of R, S",
    }


def test_raise_collected_single_and_many():
    raise_collected([])
    one = MissingFileError("fares.csv")
    with pytest.raises(MissingFileError):
        raise_collected([one])
    nested = FeedErrors([one, MissingFileError("flows.csv")])
    with pytest.raises(FeedErrors) as err:
        raise_collected([nested, NoFlowError("1000", "1004", "SGL")])
    assert len(err.value.errors) == 3
    assert "3 feed errors" in err.value.message
