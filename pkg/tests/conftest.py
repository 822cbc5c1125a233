# tests/conftest.py
import shutil
from pathlib import Path

import pytest

from railfares.feed.ingest import load_feed, parse_poi_file

TINY_GB = Path(__file__).parent / "fixtures" / "tiny-gb"


@pytest.fixture(scope="session")
def tiny_dir() -> Path:
    return TINY_GB


@pytest.fixture(scope="session")
def tiny():
    return load_feed(TINY_GB)


@pytest.fixture(scope="session")
def tiny_pois():
    return parse_poi_file(TINY_GB / "pois.csv")


@pytest.fixture
def feed_copy(tmp_path: Path) -> Path:
    """A writable copy of tiny-gb for mutation tests."""
    dst = tmp_path / "tiny-gb"
    shutil.copytree(TINY_GB, dst)
    return dst


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("RAILFARES_FEED_DIR", "RAILFARES_TICKET", "RAILFARES_METRICS_FILE"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("RAILFARES_JOBS", "1")
