# tests/test_download.py
import hashlib
import io

import httpx
import pytest

from railfares.config import get_settings
from railfares.errors import ConfigError, NetworkError
from railfares.feed import download as download_mod
from railfares.feed.download import (
    CONFIG_HEADER,
    DownloadStatus,
    download_inputs,
    load_manifest,
    parse_download_config,
    write_manifest,
)
from railfares.infra.circuit_breaker import BreakerConfig, BreakerState, HostBreakers
from railfares.infra.http_client import HttpFetcher

BODIES = {
    "/locations.csv": b"nlc,crs,name,lat,lon\n1000,AAA,Alphaton,50.7,-3.5\n",
    "/pois.csv": b"poi_id,kind,name,lat,lon\n",
}


class Server:
    """MockTransport handler that counts requests per path."""

    def __init__(self, fail_paths=(), status=None):
        self.calls: dict[str, int] = {}
        self.fail_paths = set(fail_paths)
        self.status = status or {}

    def __call__(self, request: httpx.Request) -> httpx.Response:
        path = request.url.path
        self.calls[path] = self.calls.get(path, 0) + 1
        if path in self.fail_paths:
            raise httpx.ConnectError("connection refused", request=request)
        if path in self.status:
            return httpx.Response(self.status[path])
        return httpx.Response(200, content=BODIES[path])


def _fetcher(server: Server) -> HttpFetcher:
    return HttpFetcher(get_settings(), transport=httpx.MockTransport(server), sleep=lambda _s: None)


def _config(tmp_path, rows: list[str]):
    p = tmp_path / "sources.csv"
    p.write_text("\n".join([CONFIG_HEADER, *rows]) + "\n", encoding="utf-8")
    return p


def _sha(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def test_empty_config(tmp_path):
    cfg = parse_download_config(_config(tmp_path, []))
    assert download_inputs(cfg).entries == []


def test_two_sources(tmp_path):
    cfg = parse_download_config(
        _config(
            tmp_path,
            [
                "locations,http://test/locations.csv,data/locations.csv,",
                f"pois,http://test/pois.csv,data/pois.csv,{_sha(BODIES['/pois.csv'])}",
            ],
        )
    )
    manifest = download_inputs(cfg, fetcher=_fetcher(Server()))
    assert [e.status for e in manifest.entries] == [DownloadStatus.DOWNLOADED] * 2
    assert [e.sha256 for e in manifest.entries] == [
        _sha(BODIES["/locations.csv"]),
        _sha(BODIES["/pois.csv"]),
    ]
    assert (tmp_path / "data" / "locations.csv").read_bytes() == BODIES["/locations.csv"]
    assert manifest.entries[0].byte_count == len(BODIES["/locations.csv"])
    assert manifest.entries[0].fetched_at is not None
    assert manifest.ok


def test_rerun_skips_unchanged_files(tmp_path):
    cfg = parse_download_config(
        _config(tmp_path, ["locations,http://test/locations.csv,locations.csv,"])
    )
    first = download_inputs(cfg, fetcher=_fetcher(Server()))
    write_manifest(tmp_path / "manifest.json", first)
    previous = load_manifest(tmp_path / "manifest.json")
    assert previous == first

    server = Server()
    second = download_inputs(cfg, previous=previous, fetcher=_fetcher(server))
    assert second.entries[0].status is DownloadStatus.SKIPPED
    assert second.entries[0].sha256 == first.entries[0].sha256
    assert server.calls == {}


def test_failure_does_not_stop_others(tmp_path):
    cfg = parse_download_config(
        _config(
            tmp_path,
            [
                "down,http://dead/locations.csv,a.csv,",
                "pois,http://test/pois.csv,b.csv,",
            ],
        )
    )
    server = Server(fail_paths={"/locations.csv"})
    manifest = download_inputs(cfg, fetcher=_fetcher(server))
    statuses = [e.status for e in manifest.entries]
    assert statuses == [DownloadStatus.FAILED, DownloadStatus.DOWNLOADED]
    assert manifest.entries[0].error
    assert not manifest.ok
    assert [e.name for e in manifest.failed] == ["down"]
    assert not (tmp_path / "a.csv").exists()
    # first attempt plus the configured retries
    assert server.calls["/locations.csv"] == 1 + get_settings().HTTP_RETRY_MAX_ATTEMPTS


def test_unwritable_destination_is_recorded(tmp_path):
    (tmp_path / "blocked").write_text("a file, not a directory", encoding="utf-8")
    cfg = parse_download_config(
        _config(
            tmp_path,
            [
                "locations,http://test/locations.csv,blocked/locations.csv,",
                "pois,http://test/pois.csv,pois.csv,",
            ],
        )
    )
    manifest = download_inputs(cfg, fetcher=_fetcher(Server()))
    assert [e.status for e in manifest.entries] == [
        DownloadStatus.FAILED,
        DownloadStatus.DOWNLOADED,
    ]
    assert "Error" in manifest.entries[0].error
    assert (tmp_path / "pois.csv").read_bytes() == BODIES["/pois.csv"]
    write_manifest(tmp_path / "manifest.json", manifest)
    assert load_manifest(tmp_path / "manifest.json") == manifest


def test_hash_mismatch_keeps_old_file(tmp_path):
    (tmp_path / "pois.csv").write_bytes(b"old")
    cfg = parse_download_config(
        _config(tmp_path, [f"pois,http://test/pois.csv,pois.csv,{'0' * 64}"])
    )
    manifest = download_inputs(cfg, fetcher=_fetcher(Server()))
    assert manifest.entries[0].status is DownloadStatus.FAILED
    assert "hash mismatch" in manifest.entries[0].error
    assert (tmp_path / "pois.csv").read_bytes() == b"old"


def test_client_error_is_not_retried(tmp_path):
    server = Server(status={"/pois.csv": 404})
    with pytest.raises(NetworkError) as err, _fetcher(server) as fetcher:
        fetcher.fetch_to("http://test/pois.csv", io.BytesIO())
    assert "404" in err.value.reason
    assert server.calls["/pois.csv"] == 1


@pytest.mark.parametrize("status", [503, 429])
def test_server_error_is_retried(tmp_path, status):
    server = Server(status={"/pois.csv": status})
    with pytest.raises(NetworkError), _fetcher(server) as fetcher:
        fetcher.fetch_to("http://test/pois.csv", io.BytesIO())
    assert server.calls["/pois.csv"] == 1 + get_settings().HTTP_RETRY_MAX_ATTEMPTS


def test_breaker_opens_per_host(monkeypatch):
    monkeypatch.setenv("RAILFARES_HTTP_RETRY_MAX_ATTEMPTS", "0")
    server = Server(fail_paths={"/locations.csv"})
    fetcher = _fetcher(server)
    for _ in range(3):
        with pytest.raises(NetworkError):
            fetcher.fetch_to("http://dead/locations.csv", io.BytesIO())
    with pytest.raises(NetworkError) as err:
        fetcher.fetch_to("http://dead/locations.csv", io.BytesIO())
    assert err.value.reason == "circuit_open"
    assert server.calls["/locations.csv"] == 3
    # another host is unaffected
    out = io.BytesIO()
    assert fetcher.fetch_to("http://other/pois.csv", out).byte_count == len(BODIES["/pois.csv"])


@pytest.mark.parametrize(
    "rows",
    [
        ["a,ftp://x/y,y,"],
        ["a,http://x/y,y,nothex"],
        ["a,http://x/y"],
        ["a,http://x/y,y,", "a,http://x/z,z,"],
    ],
)
def test_malformed_config(tmp_path, rows):
    with pytest.raises(ConfigError):
        parse_download_config(_config(tmp_path, rows))


def test_config_header_checked(tmp_path):
    p = tmp_path / "sources.csv"
    p.write_text("name,url\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_download_config(p)


def test_destinations_resolve_against_config(tmp_path):
    cfg = parse_download_config(_config(tmp_path, ["a,http://x/y,sub/y.csv,"]))
    assert cfg.sources[0].destination == (tmp_path / "sub" / "y.csv").resolve()


def test_unreadable_manifest_is_ignored(tmp_path):
    p = tmp_path / "manifest.json"
    p.write_text("{not json", encoding="utf-8")
    assert load_manifest(p) is None
    assert load_manifest(tmp_path / "absent.json") is None


def test_module_builds_its_own_fetcher(tmp_path, monkeypatch):
    server = Server()
    monkeypatch.setattr(download_mod, "HttpFetcher", lambda settings: _fetcher(server))
    cfg = parse_download_config(_config(tmp_path, ["pois,http://test/pois.csv,p.csv,"]))
    assert download_inputs(cfg).ok
    assert server.calls == {"/pois.csv": 1}


class Clock:
    def __init__(self):
        self.now = 100.0

    def __call__(self):
        return self.now


def test_breaker_half_open_probe():
    clock = Clock()
    breakers = HostBreakers(BreakerConfig(min_calls=2, halfopen_after_seconds=10), clock=clock)
    breakers.failed("a")
    assert breakers.state("a") is BreakerState.CLOSED
    breakers.failed("a")
    assert breakers.state("a") is BreakerState.OPEN
    assert not breakers.allow("a")
    assert breakers.allow("b")

    clock.now += 10
    assert breakers.allow("a")
    assert breakers.state("a") is BreakerState.HALF_OPEN
    breakers.failed("a")
    assert breakers.state("a") is BreakerState.OPEN

    clock.now += 10
    assert breakers.allow("a")
    breakers.succeeded("a")
    assert breakers.state("a") is BreakerState.CLOSED


def test_breaker_forgets_old_failures():
    clock = Clock()
    breakers = HostBreakers(BreakerConfig(window_seconds=30, min_calls=2), clock=clock)
    breakers.failed("a")
    clock.now += 31
    breakers.failed("a")
    assert breakers.state("a") is BreakerState.CLOSED
