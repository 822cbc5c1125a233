# railfares/feed/download.py
from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from datetime import UTC, datetime
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, field_validator

from railfares.config import Settings, get_settings
from railfares.errors import ConfigError, NetworkError
from railfares.infra.atomic import atomic_open, atomic_write_text
from railfares.infra.http_client import HttpFetcher
from railfares.metrics import DOWNLOADS_TOTAL

log = logging.getLogger(__name__)

CONFIG_HEADER = "name,url,destination,expected_hash"


class DownloadStatus(str, Enum):
    DOWNLOADED = "downloaded"
    SKIPPED = "skipped"
    FAILED = "failed"


class DownloadSource(BaseModel):
    name: str = Field(..., min_length=1)
    url: str
    destination: Path
    expected_hash: str | None = Field(None, description="SHA-256 hex digest, lowercase")

    @field_validator("url")
    @classmethod
    def _http_only(cls, v: str) -> str:
        if not v.startswith(("http://", "https://")):
            raise ValueError("url must start with http:// or https://")
        return v

    @field_validator("expected_hash")
    @classmethod
    def _sha256_hex(cls, v: str | None) -> str | None:
        if v is None or v == "":
            return None
        v = v.lower()
        if len(v) != 64 or any(c not in "0123456789abcdef" for c in v):
            raise ValueError("expected_hash must be a 64-character SHA-256 hex digest")
        return v


class DownloadConfig(BaseModel):
    sources: list[DownloadSource] = Field(default_factory=list)


class ManifestEntry(BaseModel):
    name: str
    url: str
    destination: str
    byte_count: int | None = None
    sha256: str | None = None
    status: DownloadStatus
    error: str | None = None
    fetched_at: str | None = None


class DownloadManifest(BaseModel):
    entries: list[ManifestEntry] = Field(default_factory=list)

    @property
    def failed(self) -> list[ManifestEntry]:
        return [e for e in self.entries if e.status is DownloadStatus.FAILED]

    @property
    def ok(self) -> bool:
        return not self.failed

    def hash_for(self, destination: str) -> str | None:
        for e in self.entries:
            if e.destination == destination and e.status is not DownloadStatus.FAILED:
                return e.sha256
        return None


def parse_download_config(path: str | os.PathLike[str]) -> DownloadConfig:
    """Read `name,url,destination,expected_hash` rows; destinations resolve against the file."""
    cfg_path = Path(path)
    try:
        text = cfg_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read download config {cfg_path}: {e}") from e

    lines = text.split("\n")
    if lines[0] != CONFIG_HEADER:
        raise ConfigError(
            f"{cfg_path}:1: header mismatch, expected {CONFIG_HEADER!r}, found {lines[0]!r}"
        )
    sources: list[DownloadSource] = []
    names: set[str] = set()
    problems: list[str] = []
    reader = csv.reader(lines[1:])
    for values in reader:
        line = reader.line_num + 1
        if not values:
            continue
        if len(values) not in (3, 4):
            problems.append(f"{cfg_path}:{line}: expected 3 or 4 fields, found {len(values)}")
            continue
        name, url, dest = values[:3]
        expected = values[3] if len(values) == 4 else None
        try:
            src = DownloadSource(
                name=name,
                url=url,
                destination=(cfg_path.parent / dest).resolve(),
                expected_hash=expected or None,
            )
        except ValidationError as e:
            reasons = "; ".join(err["msg"] for err in e.errors())
            problems.append(f"{cfg_path}:{line}: {reasons}")
            continue
        if src.name in names:
            problems.append(f"{cfg_path}:{line}: duplicate source name {src.name!r}")
            continue
        names.add(src.name)
        sources.append(src)
    if problems:
        raise ConfigError("malformed download config:\n  " + "\n  ".join(problems))
    return DownloadConfig(sources=sources)


def _file_sha256(path: Path) -> str | None:
    if not path.is_file():
        return None
    digest = hashlib.sha256()
    with path.open("rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _now_iso() -> str:
    return datetime.now(UTC).isoformat()


def _fetch_one(
    src: DownloadSource, fetcher: HttpFetcher, previous: DownloadManifest | None
) -> ManifestEntry:
    try:
        return _fetch_entry(src, fetcher, previous)
    except (NetworkError, OSError) as e:
        reason = e.reason if isinstance(e, NetworkError) else f"{type(e).__name__}: {e}"
        log.error('download_failed name="%s" url="%s" err="%s"', src.name, src.url, reason)
        return ManifestEntry(
            name=src.name,
            url=src.url,
            destination=str(src.destination),
            status=DownloadStatus.FAILED,
            error=reason,
        )


def _fetch_entry(
    src: DownloadSource, fetcher: HttpFetcher, previous: DownloadManifest | None
) -> ManifestEntry:
    dest = str(src.destination)
    known = src.expected_hash or (previous.hash_for(dest) if previous else None)
    current = _file_sha256(src.destination)
    if known and current == known:
        return ManifestEntry(
            name=src.name,
            url=src.url,
            destination=dest,
            byte_count=src.destination.stat().st_size,
            sha256=current,
            status=DownloadStatus.SKIPPED,
        )

    with atomic_open(src.destination, "wb") as out:
        result = fetcher.fetch_to(src.url, out)
        if src.expected_hash and result.sha256 != src.expected_hash:
            raise NetworkError(
                src.url, f"hash mismatch: expected {src.expected_hash}, got {result.sha256}"
            )
    log.info(
        'download_ok name="%s" bytes=%d attempts=%d elapsed_ms=%d',
        src.name,
        result.byte_count,
        result.attempts,
        result.elapsed_ms,
    )
    return ManifestEntry(
        name=src.name,
        url=src.url,
        destination=dest,
        byte_count=result.byte_count,
        sha256=result.sha256,
        status=DownloadStatus.DOWNLOADED,
        fetched_at=_now_iso(),
    )


def download_inputs(
    config: DownloadConfig,
    previous: DownloadManifest | None = None,
    fetcher: HttpFetcher | None = None,
    settings: Settings | None = None,
    max_workers: int = 4,
) -> DownloadManifest:
    """
    Fetch every configured source; one manifest entry per source, in config order.

    A failed entry does not stop the others. Files whose current hash matches
    the expected hash (or the hash the previous manifest recorded) are skipped.
    """
    if not config.sources:
        return DownloadManifest()
    own_fetcher = fetcher is None
    fetcher = fetcher or HttpFetcher(settings or get_settings())
    try:
        with ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix="dl") as pool:
            entries = list(pool.map(lambda s: _fetch_one(s, fetcher, previous), config.sources))
    finally:
        if own_fetcher:
            fetcher.close()
    for e in entries:
        DOWNLOADS_TOTAL.labels(status=e.status.value).inc()
    return DownloadManifest(entries=entries)


def load_manifest(path: str | os.PathLike[str]) -> DownloadManifest | None:
    p = Path(path)
    if not p.is_file():
        return None
    try:
        return DownloadManifest.model_validate_json(p.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        log.warning('manifest_unreadable path="%s" err="%s"', p, e)
        return None


def write_manifest(path: str | os.PathLike[str], manifest: DownloadManifest) -> None:
    payload = json.loads(manifest.model_dump_json())
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
