from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass
from typing import BinaryIO
from urllib.parse import urlsplit

import httpx

from railfares.config import Settings, get_settings
from railfares.errors import NetworkError

from .circuit_breaker import BreakerConfig, HostBreakers

log = logging.getLogger(__name__)

# Only retry on transient failures; 4xx answers are final.
TRANSIENT_ERRORS = (httpx.TimeoutException, httpx.NetworkError, httpx.RemoteProtocolError)


class _RetryableStatus(Exception):
    def __init__(self, status: int):
        super().__init__(f"HTTP {status}")
        self.status = status


@dataclass(frozen=True)
class FetchResult:
    url: str
    byte_count: int
    sha256: str
    attempts: int
    elapsed_ms: int


class HttpFetcher:
    """
    Streams a URL into an open binary file while hashing it.

    Retries transient errors with exponential backoff and short-circuits a
    host once its breaker opens, so one dead host does not stall a run.
    """

    def __init__(
        self,
        settings: Settings | None = None,
        transport: httpx.BaseTransport | None = None,
        sleep=time.sleep,
    ):
        self.settings = settings or get_settings()
        self._client = httpx.Client(
            timeout=self.settings.HTTP_TIMEOUT_SECS,
            follow_redirects=True,
            transport=transport,
        )
        self._sleep = sleep
        self._breakers = HostBreakers(
            BreakerConfig(
                window_seconds=self.settings.CB_WINDOW_SECONDS,
                failure_threshold=self.settings.CB_FAILURE_THRESHOLD,
                min_calls=self.settings.CB_MIN_CALLS,
                halfopen_after_seconds=self.settings.CB_HALFOPEN_AFTER_SECONDS,
            )
        )

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> HttpFetcher:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()

    def fetch_to(self, url: str, out: BinaryIO) -> FetchResult:
        start = time.monotonic()
        host = urlsplit(url).netloc
        if not self._breakers.allow(host):
            raise NetworkError(url, "circuit_open")

        attempts = 0
        backoff_ms = self.settings.HTTP_RETRY_BACKOFF_BASE_MS
        last_exc: BaseException | None = None

        while True:
            attempts += 1
            out.seek(0)
            out.truncate()
            digest = hashlib.sha256()
            size = 0
            try:
                with self._client.stream("GET", url) as resp:
                    if resp.status_code >= 500 or resp.status_code == 429:
                        raise _RetryableStatus(resp.status_code)
                    if resp.status_code >= 400:
                        self._breakers.failed(host)
                        raise NetworkError(url, f"HTTP {resp.status_code}")
                    for chunk in resp.iter_bytes():
                        out.write(chunk)
                        digest.update(chunk)
                        size += len(chunk)
                self._breakers.succeeded(host)
                return FetchResult(
                    url=url,
                    byte_count=size,
                    sha256=digest.hexdigest(),
                    attempts=attempts,
                    elapsed_ms=int((time.monotonic() - start) * 1000),
                )
            except (*TRANSIENT_ERRORS, _RetryableStatus) as e:
                last_exc = e
                self._breakers.failed(host)
                log.warning('fetch_retry url="%s" attempt=%d err="%s"', url, attempts, e)
                out_of_attempts = attempts > self.settings.HTTP_RETRY_MAX_ATTEMPTS
                if out_of_attempts or not self._breakers.allow(host):
                    break
                self._sleep(backoff_ms / 1000.0)
                backoff_ms *= 2
            except httpx.HTTPError as e:
                last_exc = e
                self._breakers.failed(host)
                break

        raise NetworkError(url, str(last_exc) if last_exc else "unknown_error")
