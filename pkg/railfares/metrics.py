from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

log = logging.getLogger(__name__)

# Dedicated registry: batch runs export through the textfile collector, not a scrape endpoint.
REGISTRY = CollectorRegistry()

RECORDS_PARSED_TOTAL = Counter(
    "railfares_records_parsed_total",
    "Records accepted by the feed parsers",
    ["schema"],
    registry=REGISTRY,
)

PARSE_ERRORS_TOTAL = Counter(
    "railfares_parse_errors_total",
    "Feed errors detected while parsing or building a bundle",
    ["kind"],
    registry=REGISTRY,
)

OD_ROWS_TOTAL = Counter(
    "railfares_od_rows_total",
    "Origin rows produced by the OD engine",
    ["ticket"],
    registry=REGISTRY,
)

OD_PAIRS_TOTAL = Counter(
    "railfares_od_pairs_total",
    "Priced origin-destination pairs produced by the OD engine",
    ["ticket"],
    registry=REGISTRY,
)

DOWNLOADS_TOTAL = Counter(
    "railfares_downloads_total",
    "Download manifest entries by outcome",
    ["status"],
    registry=REGISTRY,
)

COMMAND_DURATION_SECONDS = Histogram(
    "railfares_command_duration_seconds",
    "Wall-clock duration of CLI commands",
    ["command", "status"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 15.0, 30.0, 60.0, 120.0, 300.0),
    registry=REGISTRY,
)


@contextmanager
def time_command(command: str) -> Iterator[None]:
    start = time.perf_counter()
    status = "error"
    try:
        yield
        status = "ok"
    finally:
        COMMAND_DURATION_SECONDS.labels(command=command, status=status).observe(
            time.perf_counter() - start
        )


def write_metrics(path: str | None) -> None:
    """Write the registry in Prometheus text format; no-op without a path."""
    if not path:
        return
    try:
        write_to_textfile(path, REGISTRY)
    except OSError as e:
        log.warning('metrics_write_failed path="%s" err="%s"', path, e)
