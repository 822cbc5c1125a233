from __future__ import annotations

import json
import logging
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager

ROOT_LOGGER = "railfares"


class RunIdFilter(logging.Filter):
    """Ensure every record has a run_id attribute for JSON formatting."""

    def __init__(self, run_id: str = "-"):
        super().__init__()
        self.run_id = run_id

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run_id"):
            record.run_id = self.run_id
        return True


class _StderrHandler(logging.StreamHandler):
    # sys.stderr resolved at emit time
    @property
    def stream(self):  # type: ignore[override]
        return sys.stderr

    @stream.setter
    def stream(self, _value: object) -> None:
        pass


class JsonLineFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "ts": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
            "run_id": getattr(record, "run_id", "-"),
        }
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def setup_json_logging(
    logger_name: str = ROOT_LOGGER, level: str = "INFO", run_id: str = "-"
) -> logging.Logger:
    """
    Configure the package logger with JSON lines on stderr:

      {"ts":"...","level":"...","logger":"...","msg":"...","run_id":"..."}

    Idempotent: a second call only refreshes level and run id.
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)
    for handler in logger.handlers:
        for f in handler.filters:
            if isinstance(f, RunIdFilter):
                f.run_id = run_id
    if logger.handlers:
        return logger

    handler = _StderrHandler()
    handler.setFormatter(JsonLineFormatter())
    handler.addFilter(RunIdFilter(run_id))

    logger.addHandler(handler)
    logger.propagate = False
    return logger


@contextmanager
def log_duration(logger: logging.Logger, event: str, **fields: object) -> Iterator[None]:
    """Log `<event> ... duration_ms=N ok=bool` once the block finishes."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        duration_ms = int((time.perf_counter() - start) * 1000)
        extra = " ".join(f"{k}={v}" for k, v in fields.items())
        logger.info("%s %s duration_ms=%d ok=%s", event, extra, duration_ms, ok)
