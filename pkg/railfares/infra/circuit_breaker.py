# railfares/infra/circuit_breaker.py
# Per-host circuit breakers over a rolling window of fetch outcomes.

from __future__ import annotations

import threading
import time
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum


@dataclass(frozen=True)
class BreakerConfig:
    window_seconds: int = 30
    failure_threshold: float = 0.5
    min_calls: int = 3
    halfopen_after_seconds: int = 15


class BreakerState(str, Enum):
    CLOSED = "closed"
    OPEN = "open"
    HALF_OPEN = "half_open"


@dataclass
class _HostWindow:
    outcomes: deque[tuple[float, bool]] = field(default_factory=deque)
    state: BreakerState = BreakerState.CLOSED
    opened_at: float = 0.0

    def failure_ratio(self, now: float, window: int) -> tuple[int, float]:
        while self.outcomes and self.outcomes[0][0] < now - window:
            self.outcomes.popleft()
        n = len(self.outcomes)
        if not n:
            return 0, 0.0
        return n, sum(1 for _, ok in self.outcomes if not ok) / n

    def trip(self, now: float) -> None:
        self.state = BreakerState.OPEN
        self.opened_at = now


class HostBreakers:
    """One breaker per download host; a dead host never blocks the others."""

    def __init__(self, cfg: BreakerConfig, clock: Callable[[], float] = time.monotonic):
        self.cfg = cfg
        self._clock = clock
        self._lock = threading.Lock()
        self._hosts: dict[str, _HostWindow] = {}

    def _window(self, host: str) -> _HostWindow:
        return self._hosts.setdefault(host, _HostWindow())

    def allow(self, host: str) -> bool:
        now = self._clock()
        with self._lock:
            w = self._window(host)
            if w.state is not BreakerState.OPEN:
                return True
            if now - w.opened_at < self.cfg.halfopen_after_seconds:
                return False
            w.state = BreakerState.HALF_OPEN
            return True

    def succeeded(self, host: str) -> None:
        now = self._clock()
        with self._lock:
            w = self._window(host)
            w.outcomes.append((now, True))
            w.state = BreakerState.CLOSED

    def failed(self, host: str) -> None:
        now = self._clock()
        with self._lock:
            w = self._window(host)
            w.outcomes.append((now, False))
            if w.state is BreakerState.HALF_OPEN:
                w.trip(now)
                return
            calls, ratio = w.failure_ratio(now, self.cfg.window_seconds)
            if calls >= self.cfg.min_calls and ratio >= self.cfg.failure_threshold:
                w.trip(now)

    def state(self, host: str) -> BreakerState:
        with self._lock:
            return self._window(host).state
