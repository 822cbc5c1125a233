# railfares/config.py
import os


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


class Settings:
    """Environment-driven defaults; command-line options override them."""

    def __init__(self) -> None:
        # Feed & queries
        self.FEED_DIR: str | None = os.getenv("RAILFARES_FEED_DIR") or None
        self.TICKET: str = os.getenv("RAILFARES_TICKET", "SGL")
        self.JOBS: int = _env_int("RAILFARES_JOBS", os.cpu_count() or 1)

        # Observability
        self.LOG_LEVEL: str = os.getenv("RAILFARES_LOG_LEVEL", "INFO").upper()
        self.METRICS_FILE: str | None = os.getenv("RAILFARES_METRICS_FILE") or None

        # Download client
        self.HTTP_TIMEOUT_SECS: float = _env_float("RAILFARES_HTTP_TIMEOUT_SECS", 30.0)
        self.HTTP_RETRY_MAX_ATTEMPTS: int = _env_int("RAILFARES_HTTP_RETRY_MAX_ATTEMPTS", 2)
        self.HTTP_RETRY_BACKOFF_BASE_MS: int = _env_int(
            "RAILFARES_HTTP_RETRY_BACKOFF_BASE_MS", 200
        )
        self.CB_WINDOW_SECONDS: int = _env_int("RAILFARES_CB_WINDOW_SECONDS", 30)
        self.CB_FAILURE_THRESHOLD: float = _env_float("RAILFARES_CB_FAILURE_THRESHOLD", 0.5)
        self.CB_MIN_CALLS: int = _env_int("RAILFARES_CB_MIN_CALLS", 3)
        self.CB_HALFOPEN_AFTER_SECONDS: int = _env_int("RAILFARES_CB_HALFOPEN_AFTER_SECONDS", 15)


def get_settings() -> Settings:
    return Settings()
