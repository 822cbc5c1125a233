# tests/test_observability.py
import json

import pytest

from railfares.config import get_settings
from railfares.infra.atomic import atomic_open, atomic_write_text
from railfares.metrics import REGISTRY, time_command
from railfares.observability import log_duration, setup_json_logging


def test_settings_defaults():
    s = get_settings()
    assert s.TICKET == "SGL"
    assert s.FEED_DIR is None
    assert s.HTTP_RETRY_MAX_ATTEMPTS == 2


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("RAILFARES_TICKET", "RTN")
    monkeypatch.setenv("RAILFARES_JOBS", "3")
    monkeypatch.setenv("RAILFARES_LOG_LEVEL", "debug")
    s = get_settings()
    assert (s.TICKET, s.JOBS, s.LOG_LEVEL) == ("RTN", 3, "DEBUG")


def test_json_logging(capsys):
    logger = setup_json_logging("railfares.test_json", level="INFO", run_id="run-1")
    assert setup_json_logging("railfares.test_json", run_id="run-2") is logger
    assert len(logger.handlers) == 1
    logger.info("hello key=%s", "v")
    rec = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert rec["msg"] == "hello key=v"
    assert rec["run_id"] == "run-2"
    assert rec["level"] == "INFO"


def test_log_duration(capsys):
    logger = setup_json_logging("railfares.test_duration", level="INFO")
    with pytest.raises(ValueError), log_duration(logger, "step", n=1):
        raise ValueError("boom")
    msg = json.loads(capsys.readouterr().err.strip().splitlines()[-1])["msg"]
    assert msg.startswith("step n=1 duration_ms=")
    assert msg.endswith("ok=False")


def test_time_command_records_status():
    with time_command("unit-test"):
        pass
    with pytest.raises(RuntimeError), time_command("unit-test"):
        raise RuntimeError
    for status in ("ok", "error"):
        count = REGISTRY.get_sample_value(
            "railfares_command_duration_seconds_count", {"command": "unit-test", "status": status}
        )
        assert count == 1


def test_atomic_open_replaces_on_success(tmp_path):
    target = tmp_path / "out" / "x.csv"
    atomic_write_text(target, "a\n")
    with atomic_open(target) as f:
        f.write("b\n")
    assert target.read_text(encoding="utf-8") == "b\n"
    assert [p.name for p in target.parent.iterdir()] == ["x.csv"]


def test_atomic_open_keeps_old_file_on_error(tmp_path):
    target = tmp_path / "x.csv"
    target.write_text("old\n", encoding="utf-8")
    with pytest.raises(OSError), atomic_open(target) as f:
        f.write("partial")
        raise OSError("disk full")
    assert target.read_text(encoding="utf-8") == "old\n"
    assert [p.name for p in tmp_path.iterdir()] == ["x.csv"]
