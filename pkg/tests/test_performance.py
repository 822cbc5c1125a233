# tests/test_performance.py
# National-scale OD run. Deselected by default; run with `pytest -m slow`.
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from railfares.cli.main import run

REPO = Path(__file__).resolve().parents[1]
WALL_LIMIT_SECS = 120.0
RSS_LIMIT_BYTES = 4 * 1024**3

# ru_maxrss is in KiB on Linux; the pool's workers are reaped before run() returns.
_MEASURED_OD = """
import json, resource, sys
from railfares.cli.main import run
code = run(sys.argv[2:])
peak = {
    "self": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024,
    "workers": resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss * 1024,
}
with open(sys.argv[1], "w", encoding="utf-8") as f:
    json.dump({"code": code, "peak": peak}, f)
"""

pytestmark = [
    pytest.mark.slow,
    pytest.mark.skipif(sys.platform != "linux", reason="ru_maxrss units are platform specific"),
]


@pytest.fixture(scope="module")
def gb_feed(tmp_path_factory):
    out = tmp_path_factory.mktemp("gb") / "feed"
    argv = ["synth", "--stations", "2500", "--clusters", "300", "--flows", "1500000"]
    assert run([*argv, "--seed", "1", "--out", str(out)]) == 0
    return out


def _od(feed: Path, jobs: int, out: Path, stats: Path) -> float:
    env = {**os.environ, "PYTHONPATH": str(REPO)}
    argv = ["od", "--feed", str(feed), "--ticket", "SGL", "--jobs", str(jobs), "--out", str(out)]
    start = time.monotonic()
    subprocess.run(
        [sys.executable, "-c", _MEASURED_OD, str(stats), *argv],
        env=env,
        check=True,
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    return time.monotonic() - start


def test_gb_scale_feed_counts(gb_feed, capsys):
    assert run(["validate", "--feed", str(gb_feed)]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "2500 stations, 300 clusters, 1500000 flows, 3000000 fares"
    ]


def test_gb_scale_od_is_fast_bounded_and_job_independent(gb_feed, tmp_path):
    results = {}
    for jobs in (1, 4):
        stats = tmp_path / f"stats-{jobs}.json"
        elapsed = _od(gb_feed, jobs, tmp_path / f"od-{jobs}.csv", stats)
        results[jobs] = (elapsed, json.loads(stats.read_text(encoding="utf-8")))

    for jobs, (elapsed, measured) in results.items():
        assert measured["code"] == 0
        assert measured["peak"]["self"] < RSS_LIMIT_BYTES, jobs
        assert measured["peak"]["workers"] < RSS_LIMIT_BYTES, jobs
    if (os.cpu_count() or 1) >= 4:
        assert results[4][0] < WALL_LIMIT_SECS

    one = (tmp_path / "od-1.csv").read_bytes()
    assert one == (tmp_path / "od-4.csv").read_bytes()
    assert one.startswith(b"origin_crs,dest_crs,ticket_code,fare_pence\n")
