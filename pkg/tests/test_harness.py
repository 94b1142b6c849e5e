import csv

import pytest

from tscm import harness, plotting
from tscm.benchgen import BenchmarkConfig


SMALL = BenchmarkConfig(n=300, c_min=20, c_max=40, d_avg=15, d_max=40, b=2)


def test_sweep_rows_and_summary(tmp_path):
    rows = harness.sweep(SMALL, "p", [0.6, 0.9], ["num", "bin"], instances=1, trials=2, rng_seed=3)
    assert len(rows) == 2 * 2 * 2
    assert {r["kind"] for r in rows} == {"num", "bin"}
    summary = harness.summarize(rows)
    assert len(summary) == 4
    for s in summary:
        assert 0 <= s["ss_mean"] <= 1 and 0 <= s["q_mean"] <= 1
        assert s["trials"] == 2
    harness.write_csv(rows, tmp_path / "t.csv", harness.TRIAL_FIELDS)
    with open(tmp_path / "t.csv") as fh:
        back = list(csv.DictReader(fh))
    assert len(back) == len(rows) and list(back[0]) == harness.TRIAL_FIELDS
    q = plotting.plot_quality(summary, tmp_path / "q.png")
    r = plotting.plot_runtime(summary, tmp_path / "r.png")
    assert q.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert r.stat().st_size > 1000


def test_sweep_deterministic_apart_from_runtime():
    a = harness.sweep(SMALL, "mu", [0.2], ["num"], 1, 3, rng_seed=4)
    b = harness.sweep(SMALL, "mu", [0.2], ["num"], 1, 3, rng_seed=4, threads=3)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "runtime_s"} for r in rows]
    assert strip(a) == strip(b)


def test_unknown_parameter():
    with pytest.raises(ValueError):
        harness.sweep(SMALL, "gamma", [1], ["num"])


def test_loglog_slope():
    assert harness.loglog_slope([1, 10, 100], [2, 20, 200]) == pytest.approx(1.0)
    assert harness.loglog_slope([1, 10, 100], [1, 100, 10_000]) == pytest.approx(2.0)
