import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aura import config, harness
from aura.config import SystemConfig

# tiny geometry so full trials stay fast
TINY = SystemConfig(n=400, n_c=128, n_d=128, B=60, B_p=4, r=16, T=2000,
                    K_a=2.0, u=1, seed=21)


def test_wilson_against_statsmodels():
    from statsmodels.stats.proportion import proportion_confint
    for m, n in [(0, 50), (3, 50), (25, 50), (50, 50), (7, 1234)]:
        lo, hi = harness.wilson_interval(m, n)
        slo, shi = proportion_confint(m, n, alpha=0.05, method="wilson")
        assert lo == pytest.approx(slo, abs=1e-9)
        assert hi == pytest.approx(shi, abs=1e-9)


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=1, max_value=200))
def test_wilson_bounds_contain_estimate(m, n):
    m = min(m, n)
    lo, hi = harness.wilson_interval(m, n)
    p = m / n
    assert 0.0 <= lo <= p + 1e-12 and p - 1e-12 <= hi <= 1.0
    assert hi > 0.0  # finite samples can never certify exactly zero


def test_run_trial_deterministic():
    cfg = config.with_eb_n0(TINY, 12.0)
    a = harness.run_trial(cfg, 5, 3)
    b = harness.run_trial(cfg, 5, 3)
    assert (a.K_aT, a.decoded_count, a.misses, a.pupe, a.detection_miss_count) == \
           (b.K_aT, b.decoded_count, b.misses, b.pupe, b.detection_miss_count)


def test_run_trial_noiseless_perfect():
    cfg = dataclasses.replace(TINY, sigma2=1e-12)
    cfg = dataclasses.replace(cfg, P=1.0)
    for i in range(3):
        r = harness.run_trial(cfg, 9, i)
        assert r.misses == 0 and r.pupe == 0.0


def test_poisson_arrival_statistics_over_trials():
    cfg = config.with_eb_n0(TINY, 15.0)
    shared = harness.build_shared(cfg)
    lam = cfg.K_a * cfg.T / cfg.n
    counts = [harness.run_trial(cfg, 31, i, shared).K_aT for i in range(60)]
    assert abs(np.mean(counts) - lam) < 3 * np.sqrt(lam / len(counts))


def test_workers_do_not_change_results():
    cfg = config.with_eb_n0(TINY, 12.0)
    seq = harness.run_trials(cfg, 7, 4, workers=1)
    par = harness.run_trials(cfg, 7, 4, workers=2)
    for a, b in zip(seq, par):
        assert (a.seed, a.K_aT, a.misses, a.pupe) == (b.seed, b.K_aT, b.misses, b.pupe)


def test_aggregate_is_pooled():
    cfg = config.with_eb_n0(TINY, 12.0)
    results = harness.run_trials(cfg, 11, 6)
    point = harness.aggregate(results, 12.0)
    # oracle: recompute the pooled ratio from the raw per-trial records
    arrivals = sum(r.K_aT for r in results)
    misses = sum(r.misses for r in results)
    assert point.arrivals == arrivals and point.misses == misses
    assert point.mean_pupe == (misses / arrivals if arrivals else 0.0)
    lo, hi = harness.wilson_interval(misses, arrivals)
    assert (point.ci95_lo, point.ci95_hi) == (lo, hi)


def test_run_sweep_rejects_degenerate_inputs():
    with pytest.raises(ValueError, match="empty"):
        harness.run_sweep(TINY, [], 5)
    with pytest.raises(ValueError, match="no trials"):
        harness.run_sweep(TINY, [5.0], 0)


def test_find_min_eb_n0_vacuous_target():
    found, sweep = harness.find_min_eb_n0(TINY, 1.0, (3.0, 6.0, 1.0), trials=2)
    assert found == 3.0
    assert len(sweep.points) == 1


def test_find_min_eb_n0_impossible_target():
    found, sweep = harness.find_min_eb_n0(TINY, 0.0, (14.0, 15.0, 1.0), trials=2)
    assert found is None
    assert len(sweep.points) == 2  # whole grid scanned


def test_find_min_eb_n0_rejects_bad_grid():
    with pytest.raises(ValueError, match="grid"):
        harness.find_min_eb_n0(TINY, 0.05, (5.0, 3.0, 1.0), trials=2)


def test_csv_round_trip(tmp_path):
    cfg = config.with_eb_n0(TINY, 12.0)
    sweep = harness.run_sweep(cfg, [10.0, 12.0], 2, master_seed=13)
    rows = harness.sweep_rows(cfg, sweep, 13)
    path = tmp_path / "out.csv"
    harness.write_csv(rows, path)
    back = harness.read_csv(path)
    assert len(back) == 2
    for row, p in zip(back, sweep.points):
        assert row["eb_n0_db"] == p.eb_n0_db
        assert row["pupe"] == p.mean_pupe
        assert row["ci_lo"] == p.ci95_lo and row["ci_hi"] == p.ci95_hi
        assert row["arrivals"] == p.arrivals and row["misses"] == p.misses
        assert row["seed"] == 13 and row["detector"] == "energy"


def test_read_csv_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError, match="header"):
        harness.read_csv(path)


def test_metadata_sidecar(tmp_path):
    import json
    path = tmp_path / "m.json"
    harness.write_metadata(TINY, path, extra={"note": 1})
    meta = json.loads(path.read_text())
    assert meta["config"]["n"] == TINY.n
    assert meta["note"] == 1
