"""Monte Carlo driver: trials, pooled-PUPE aggregation with Wilson intervals,
Eb/N0 sweeps, and the minimum-Eb/N0 search for a target PUPE.

PUPE is pooled across trials (sum of misses over sum of arrivals), the
load-weighted estimator; zero-arrival trials contribute nothing.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import channel, config as config_mod, odma, polar, receiver
from .config import SystemConfig

CSV_HEADER = "eb_n0_db,ka,n,n_c,inner_len,detector,trials,arrivals,misses,pupe,ci_lo,ci_hi,seed"


@dataclass(frozen=True)
class TrialResult:
    seed: int                 # trial index under the master seed
    K_aT: int
    decoded_count: int
    misses: int
    pupe: float
    detection_miss_count: int
    runtime_ms: float


@dataclass(frozen=True)
class SweepPoint:
    eb_n0_db: float
    trials: int
    arrivals: int
    misses: int
    mean_pupe: float
    ci95_lo: float
    ci95_hi: float


@dataclass(frozen=True)
class SweepResult:
    config: dict
    points: list
    target_eps: float | None = None


def wilson_interval(successes: int, total: int, z: float = 1.959963984540054):
    """95% Wilson score interval for a binomial proportion."""
    if total == 0:
        return 0.0, 1.0
    p = successes / total
    z2 = z * z
    denom = 1.0 + z2 / total
    center = (p + z2 / (2 * total)) / denom
    half = z * math.sqrt(p * (1 - p) / total + z2 / (4 * total * total)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def build_shared(cfg: SystemConfig):
    """Code, pattern matrix, and preamble shared by every trial of a run."""
    code = polar.construct(cfg.n_c, cfg.k, cfg.r)
    patterns = odma.gen_pattern_matrix(cfg)
    preamble = odma.gen_preamble(cfg)
    return code, patterns, preamble


def run_trial(cfg: SystemConfig, master_seed: int, trial_index: int,
              shared=None) -> TrialResult:
    """One independent realization; deterministic in (master_seed, trial_index)."""
    if shared is None:
        shared = build_shared(cfg)
    code, patterns, preamble = shared
    t0 = time.perf_counter()
    rng = np.random.default_rng([master_seed, trial_index])
    arrivals = channel.draw_arrivals(cfg, patterns, code, rng)
    real = channel.synthesize(arrivals, patterns, code, cfg, rng, preamble)
    messages, _, stats = receiver.decode_stream_full(real.y, patterns, code, cfg, preamble)
    have = {m.tobytes() for m in messages}
    misses = sum(1 for a in arrivals if a.message.tobytes() not in have)
    pupe = misses / len(arrivals) if arrivals else 0.0
    det_miss = sum(1 for a in arrivals
                   if (a.delta, a.pattern_index) not in stats.candidate_keys)
    runtime_ms = (time.perf_counter() - t0) * 1e3
    return TrialResult(seed=trial_index, K_aT=len(arrivals), decoded_count=len(messages),
                       misses=misses, pupe=pupe, detection_miss_count=det_miss,
                       runtime_ms=runtime_ms)


def _trial_worker(args):
    cfg, master_seed, trial_index = args
    return run_trial(cfg, master_seed, trial_index)


def run_trials(cfg: SystemConfig, master_seed: int, trials: int,
               workers: int = 1) -> list:
    """Trials 0..trials-1; result order (and content) independent of workers."""
    if trials <= 0:
        raise ValueError("no trials requested")
    if workers <= 1:
        shared = build_shared(cfg)
        return [run_trial(cfg, master_seed, i, shared) for i in range(trials)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_trial_worker,
                             [(cfg, master_seed, i) for i in range(trials)]))


def aggregate(results: list, eb_n0_db: float) -> SweepPoint:
    arrivals = sum(r.K_aT for r in results)
    misses = sum(r.misses for r in results)
    pupe = misses / arrivals if arrivals else 0.0
    lo, hi = wilson_interval(misses, arrivals)
    return SweepPoint(eb_n0_db=eb_n0_db, trials=len(results), arrivals=arrivals,
                      misses=misses, mean_pupe=pupe, ci95_lo=lo, ci95_hi=hi)


def run_sweep(cfg: SystemConfig, eb_n0_list, trials_per_point: int,
              master_seed: int | None = None, workers: int = 1,
              target_eps: float | None = None) -> SweepResult:
    if len(eb_n0_list) == 0:
        raise ValueError("empty Eb/N0 list")
    if trials_per_point <= 0:
        raise ValueError("no trials requested")
    if master_seed is None:
        master_seed = cfg.seed
    points = []
    for ebn0 in sorted(eb_n0_list):
        cfg_p = config_mod.with_eb_n0(cfg, ebn0)
        results = run_trials(cfg_p, master_seed, trials_per_point, workers)
        points.append(aggregate(results, ebn0))
    return SweepResult(config=config_mod.to_dict(cfg), points=points,
                       target_eps=target_eps)


def find_min_eb_n0(cfg: SystemConfig, eps: float, grid, trials: int,
                   master_seed: int | None = None, workers: int = 1):
    """Smallest grid point whose pooled-PUPE Wilson upper bound is <= eps.

    `grid` is (lo_db, hi_db, step_db); returns (eb_n0_db, SweepResult), with
    eb_n0_db None when no point qualifies.  Scans ascending and stops at the
    first qualifying point.
    """
    lo, hi, step = grid
    if not (lo < hi and step > 0):
        raise ValueError(f"bad grid {grid}: need lo < hi and step > 0")
    if master_seed is None:
        master_seed = cfg.seed
    points = []
    found = None
    ebn0 = lo
    while ebn0 <= hi + 1e-9:
        cfg_p = config_mod.with_eb_n0(cfg, ebn0)
        results = run_trials(cfg_p, master_seed, trials, workers)
        point = aggregate(results, ebn0)
        points.append(point)
        if point.ci95_hi <= eps:
            found = ebn0
            break
        ebn0 += step
    sweep = SweepResult(config=config_mod.to_dict(cfg), points=points, target_eps=eps)
    return found, sweep


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def sweep_rows(cfg: SystemConfig, sweep: SweepResult, master_seed: int) -> list:
    rows = []
    for p in sweep.points:
        rows.append([_fmt(p.eb_n0_db), _fmt(cfg.K_a), str(cfg.n), str(cfg.n_c),
                     str(cfg.inner_len_packets), cfg.detector_mode, str(p.trials),
                     str(p.arrivals), str(p.misses), _fmt(p.mean_pupe),
                     _fmt(p.ci95_lo), _fmt(p.ci95_hi), str(master_seed)])
    return rows


def write_csv(rows: list, path) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def read_csv(path) -> list:
    """Parse a results CSV back into dict rows (floats/ints restored)."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header {header}")
        rows = []
        for line in fh:
            vals = line.strip().split(",")
            row = dict(zip(header, vals))
            for key in ("eb_n0_db", "ka", "pupe", "ci_lo", "ci_hi"):
                row[key] = float(row[key])
            for key in ("n", "n_c", "inner_len", "trials", "arrivals", "misses", "seed"):
                row[key] = int(row[key])
            rows.append(row)
        return rows


def write_metadata(cfg: SystemConfig, path, extra: dict | None = None) -> None:
    meta = {"config": config_mod.to_dict(cfg),
            "pupe_aggregation": "pooled (sum misses / sum arrivals)",
            "zero_arrival_trials": "excluded by pooling"}
    if extra:
        meta.update(extra)
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
