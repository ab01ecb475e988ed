"""Joint starting-time and pattern estimation inside an inner window.

Two front ends: the preamble-free pattern-energy metric (l1 norm of the
received samples gathered at a pattern's active indices) and the classic
preamble-correlation baseline.  Scores accumulate in ascending active-index
order, so a sequential recomputation reproduces them bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .config import SystemConfig
from .odma import PatternMatrix, Preamble


@dataclass(frozen=True)
class Candidate:
    start: int           # b, relative to the inner window, in [0, n)
    pattern_index: int
    score: float


@njit(cache=True)
def _score_table_kernel(vals, idx, n):
    m_p, n_d = idx.shape
    out = np.empty((n, m_p), dtype=np.float64)
    for i in range(m_p):
        for b in range(n):
            acc = 0.0
            for j in range(n_d):
                acc += vals[b + idx[i, j]]
            out[b, i] = acc
    return out


def _metric_values(segment: np.ndarray, metric: str) -> np.ndarray:
    if metric == "l1":
        return np.abs(segment)
    if metric == "l2":
        return segment * segment
    raise ValueError(f"unknown energy metric {metric!r}")


def score_table(segment: np.ndarray, patterns: PatternMatrix, cfg: SystemConfig) -> np.ndarray:
    """Energy e_{i,b} for every start b in [0, n) and pattern i; shape (n, M_p).

    `segment` must span at least 2n samples so every b admits a full packet.
    """
    if len(segment) < 2 * cfg.n:
        raise ValueError(f"segment must span at least 2n = {2 * cfg.n} samples")
    vals = np.ascontiguousarray(_metric_values(np.asarray(segment, dtype=np.float64),
                                               cfg.energy_metric))
    return _score_table_kernel(vals, patterns.indices, cfg.n)


def pattern_energy(y_b: np.ndarray, pattern_indices: np.ndarray,
                   metric: str = "l1") -> float:
    """Single-segment energy: sum of |y_b| (or y_b^2) over the active indices."""
    vals = _metric_values(np.asarray(y_b, dtype=np.float64), metric)
    acc = 0.0
    for j in pattern_indices:
        acc += vals[j]
    return acc


def detect_energy(y_s: np.ndarray, patterns: PatternMatrix, cfg: SystemConfig) -> list:
    """Preamble-free detection: per start b the survivor pattern is the energy
    argmax; return the K_a_round + u highest-scoring (b, i) pairs."""
    table = score_table(y_s, patterns, cfg)
    surv = np.argmax(table, axis=1)              # first max -> lowest pattern index
    surv_scores = table[np.arange(cfg.n), surv]
    order = np.argsort(-surv_scores, kind="stable")  # stable -> smaller b on ties
    picks = order[: cfg.num_candidates]
    return [Candidate(start=int(b), pattern_index=int(surv[b]),
                      score=float(surv_scores[b])) for b in picks]


def preamble_correlate(y_b: np.ndarray, preamble: Preamble) -> float:
    """Inner product of the first n_p samples with the shared preamble."""
    n_p = len(preamble.samples)
    return float(np.dot(np.asarray(y_b[:n_p], dtype=np.float64), preamble.samples))


def detect_preamble(y_s: np.ndarray, patterns: PatternMatrix, preamble: Preamble,
                    cfg: SystemConfig) -> list:
    """Baseline: starts from the preamble correlation peaks, patterns from the
    energy metric at each detected start."""
    y_s = np.asarray(y_s, dtype=np.float64)
    n_p = cfg.n_p
    # c_b for all b in [0, n) at once: valid cross-correlation with the preamble
    corr = np.correlate(y_s[: cfg.n + n_p - 1], preamble.samples, mode="valid")
    order = np.argsort(-corr, kind="stable")
    picks = order[: cfg.num_candidates]
    table = score_table(y_s, patterns, cfg)
    return [Candidate(start=int(b), pattern_index=int(np.argmax(table[b])),
                      score=float(corr[b])) for b in picks]


def detect(y_s: np.ndarray, patterns: PatternMatrix, cfg: SystemConfig,
           preamble: Preamble | None = None) -> list:
    if cfg.detector_mode == "preamble":
        return detect_preamble(y_s, patterns, preamble, cfg)
    return detect_energy(y_s, patterns, cfg)


def dump_score_table(table: np.ndarray, path) -> None:
    """CSV diagnostic dump of the full (b, pattern, score) table."""
    with open(path, "w") as fh:
        fh.write("b,pattern,score\n")
        for b in range(table.shape[0]):
            for i in range(table.shape[1]):
                fh.write(f"{b},{i},{float(table[b, i])!r}\n")
