"""Double sliding-window receiver: detect -> LLR -> SCL decode -> SIC inside an
inner window, swept by an outer window over the whole observation.

Decoded packets are tracked globally, keyed by (message, absolute start), and
re-subtracted whenever a later outer window overlaps them, so an already
cancelled strong user never re-pollutes an overlapping window.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import detector, odma, polar
from .config import SystemConfig


@dataclass(frozen=True)
class DecodedEntry:
    message: np.ndarray
    abs_start: int
    pattern_index: int
    group_power: float
    samples: np.ndarray      # re-encoded packet, cached for cancellation


@dataclass
class DecodeStats:
    scl_attempts: int = 0
    decodes: int = 0
    duplicate_skips: int = 0
    re_subtractions: int = 0     # must stay 0: the key set forbids double SIC
    inner_calls: int = 0
    candidate_keys: set = field(default_factory=set)   # (abs_start, pattern) seen
    trace: list = field(default_factory=list)


def pattern_bits(pattern_index: int, b_p: int) -> np.ndarray:
    """Big-endian B_p-bit representation of a pattern index."""
    return np.array([(pattern_index >> (b_p - 1 - i)) & 1 for i in range(b_p)],
                    dtype=np.uint8)


def extract_llrs(residual: np.ndarray, cand: detector.Candidate,
                 patterns: odma.PatternMatrix, cfg: SystemConfig) -> np.ndarray:
    """Gather the candidate's active samples and scale to LLRs, treating
    residual interference as Gaussian noise.

    The effective variance is moment-matched at the occupied indices and
    floored at the AWGN level: sigma_hat^2 = max(sigma2, mean(s^2) - P_g).
    """
    p_g = odma.group_power(cand.pattern_index, cfg)
    s = residual[cand.start + patterns.indices[cand.pattern_index]]
    sigma_hat2 = max(cfg.sigma2, float(np.mean(s * s)) - p_g)
    return 2.0 * np.sqrt(p_g) * s / sigma_hat2


def decode_inner_window(residual: np.ndarray, window_abs_start: int,
                        decoded: dict, patterns: odma.PatternMatrix,
                        code: polar.PolarCode, cfg: SystemConfig,
                        preamble: odma.Preamble | None = None,
                        stats: DecodeStats | None = None) -> int:
    """Iterative detect/decode/SIC over one inner window (a residual view;
    subtractions propagate to the caller's buffer).  Returns new-decode count."""
    if stats is None:
        stats = DecodeStats()
    stats.inner_calls += 1
    total_new = 0
    for _ in range(cfg.n_max):
        cands = detector.detect(residual, patterns, cfg, preamble)
        d = 0
        for cand in cands:
            stats.candidate_keys.add((window_abs_start + cand.start, cand.pattern_index))
            llrs = extract_llrs(residual, cand, patterns, cfg)
            stats.scl_attempts += 1
            msg_c = polar.scl_decode(llrs, code, cfg.list_size)
            if msg_c is None:
                continue
            message = np.concatenate([pattern_bits(cand.pattern_index, cfg.B_p), msg_c])
            abs_start = window_abs_start + cand.start
            key = (message.tobytes(), abs_start)
            if key in decoded:
                stats.duplicate_skips += 1
                continue
            samples = odma.rebuild_packet_samples(message, patterns, code, cfg, preamble)
            residual[cand.start: cand.start + cfg.n] -= samples
            decoded[key] = DecodedEntry(message=message, abs_start=abs_start,
                                        pattern_index=cand.pattern_index,
                                        group_power=odma.group_power(cand.pattern_index, cfg),
                                        samples=samples)
            stats.decodes += 1
            d += 1
            total_new += 1
        if d == 0:
            break
    return total_new


def outer_window_starts(cfg: SystemConfig) -> list:
    """Outer-window start times: 0, delta*n, ... up to full start-time coverage.

    The final position is included (not stopped one short) so every start in
    [0, T) falls in the first packet of some inner window; for inner windows
    longer than 2 packets the sweep extends further and the trailing windows
    are clipped to the observed signal.
    """
    n, w = cfg.n, cfg.inner_len_packets
    last = cfg.T - (cfg.N_s - w + 1) * n
    return list(range(0, last + 1, cfg.delta * n))


def decode_stream_full(y: np.ndarray, patterns: odma.PatternMatrix,
                       code: polar.PolarCode, cfg: SystemConfig,
                       preamble: odma.Preamble | None = None,
                       collect_trace: bool = False):
    """Full double sliding-window sweep; returns (messages, entries, stats)."""
    n, w = cfg.n, cfg.inner_len_packets
    decoded: dict = {}
    stats = DecodeStats()
    y_len = len(y)
    for t_out in outer_window_starts(cfg):
        w_end = min(t_out + cfg.N_s * n, y_len)
        residual = y[t_out:w_end].copy()
        # cancel packets already decoded in overlapping earlier windows
        for entry in decoded.values():
            lo = max(entry.abs_start, t_out)
            hi = min(entry.abs_start + n, w_end)
            if lo < hi:
                residual[lo - t_out: hi - t_out] -= entry.samples[lo - entry.abs_start:
                                                                  hi - entry.abs_start]
        for i_out in range(cfg.n_out):
            for j in range(cfg.N_s - w + 1):
                s_abs = t_out + j * n
                # near the stream tail, shrink the window instead of skipping
                # it; detection needs at least two packet lengths of samples
                seg_len = min(w * n, y_len - s_abs)
                if seg_len < 2 * n:
                    break
                view = residual[j * n: j * n + seg_len]
                new = decode_inner_window(view, s_abs, decoded, patterns, code,
                                          cfg, preamble, stats)
                if collect_trace:
                    stats.trace.append({"outer_start": t_out, "outer_iter": i_out,
                                        "inner_pos": j, "new_decodes": new,
                                        "residual_energy": float(np.dot(view, view))})
    messages = []
    seen = set()
    for entry in decoded.values():
        b = entry.message.tobytes()
        if b not in seen:
            seen.add(b)
            messages.append(entry.message)
    return messages, list(decoded.values()), stats


def decode_stream(y: np.ndarray, patterns: odma.PatternMatrix, code: polar.PolarCode,
                  cfg: SystemConfig, preamble: odma.Preamble | None = None) -> list:
    """Final deduplicated message list L."""
    messages, _, _ = decode_stream_full(y, patterns, code, cfg, preamble)
    return messages


def compute_pupe(messages: list, arrivals: list) -> float:
    """Fraction of ground-truth arrivals whose message is missing from L."""
    if len(arrivals) == 0:
        return 0.0
    have = {np.asarray(m, dtype=np.uint8).tobytes() for m in messages}
    misses = sum(1 for a in arrivals if a.message.tobytes() not in have)
    return misses / len(arrivals)
