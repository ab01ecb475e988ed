"""Asynchronous Gaussian MAC: Poisson arrivals over [0, T), superposition, AWGN."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import odma
from .config import SystemConfig
from .polar import PolarCode


@dataclass(frozen=True)
class Arrival:
    message: np.ndarray      # B bits
    delta: int               # integer start time in [0, T)
    pattern_index: int
    group_power: float


@dataclass(frozen=True)
class ChannelRealization:
    y: np.ndarray            # length T + n
    arrivals: list           # ground truth, for scoring only
    sigma2: float


def draw_arrivals(cfg: SystemConfig, patterns: odma.PatternMatrix, code: PolarCode,
                  rng: np.random.Generator, fixed_count: int | None = None) -> list:
    """Draw K_{a,T} ~ Poisson(K_a * T / n) arrivals with uniform start times and
    uniform messages.  `fixed_count` pins the arrival count (debug aid)."""
    if fixed_count is None:
        count = rng.poisson(cfg.K_a * cfg.T / cfg.n)
    else:
        count = fixed_count
    arrivals = []
    for _ in range(count):
        delta = int(rng.integers(0, cfg.T))
        msg = rng.integers(0, 2, cfg.B).astype(np.uint8)
        p_idx = odma.pattern_index_of(msg, cfg)
        arrivals.append(Arrival(message=msg, delta=delta, pattern_index=p_idx,
                                group_power=odma.group_power(p_idx, cfg)))
    return arrivals


def synthesize(arrivals: list, patterns: odma.PatternMatrix, code: PolarCode,
               cfg: SystemConfig, rng: np.random.Generator,
               preamble: odma.Preamble | None = None) -> ChannelRealization:
    """Superpose every arrival at its offset and add AWGN over [0, T + n)."""
    y = np.zeros(cfg.T + cfg.n, dtype=np.float64)
    for a in arrivals:
        pkt = odma.build_packet(a.message, patterns, code, cfg, preamble)
        y[a.delta: a.delta + cfg.n] += pkt.samples
    if cfg.sigma2 > 0:
        y += rng.normal(0.0, np.sqrt(cfg.sigma2), y.shape)
    return ChannelRealization(y=y, arrivals=list(arrivals), sigma2=cfg.sigma2)


def dump_realization(real: ChannelRealization, signal_path, sidecar_path) -> None:
    """Write y as little-endian float64 plus a JSON ground-truth sidecar."""
    real.y.astype("<f8").tofile(signal_path)
    meta = {
        "sigma2": real.sigma2,
        "length": len(real.y),
        "arrivals": [
            {"delta": a.delta, "pattern_index": a.pattern_index,
             "group_power": a.group_power, "message": a.message.tolist()}
            for a in real.arrivals
        ],
    }
    with open(sidecar_path, "w") as fh:
        json.dump(meta, fh)
