"""On-off pattern codebook, message-to-pattern mapping, and transmit-frame assembly.

The pattern matrix is shared by all users; a user's column is selected by the
first B_p message bits, its power group by the column index.  BPSK map:
bit 0 -> +sqrt(P_g), bit 1 -> -sqrt(P_g).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polar as polar_mod
from .config import SystemConfig


@dataclass(frozen=True)
class PatternMatrix:
    """M_p on-off columns stored as sorted active-index lists (shape (M_p, n_d))."""
    indices: np.ndarray
    n: int
    n_p: int
    seed: int

    @property
    def M_p(self) -> int:
        return self.indices.shape[0]

    @property
    def n_d(self) -> int:
        return self.indices.shape[1]

    def column_mask(self, i: int) -> np.ndarray:
        mask = np.zeros(self.n, dtype=np.uint8)
        mask[self.indices[i]] = 1
        return mask

    def to_json_obj(self) -> dict:
        return {"n": self.n, "n_p": self.n_p, "seed": self.seed,
                "columns": self.indices.tolist()}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PatternMatrix":
        idx = np.asarray(obj["columns"], dtype=np.int64)
        return cls(indices=idx, n=int(obj["n"]), n_p=int(obj["n_p"]),
                   seed=int(obj["seed"]))


@dataclass(frozen=True)
class Preamble:
    """Shared +/-sqrt(P) sequence occupying [0, n_p) of every packet."""
    samples: np.ndarray


@dataclass(frozen=True)
class TxPacket:
    samples: np.ndarray
    pattern_index: int
    group_power: float
    message: np.ndarray


def gen_pattern_matrix(cfg: SystemConfig, seed: int | None = None) -> PatternMatrix:
    """Each column is an independent uniform n_d-subset of [n_p, n)."""
    if seed is None:
        seed = cfg.seed
    span = cfg.n - cfg.n_p
    if cfg.n_d > span:
        raise ValueError(f"pattern weight n_d = {cfg.n_d} infeasible in [{cfg.n_p}, {cfg.n})")
    rng = np.random.default_rng([seed, 0x0DA])
    cols = np.empty((cfg.M_p, cfg.n_d), dtype=np.int64)
    for i in range(cfg.M_p):
        cols[i] = np.sort(rng.choice(span, size=cfg.n_d, replace=False)) + cfg.n_p
    return PatternMatrix(indices=cols, n=cfg.n, n_p=cfg.n_p, seed=seed)


def gen_preamble(cfg: SystemConfig, seed: int | None = None) -> Preamble | None:
    if cfg.n_p == 0:
        return None
    if seed is None:
        seed = cfg.seed
    rng = np.random.default_rng([seed, 0x9EA])
    signs = 1.0 - 2.0 * rng.integers(0, 2, cfg.n_p).astype(np.float64)
    return Preamble(samples=np.sqrt(cfg.P) * signs)


def pattern_index_of(msg: np.ndarray, cfg: SystemConfig) -> int:
    """Integer value of the first B_p bits, big-endian."""
    idx = 0
    for b in np.asarray(msg[: cfg.B_p], dtype=np.uint8):
        idx = (idx << 1) | int(b)
    return idx


def group_power(pattern_index: int, cfg: SystemConfig) -> float:
    """Per-symbol power of the pattern's group under power diversity."""
    groups = cfg.power_groups
    if cfg.M_p % len(groups) != 0:
        raise ValueError(f"{len(groups)} power groups do not divide M_p = {cfg.M_p}")
    per_group = cfg.M_p // len(groups)
    return cfg.P * groups[pattern_index // per_group]


def build_packet(msg: np.ndarray, patterns: PatternMatrix, code: polar_mod.PolarCode,
                 cfg: SystemConfig, preamble: Preamble | None = None) -> TxPacket:
    """CRC + polar encode the last B_c bits and scatter the BPSK symbols onto
    the pattern column chosen by the first B_p bits."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (cfg.B,):
        raise ValueError(f"message must have length {cfg.B}, got {msg.shape}")
    p_idx = pattern_index_of(msg, cfg)
    p_g = group_power(p_idx, cfg)
    info = polar_mod.crc_append(msg[cfg.B_p:], code)
    bits = polar_mod.encode(info, code)
    symbols = np.sqrt(p_g) * (1.0 - 2.0 * bits.astype(np.float64))
    samples = np.zeros(cfg.n, dtype=np.float64)
    samples[patterns.indices[p_idx]] = symbols
    if cfg.n_p > 0:
        if preamble is None:
            raise ValueError("preamble mode requires a Preamble instance")
        samples[: cfg.n_p] = preamble.samples
    return TxPacket(samples=samples, pattern_index=p_idx, group_power=p_g, message=msg)


def rebuild_packet_samples(message: np.ndarray, patterns: PatternMatrix,
                           code: polar_mod.PolarCode, cfg: SystemConfig,
                           preamble: Preamble | None = None) -> np.ndarray:
    """Re-encode and re-modulate a decoded message for interference cancellation."""
    return build_packet(message, patterns, code, cfg, preamble).samples
