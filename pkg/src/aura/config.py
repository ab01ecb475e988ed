"""System configuration: all scalar parameters of the scheme plus power/Eb-N0 conversion."""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

DETECTOR_MODES = ("energy", "preamble")
ENERGY_METRICS = ("l1", "l2")


class ConfigError(ValueError):
    """Raised when a configuration violates an invariant."""


@dataclass(frozen=True)
class SystemConfig:
    """Immutable parameter set shared by every module.

    `detector_mode` selects the pattern-energy front end ("energy") or the
    preamble-correlation baseline ("preamble"); `n_p` must be positive in
    preamble mode and is ignored (forced 0) otherwise.
    """

    n: int = 2000            # packet length in channel uses
    B: int = 100             # message bits per user
    B_p: int = 4             # pattern-selector bits; M_p = 2**B_p
    r: int = 16              # CRC length in bits
    n_c: int = 256           # polar block length (power of two)
    n_d: int = 256           # occupied channel uses per packet (= n_c for BPSK)
    P: float = 1.0           # nominal per-symbol transmit power (linear)
    sigma2: float = 1.0      # AWGN variance
    K_a: float = 5.0         # mean arrivals per packet duration (normalized load)
    u: int = 3               # candidate-count margin over K_a
    N_s: int = 5             # outer window length in packets
    delta: int = 1           # outer-window shift in packets
    inner_len_packets: int = 2
    n_max: int = 8           # max inner-window decoding iterations
    n_out: int = 2           # outer iterations per outer-window position
    T: int = 20000           # observation horizon in channel uses
    list_size: int = 32
    power_groups: tuple = (1.5, 0.5)
    detector_mode: str = "energy"
    energy_metric: str = "l1"
    n_p: int = 0             # preamble length (0 unless preamble mode)
    seed: int = 0            # master PRNG seed

    def __post_init__(self):
        object.__setattr__(self, "power_groups", tuple(float(g) for g in self.power_groups))

    @property
    def M_p(self) -> int:
        return 1 << self.B_p

    @property
    def B_c(self) -> int:
        return self.B - self.B_p

    @property
    def k(self) -> int:
        """Polar information load: message part plus CRC."""
        return self.B_c + self.r

    @property
    def K_a_round(self) -> int:
        return int(round(self.K_a))

    @property
    def num_candidates(self) -> int:
        return self.K_a_round + self.u


def validate(cfg: SystemConfig) -> None:
    """Check every invariant; raise ConfigError naming the first violation."""
    def need(cond, msg):
        if not cond:
            raise ConfigError(msg)

    need(cfg.n > 0, f"n must be positive, got {cfg.n}")
    need(cfg.B > 0, f"B must be positive, got {cfg.B}")
    need(cfg.B_p >= 0, f"B_p must be non-negative, got {cfg.B_p}")
    need(cfg.r >= 0, f"r must be non-negative, got {cfg.r}")
    need(cfg.n_c > 0 and cfg.n_c & (cfg.n_c - 1) == 0,
         f"n_c must be a positive power of two, got {cfg.n_c}")
    need(cfg.B_c > 0, f"B_p + B_c = B requires B_c = B - B_p > 0, got B_c = {cfg.B_c}")
    need(cfg.k <= cfg.n_c,
         f"polar overload: B_c + r = {cfg.k} exceeds block length n_c = {cfg.n_c}")
    need(cfg.n_d == cfg.n_c,
         f"n_d must equal n_c for BPSK (one coded bit per occupied use), got n_d = {cfg.n_d}")
    need(cfg.n_p >= 0, f"n_p must be non-negative, got {cfg.n_p}")
    need(cfg.n_d + cfg.n_p <= cfg.n,
         f"n_d + n_p = {cfg.n_d + cfg.n_p} exceeds packet length n = {cfg.n}")
    need(cfg.P > 0, f"P must be positive, got {cfg.P}")
    need(cfg.sigma2 > 0, f"sigma2 must be positive, got {cfg.sigma2}")
    need(cfg.K_a > 0, f"K_a must be positive, got {cfg.K_a}")
    need(cfg.u >= 0, f"u must be non-negative, got {cfg.u}")
    need(cfg.N_s >= 2, f"N_s must be >= 2, got {cfg.N_s}")
    need(cfg.delta > 0, f"delta must be positive, got {cfg.delta}")
    need(cfg.inner_len_packets >= 2,
         f"inner window must span at least 2 packets, got {cfg.inner_len_packets}")
    need(cfg.inner_len_packets <= cfg.N_s,
         f"inner window ({cfg.inner_len_packets} packets) exceeds outer window N_s = {cfg.N_s}")
    need(cfg.n_max > 0, f"n_max must be positive, got {cfg.n_max}")
    need(cfg.n_out > 0, f"n_out must be positive, got {cfg.n_out}")
    need(cfg.T > 0 and cfg.T % cfg.n == 0,
         f"T must be a positive integer multiple of n, got T = {cfg.T}, n = {cfg.n}")
    need(cfg.T >= cfg.N_s * cfg.n,
         f"T = {cfg.T} must cover at least one outer window of {cfg.N_s * cfg.n}")
    need(cfg.list_size > 0, f"list_size must be positive, got {cfg.list_size}")
    need(len(cfg.power_groups) > 0, "power_groups must be nonempty")
    need(all(g > 0 for g in cfg.power_groups),
         f"power group multipliers must be positive, got {cfg.power_groups}")
    mean_g = sum(cfg.power_groups) / len(cfg.power_groups)
    need(abs(mean_g - 1.0) < 1e-9,
         f"power groups mean != 1 (got {mean_g}); average power constraint violated")
    need(cfg.M_p % len(cfg.power_groups) == 0,
         f"number of power groups {len(cfg.power_groups)} must divide M_p = {cfg.M_p}")
    need(cfg.detector_mode in DETECTOR_MODES,
         f"detector_mode must be one of {DETECTOR_MODES}, got {cfg.detector_mode!r}")
    need(cfg.energy_metric in ENERGY_METRICS,
         f"energy_metric must be one of {ENERGY_METRICS}, got {cfg.energy_metric!r}")
    if cfg.detector_mode == "preamble":
        need(cfg.n_p > 0, "preamble mode requires n_p > 0")
    else:
        need(cfg.n_p == 0, "n_p must be 0 unless detector_mode is 'preamble'")


def _energy_per_packet_over_p(cfg: SystemConfig) -> float:
    # Average packet energy divided by P: data symbols (group multipliers
    # average to 1) plus the fixed-power preamble when present.
    return float(cfg.n_d + cfg.n_p)


def eb_n0_db(cfg: SystemConfig) -> float:
    """Energy-per-bit over noise density, in dB; charges preamble energy when n_p > 0."""
    ratio = _energy_per_packet_over_p(cfg) * cfg.P / (2.0 * cfg.B * cfg.sigma2)
    return 10.0 * math.log10(ratio)


def power_for_eb_n0(cfg: SystemConfig, target_db: float) -> float:
    """Per-symbol power P achieving the given Eb/N0 (exact algebraic inverse)."""
    ratio = 10.0 ** (target_db / 10.0)
    return ratio * 2.0 * cfg.B * cfg.sigma2 / _energy_per_packet_over_p(cfg)


def with_eb_n0(cfg: SystemConfig, target_db: float) -> SystemConfig:
    return dataclasses.replace(cfg, P=power_for_eb_n0(cfg, target_db))


_FIELD_NAMES = {f.name for f in dataclasses.fields(SystemConfig)}


def to_dict(cfg: SystemConfig) -> dict:
    d = dataclasses.asdict(cfg)
    d["power_groups"] = list(cfg.power_groups)
    return d


def from_dict(d: dict) -> SystemConfig:
    unknown = set(d) - _FIELD_NAMES
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = SystemConfig(**d)
    validate(cfg)
    return cfg


def load_config(path) -> SystemConfig:
    """Load and validate a flat JSON config file; unknown keys are an error."""
    with open(path) as fh:
        return from_dict(json.load(fh))


def save_config(cfg: SystemConfig, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_dict(cfg), fh, indent=2, sort_keys=True)
        fh.write("\n")
