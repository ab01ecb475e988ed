"""CRC-aided polar coding: construction, encoding, and SCL decoding with CRC selection.

Bit/LLR conventions, shared with the modulation side:
  * bit 0 maps to +sqrt(P), bit 1 to -sqrt(P)
  * positive LLR means bit 0 is more likely
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .nr_reliability import reliability_order
from .scl import scl_decode_paths

# CRC-16-CCITT: x^16 + x^12 + x^5 + 1, zero init, zero xor-out.
CRC16_CCITT = 0x1021

_DEFAULT_POLYS = {0: 0, 8: 0x07, 16: CRC16_CCITT, 24: 0x864CFB}


def _poly_bits(poly: int, r: int) -> np.ndarray:
    """Divisor polynomial as a bit vector [1, p_{r-1}, ..., p_0]."""
    bits = np.zeros(r + 1, dtype=np.uint8)
    bits[0] = 1
    for i in range(r):
        bits[r - i] = (poly >> i) & 1
    return bits


def crc_remainder(msg_bits: np.ndarray, poly: int, r: int) -> np.ndarray:
    """Remainder of msg(x) * x^r modulo the generator, MSB first."""
    if r == 0:
        return np.zeros(0, dtype=np.uint8)
    div = _poly_bits(poly, r)
    work = np.concatenate([np.asarray(msg_bits, dtype=np.uint8),
                           np.zeros(r, dtype=np.uint8)])
    for i in range(len(msg_bits)):
        if work[i]:
            work[i:i + r + 1] ^= div
    return work[-r:]


@dataclass(frozen=True)
class PolarCode:
    n_c: int
    k: int
    frozen_set: np.ndarray          # sorted indices frozen to 0
    crc_poly: int
    r: int
    info_set: np.ndarray = field(default=None)       # sorted non-frozen indices
    frozen_mask: np.ndarray = field(default=None)    # uint8[n_c]
    crc_matrix: np.ndarray = field(default=None)     # (k - r, r): msg -> CRC bits
    check_matrix: np.ndarray = field(default=None)   # (k, r): info -> syndrome

    @property
    def k_msg(self) -> int:
        """Information bits excluding the CRC."""
        return self.k - self.r


def construct(n_c: int, k: int, crc_len: int = 16, crc_poly: int | None = None) -> PolarCode:
    """Build a polar code from the universal reliability sequence.

    The n_c - k least reliable synthetic channels are frozen; the order is
    deterministic, so transmitter and receiver always agree.
    """
    if k > n_c:
        raise ValueError(f"information load k = {k} exceeds block length n_c = {n_c}")
    if k < crc_len:
        raise ValueError(f"k = {k} cannot hold a {crc_len}-bit CRC")
    order = reliability_order(n_c)
    frozen = np.sort(order[: n_c - k])
    info = np.sort(order[n_c - k:])
    mask = np.zeros(n_c, dtype=np.uint8)
    mask[frozen] = 1
    if crc_poly is None:
        if crc_len not in _DEFAULT_POLYS:
            raise ValueError(f"no default CRC polynomial for length {crc_len}")
        crc_poly = _DEFAULT_POLYS[crc_len]

    k_msg = k - crc_len
    # CRC is linear with zero init/xor-out: precompute it as a GF(2) matrix,
    # and the parity-check map syndrome(info) = CRC(msg part) xor (crc part).
    crc_mat = np.zeros((k_msg, crc_len), dtype=np.uint8)
    for i in range(k_msg):
        unit = np.zeros(k_msg, dtype=np.uint8)
        unit[i] = 1
        crc_mat[i] = crc_remainder(unit, crc_poly, crc_len)
    check = np.zeros((k, crc_len), dtype=np.uint8)
    check[:k_msg] = crc_mat
    check[k_msg:] = np.eye(crc_len, dtype=np.uint8)

    return PolarCode(n_c=n_c, k=k, frozen_set=frozen, crc_poly=crc_poly, r=crc_len,
                     info_set=info, frozen_mask=mask, crc_matrix=crc_mat,
                     check_matrix=check)


def crc_append(msg: np.ndarray, code: PolarCode) -> np.ndarray:
    """Append the CRC of msg; output length k."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (code.k_msg,):
        raise ValueError(f"message must have length {code.k_msg}, got {msg.shape}")
    crc = msg @ code.crc_matrix % 2 if code.r else np.zeros(0, dtype=np.uint8)
    return np.concatenate([msg, crc.astype(np.uint8)])


def crc_check(info: np.ndarray, code: PolarCode) -> bool:
    info = np.asarray(info, dtype=np.uint8)
    if code.r == 0:
        return True
    return not (info @ code.check_matrix % 2).any()


def polar_transform(u: np.ndarray) -> np.ndarray:
    """The polar butterfly over GF(2); self-inverse."""
    a = np.asarray(u, dtype=np.uint8).reshape(-1, 1)
    while a.shape[0] > 1:
        nxt = np.empty((a.shape[0] // 2, a.shape[1] * 2), dtype=np.uint8)
        nxt[:, 0::2] = a[0::2] ^ a[1::2]
        nxt[:, 1::2] = a[1::2]
        a = nxt
    return a[0]


def encode(info: np.ndarray, code: PolarCode) -> np.ndarray:
    """Map k info bits (CRC included) to an n_c-bit codeword."""
    info = np.asarray(info, dtype=np.uint8)
    if info.shape != (code.k,):
        raise ValueError(f"info vector must have length {code.k}, got {info.shape}")
    u = np.zeros(code.n_c, dtype=np.uint8)
    u[code.info_set] = info
    return polar_transform(u)


def scl_decode(llrs: np.ndarray, code: PolarCode, list_size: int):
    """SCL decode; return the message (CRC stripped) of the best CRC-passing
    path, or None when no list path passes the CRC."""
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (code.n_c,):
        raise ValueError(f"LLR vector must have length {code.n_c}, got {llrs.shape}")
    uhat, metrics, active = scl_decode_paths(llrs, code.frozen_mask, list_size)
    slots = np.flatnonzero(active)
    if slots.size == 0:
        return None
    # ascending metric, slot index breaks ties
    slots = slots[np.argsort(metrics[slots], kind="stable")]
    infos = uhat[:, code.info_set].astype(np.uint8)
    syndromes = infos[slots] @ code.check_matrix % 2
    for row, slot in enumerate(slots):
        if not syndromes[row].any():
            return infos[slot][: code.k_msg]
    return None


def bpsk_llr(codeword_bits: np.ndarray, amplitude: float, sigma2: float) -> np.ndarray:
    """Noiseless-channel LLRs for a BPSK-mapped codeword (testing helper)."""
    s = amplitude * (1.0 - 2.0 * np.asarray(codeword_bits, dtype=np.float64))
    return 2.0 * amplitude * s / sigma2
