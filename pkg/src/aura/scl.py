"""Numba kernel for successive cancellation list decoding.

LLR sign convention: positive => bit 0 more likely.  Path metrics use the
min-sum approximation (penalty |llr| when the chosen bit disagrees with the
hard decision).  All tie-breaks are deterministic: candidate order is
(path slot, bit 0 first) and the survivor sort is stable.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _level_offsets(n, m):
    off = np.zeros(m + 2, dtype=np.int64)
    for lam in range(1, m + 2):
        off[lam] = off[lam - 1] + (n >> (lam - 1))
    return off


@njit(cache=True)
def _scl_core(llr_ch, frozen, L):
    n = llr_ch.shape[0]
    m = 0
    while (1 << m) < n:
        m += 1
    off = _level_offsets(n, m)
    tot = off[m + 1]

    P = np.zeros((L, tot), dtype=np.float64)
    C = np.zeros((L, tot, 2), dtype=np.int8)
    uhat = np.zeros((L, n), dtype=np.int8)
    pm = np.zeros(L, dtype=np.float64)
    active = np.zeros(L, dtype=np.int8)
    active[0] = 1
    n_active = 1
    P[0, :n] = llr_ch

    cand_metric = np.empty(2 * L, dtype=np.float64)
    cand_path = np.empty(2 * L, dtype=np.int64)
    cand_bit = np.empty(2 * L, dtype=np.int8)
    order = np.empty(2 * L, dtype=np.int64)
    keep = np.zeros(2 * L, dtype=np.int8)
    child_cnt = np.zeros(L, dtype=np.int8)

    for phi in range(n):
        # LLR recomputation down to the leaf for every active path
        if phi == 0:
            t = m
        else:
            t = 0
            x = phi
            while x & 1 == 0:
                t += 1
                x >>= 1
        lam0 = m - t
        if lam0 < 1:
            lam0 = 1
        for l in range(L):
            if active[l] == 0:
                continue
            for lam in range(lam0, m + 1):
                phi_l = phi >> (m - lam)
                sz = n >> lam
                src = off[lam - 1]
                dst = off[lam]
                if phi_l & 1 == 0:
                    for beta in range(sz):
                        a = P[l, src + 2 * beta]
                        b = P[l, src + 2 * beta + 1]
                        sa = -a if a < 0 else a
                        sb = -b if b < 0 else b
                        mn = sa if sa < sb else sb
                        if (a < 0) != (b < 0):
                            mn = -mn
                        P[l, dst + beta] = mn
                else:
                    for beta in range(sz):
                        a = P[l, src + 2 * beta]
                        b = P[l, src + 2 * beta + 1]
                        u = C[l, dst + beta, 0]
                        if u == 0:
                            P[l, dst + beta] = a + b
                        else:
                            P[l, dst + beta] = b - a
        leaf = off[m]
        if frozen[phi] == 1:
            for l in range(L):
                if active[l] == 0:
                    continue
                llr = P[l, leaf]
                if llr < 0:
                    pm[l] += -llr
                uhat[l, phi] = 0
                C[l, leaf, phi & 1] = 0
        else:
            # Fork every active path on bit value; keep the L best candidates.
            nc = 0
            for l in range(L):
                if active[l] == 0:
                    continue
                llr = P[l, leaf]
                pen = -llr if llr < 0 else llr
                m0 = pm[l] + (pen if llr < 0 else 0.0)
                m1 = pm[l] + (pen if llr >= 0 else 0.0)
                cand_metric[nc] = m0
                cand_path[nc] = l
                cand_bit[nc] = 0
                nc += 1
                cand_metric[nc] = m1
                cand_path[nc] = l
                cand_bit[nc] = 1
                nc += 1
            n_keep = nc if nc < L else L
            # stable insertion sort of candidate indices by metric
            for i in range(nc):
                order[i] = i
            for i in range(1, nc):
                oi = order[i]
                key = cand_metric[oi]
                j = i - 1
                while j >= 0 and cand_metric[order[j]] > key:
                    order[j + 1] = order[j]
                    j -= 1
                order[j + 1] = oi
            for i in range(nc):
                keep[i] = 0
            for i in range(n_keep):
                keep[order[i]] = 1
            for l in range(L):
                child_cnt[l] = 0
            for i in range(nc):
                if keep[i] == 1:
                    child_cnt[cand_path[i]] += 1
            # parents losing every child free their slots
            for l in range(L):
                if active[l] == 1 and child_cnt[l] == 0:
                    active[l] = 0
            # place kept children: first child reuses the parent slot,
            # the second copies into a free slot
            placed_first = np.zeros(L, dtype=np.int8)
            for i in range(nc):
                if keep[i] == 0:
                    continue
                par = cand_path[i]
                bit = cand_bit[i]
                if placed_first[par] == 0:
                    slot = par
                    placed_first[par] = 1
                else:
                    slot = -1
                    for s in range(L):
                        if active[s] == 0:
                            slot = s
                            break
                    active[slot] = 1
                    P[slot, :] = P[par, :]
                    C[slot, :, :] = C[par, :, :]
                    uhat[slot, :] = uhat[par, :]
                uhat[slot, phi] = bit
                C[slot, leaf, phi & 1] = bit
                pm[slot] = cand_metric[i]
            n_active = 0
            for l in range(L):
                if active[l] == 1:
                    n_active += 1
        # propagate partial-sum bits while the phase is odd
        if phi & 1 == 1:
            for l in range(L):
                if active[l] == 0:
                    continue
                lam = m
                psi = phi
                while psi & 1 == 1 and lam >= 1:
                    psi2 = psi >> 1
                    sz = n >> lam
                    src = off[lam]
                    dst = off[lam - 1]
                    ph = psi2 & 1
                    for beta in range(sz):
                        c0 = C[l, src + beta, 0]
                        c1 = C[l, src + beta, 1]
                        C[l, dst + 2 * beta, ph] = c0 ^ c1
                        C[l, dst + 2 * beta + 1, ph] = c1
                    lam -= 1
                    psi = psi2

    return uhat, pm, active


def scl_decode_paths(llr_ch, frozen_mask, list_size):
    """Run SCL; return (uhat, metrics, active) for all list slots.

    `uhat` holds the decided bits u_0..u_{n-1} per path slot; inactive slots
    must be ignored.  Callers select among active paths by ascending metric
    with slot index as the tie-break.
    """
    return _scl_core(np.ascontiguousarray(llr_ch, dtype=np.float64),
                     np.ascontiguousarray(frozen_mask, dtype=np.uint8),
                     int(list_size))
