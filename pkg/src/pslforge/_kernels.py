"""Compiled inner loops for the hill climber.

Arrays are int64 throughout. ``corr`` has length n with ``corr[0] == n`` and
``corr[u] == C_u``; it is kept consistent with ``seq`` by :func:`flip`.
"""

import numpy as np
from numba import njit

# search_chunk return codes
CHUNK_DONE = 0
GOAL = 1
STOPPED = 2
CAP = 3
INCONSISTENT = 4

# layout of the cfg array
CFG_N, CFG_P, CFG_T, CFG_HMIN, CFG_HMAX, CFG_GOAL, CFG_CAP, CFG_CHUNK, CFG_DEBUG = range(9)
# layout of the stats array
ST_RESTARTS, ST_QUAKES, ST_EVALS, ST_STEPS, ST_BEST_PSL, ST_BEST_FIT = range(6)
N_STATS = 6


@njit(cache=True, nogil=True, inline="always")
def ipow(a, p):
    if p == 4:
        a2 = a * a
        return a2 * a2
    r = a
    for _ in range(p - 1):
        r *= a
    return r


@njit(cache=True, nogil=True)
def full_aacf(seq, corr):
    n = seq.shape[0]
    for u in range(n):
        s = 0
        for j in range(n - u):
            s += seq[j] * seq[j + u]
        corr[u] = s


@njit(cache=True, nogil=True)
def fitness_of(corr, p):
    f = 0
    for u in range(1, corr.shape[0]):
        f += ipow(abs(corr[u]), p)
    return f


@njit(cache=True, nogil=True)
def peak_of(corr):
    pk = 0
    for u in range(1, corr.shape[0]):
        a = abs(corr[u])
        if a > pk:
            pk = a
    return pk


@njit(cache=True, nogil=True)
def flip(seq, corr, i):
    """Flip seq[i] and update corr in O(n)."""
    n = seq.shape[0]
    twice = 2 * seq[i]
    for u in range(1, n):
        d = 0
        if i + u < n:
            d += seq[i + u]
        if i - u >= 0:
            d += seq[i - u]
        corr[u] -= twice * d
    seq[i] = -seq[i]


@njit(cache=True, nogil=True)
def scan_neighbors(seq, corr, p, goal, cur_fit):
    """Evaluate all single-flip neighbours in ascending index order.

    Returns (index, fitness, psl, goal_hit, evaluated). With goal_hit the
    index is the first neighbour whose PSL <= goal. Otherwise index is the
    first neighbour of minimum fitness strictly below cur_fit, or -1.
    """
    n = seq.shape[0]
    best_i = -1
    best_f = cur_fit
    best_pk = 0
    for i in range(n):
        twice = 2 * seq[i]
        f = 0
        pk = 0
        pruned = False
        for u in range(1, n):
            d = 0
            if i + u < n:
                d += seq[i + u]
            if i - u >= 0:
                d += seq[i - u]
            a = abs(corr[u] - twice * d)
            if a > pk:
                pk = a
            f += ipow(a, p)
            # neither a goal hit nor an improvement any more
            if pk > goal and f >= best_f:
                pruned = True
                break
        if pruned:
            continue
        if pk <= goal:
            return i, f, pk, True, i + 1
        if f < best_f:
            best_f = f
            best_i = i
            best_pk = pk
    return best_i, best_f, best_pk, False, n


@njit(cache=True, nogil=True)
def fill_random(seq, rng):
    for i in range(seq.shape[0]):
        seq[i] = 2 * rng.integers(0, 2) - 1


@njit(cache=True, nogil=True)
def quake(seq, corr, anchor, anchor_corr, perm, hmin, hmax, rng):
    """Reset to the anchor, then flip h distinct random positions. Returns h."""
    n = seq.shape[0]
    seq[:] = anchor
    corr[:] = anchor_corr
    for i in range(n):
        perm[i] = i
    h = rng.integers(hmin, hmax + 1)
    # partial Fisher-Yates: perm[:h] is a uniform h-subset
    for k in range(h):
        j = rng.integers(k, n)
        tmp = perm[k]
        perm[k] = perm[j]
        perm[j] = tmp
        flip(seq, corr, perm[k])
    return h


@njit(cache=True, nogil=True)
def _track(seq, pk, f, best_seq, stats):
    if pk < stats[ST_BEST_PSL] or (pk == stats[ST_BEST_PSL] and f < stats[ST_BEST_FIT]):
        stats[ST_BEST_PSL] = pk
        stats[ST_BEST_FIT] = f
        best_seq[:] = seq


@njit(cache=True, nogil=True)
def _consistent(seq, corr, scratch, p, cur_fit):
    full_aacf(seq, scratch)
    for u in range(seq.shape[0]):
        if scratch[u] != corr[u]:
            return False
    return fitness_of(scratch, p) == cur_fit


@njit(cache=True, nogil=True)
def search_chunk(seq, corr, anchor, anchor_corr, best_seq, perm, scratch, cfg, stats, stop, rng):
    """Run shotgun hill climbing until goal, stop flag, restart cap, or chunk end.

    Each call starts from a fresh random sequence and only returns at a
    restart boundary (or on goal/stop), so consecutive calls continue one
    deterministic trajectory driven by ``rng``.
    """
    p = cfg[CFG_P]
    t = cfg[CFG_T]
    hmin = cfg[CFG_HMIN]
    hmax = cfg[CFG_HMAX]
    goal = cfg[CFG_GOAL]
    cap = cfg[CFG_CAP]
    chunk = cfg[CFG_CHUNK]
    debug = cfg[CFG_DEBUG]
    done_here = 0
    while True:
        fill_random(seq, rng)
        full_aacf(seq, corr)
        best_fit = fitness_of(corr, p)
        glob_fit = best_fit
        anchor[:] = seq
        anchor_corr[:] = corr
        left = t
        pk = peak_of(corr)
        _track(seq, pk, best_fit, best_seq, stats)
        if pk <= goal:
            return GOAL
        while True:
            if stop[0] != 0:
                return STOPPED
            stats[ST_STEPS] += 1
            if debug > 0 and stats[ST_STEPS] % debug == 0:
                if not _consistent(seq, corr, scratch, p, best_fit):
                    return INCONSISTENT
            i, f, pk, hit, evaluated = scan_neighbors(seq, corr, p, goal, best_fit)
            stats[ST_EVALS] += evaluated
            if hit:
                flip(seq, corr, i)
                _track(seq, pk, f, best_seq, stats)
                return GOAL
            if i >= 0:
                flip(seq, corr, i)
                best_fit = f
                _track(seq, pk, f, best_seq, stats)
                continue
            # local minimum
            if best_fit < glob_fit:
                glob_fit = best_fit
                anchor[:] = seq
                anchor_corr[:] = corr
                left = t
                continue
            left -= 1
            if left <= 0:
                break
            quake(seq, corr, anchor, anchor_corr, perm, hmin, hmax, rng)
            stats[ST_QUAKES] += 1
            best_fit = fitness_of(corr, p)
            pk = peak_of(corr)
            _track(seq, pk, best_fit, best_seq, stats)
            if pk <= goal:
                return GOAL
        stats[ST_RESTARTS] += 1
        done_here += 1
        if stats[ST_RESTARTS] >= cap:
            return CAP
        if done_here >= chunk:
            return CHUNK_DONE
