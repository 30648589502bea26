"""Hot-loop kernels for the local search.

Every function here operates on flat numpy arrays so the whole step loop can
be compiled with numba. Set NUMVC_BACKEND=python to force the plain
numpy/Python fallback (same source, no compilation); the two backends produce
bit-identical trajectories.
"""
from __future__ import annotations

import os

import numpy as np

_backend = os.environ.get("NUMVC_BACKEND", "numba").strip().lower()
if _backend not in ("numba", "python"):
    raise ValueError(f"NUMVC_BACKEND must be 'numba' or 'python', got {_backend!r}")

USE_NUMBA = _backend == "numba"
if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if USE_NUMBA:
    def _jit(f):
        return _njit(cache=True, nogil=True)(f)
else:
    def _jit(f):
        return f

BACKEND = "numba" if USE_NUMBA else "python"

# Slots of the per-run scalar array.
WSUM, COST, CSIZE, STEP, XSTEP, BEST, STEPS_BEST, NUNCOV = range(8)
N_SCALARS = 8

# Variant codes.
V_NUMVC, V_PAIR, V_NOFORGET, V_PD = 0, 1, 2, 3

_U64 = 0xFFFFFFFFFFFFFFFF
_MULT = 0x2545F4914F6CDD1D


if USE_NUMBA:
    @_jit
    def _rng_next(rng):
        # xorshift64*
        x = rng[0]
        x ^= x >> np.uint64(12)
        x ^= x << np.uint64(25)
        x ^= x >> np.uint64(27)
        rng[0] = x
        return x * np.uint64(_MULT)
else:
    def _rng_next(rng):
        # Must match the compiled version bit for bit; python ints + masking
        # avoid numpy scalar overflow warnings.
        x = int(rng[0])
        x ^= x >> 12
        x ^= (x << 25) & _U64
        x ^= x >> 27
        rng[0] = x
        return np.uint64((x * _MULT) & _U64)


def seed_rng(seed: int) -> np.ndarray:
    """Expand a seed into a nonzero 64-bit generator state (splitmix64)."""
    z = (int(seed) + 0x9E3779B97F4A7C15) & _U64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    z ^= z >> 31
    if z == 0:
        z = 0x9E3779B97F4A7C15
    return np.array([z], dtype=np.uint64)


@_jit
def _rand_below(rng, n):
    return np.int64(_rng_next(rng) % np.uint64(n))


@_jit
def _recompute(n, m, eu, ev, weight, in_c, dscore, scalars):
    """From-scratch dscore/cost/weight_sum repair after a global weight change."""
    wsum = np.int64(0)
    cost = np.int64(0)
    for v in range(n):
        dscore[v] = 0
    for e in range(m):
        w = weight[e]
        wsum += w
        a = eu[e]
        b = ev[e]
        if in_c[a] == 0 and in_c[b] == 0:
            cost += w
            dscore[a] += w
            dscore[b] += w
        elif in_c[a] == 1 and in_c[b] == 0:
            dscore[a] -= w
        elif in_c[a] == 0 and in_c[b] == 1:
            dscore[b] -= w
    scalars[WSUM] = wsum
    scalars[COST] = cost


@_jit
def _remove_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos, dscore,
                   conf, last_change, weight, uncov_list, uncov_pos, scalars, v):
    cs = scalars[CSIZE]
    p = c_pos[v]
    moved = c_list[cs - 1]
    c_list[p] = moved
    c_pos[moved] = p
    c_pos[v] = -1
    scalars[CSIZE] = cs - 1
    in_c[v] = 0
    dscore[v] = -dscore[v]
    last_change[v] = scalars[STEP]
    conf[v] = 0
    for i in range(adj_off[v], adj_off[v + 1]):
        z = adj_vert[i]
        e = adj_edge[i]
        w = weight[e]
        conf[z] = 1
        if in_c[z] == 0:
            nu = scalars[NUNCOV]
            uncov_list[nu] = e
            uncov_pos[e] = nu
            scalars[NUNCOV] = nu + 1
            scalars[COST] += w
            dscore[z] += w
        else:
            dscore[z] -= w


@_jit
def _add_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos, dscore,
                conf, last_change, weight, uncov_list, uncov_pos, scalars, v):
    cs = scalars[CSIZE]
    c_list[cs] = v
    c_pos[v] = cs
    scalars[CSIZE] = cs + 1
    in_c[v] = 1
    dscore[v] = -dscore[v]
    last_change[v] = scalars[STEP]
    for i in range(adj_off[v], adj_off[v + 1]):
        z = adj_vert[i]
        e = adj_edge[i]
        w = weight[e]
        conf[z] = 1
        if in_c[z] == 0:
            p = uncov_pos[e]
            moved = uncov_list[scalars[NUNCOV] - 1]
            uncov_list[p] = moved
            uncov_pos[moved] = p
            uncov_pos[e] = -1
            scalars[NUNCOV] -= 1
            scalars[COST] -= w
            dscore[z] -= w
        else:
            dscore[z] += w


@_jit
def _select_remove(c_list, dscore, last_change, scalars):
    """Highest dscore in C; ties to the oldest, then the lowest id."""
    best = c_list[0]
    bd = dscore[best]
    bl = last_change[best]
    for i in range(1, scalars[CSIZE]):
        v = c_list[i]
        d = dscore[v]
        if d > bd:
            best = v
            bd = d
            bl = last_change[v]
        elif d == bd:
            l = last_change[v]
            if l < bl or (l == bl and v < best):
                best = v
                bl = l
    return best


@_jit
def _select_cover_remove(c_list, dscore, scalars, rng):
    """Highest dscore in C, ties broken uniformly at random."""
    best = c_list[0]
    bd = dscore[best]
    cnt = 1
    for i in range(1, scalars[CSIZE]):
        v = c_list[i]
        d = dscore[v]
        if d > bd:
            best = v
            bd = d
            cnt = 1
        elif d == bd:
            cnt += 1
            if _rand_below(rng, cnt) == 0:
                best = v
    return best


@_jit
def _select_add(eu, ev, dscore, conf, last_change, e):
    """Eligible endpoint of e: conf 1, higher dscore, older, lower id; -1 if none."""
    a = eu[e]
    b = ev[e]
    ca = conf[a]
    cb = conf[b]
    if ca == 1 and cb == 0:
        return a
    if cb == 1 and ca == 0:
        return b
    if ca == 0 and cb == 0:
        return np.int64(-1)
    da = dscore[a]
    db = dscore[b]
    if da > db:
        return a
    if db > da:
        return b
    la = last_change[a]
    lb = last_change[b]
    if la < lb:
        return a
    if lb < la:
        return b
    return a if a < b else b


@_jit
def _adjacent_weight(adj_off, adj_vert, adj_edge, weight, v, u):
    """w({u,v}) via binary search in v's sorted neighbor list; 0 if absent."""
    lo = adj_off[v]
    hi = adj_off[v + 1]
    while lo < hi:
        mid = (lo + hi) // 2
        z = adj_vert[mid]
        if z == u:
            return weight[adj_edge[mid]]
        if z < u:
            lo = mid + 1
        else:
            hi = mid
    return np.int64(0)


@_jit
def _select_pair(eu, ev, adj_off, adj_vert, adj_edge, in_c, c_list, dscore,
                 conf, last_change, weight, scalars, e):
    """Max-benefit (u in C, eligible endpoint v of e) pair for the pair variant.

    Each pair is evaluated as dscore(u) + dscore(v) + w({u,v}); ties prefer
    the older u, then the older v, then lower ids.
    """
    bu = np.int64(-1)
    bv = np.int64(-1)
    bben = np.int64(-(2 ** 62))
    bu_age = np.int64(0)
    bv_age = np.int64(0)
    for k in range(2):
        v = eu[e] if k == 0 else ev[e]
        if conf[v] == 0:
            continue
        dv = dscore[v]
        av = last_change[v]
        for i in range(scalars[CSIZE]):
            u = c_list[i]
            ben = dscore[u] + dv + _adjacent_weight(adj_off, adj_vert,
                                                    adj_edge, weight, v, u)
            take = False
            if ben > bben:
                take = True
            elif ben == bben:
                au = last_change[u]
                if au < bu_age:
                    take = True
                elif au == bu_age:
                    if av < bv_age:
                        take = True
                    elif av == bv_age:
                        if u < bu or (u == bu and v < bv):
                            take = True
            if take:
                bu = u
                bv = v
                bben = ben
                bu_age = last_change[u]
                bv_age = av
    return bu, bv


@_jit
def _bump_weights(eu, ev, weight, dscore, uncov_list, scalars):
    for i in range(scalars[NUNCOV]):
        e = uncov_list[i]
        weight[e] += 1
        dscore[eu[e]] += 1
        dscore[ev[e]] += 1
    nu = scalars[NUNCOV]
    scalars[WSUM] += nu
    scalars[COST] += nu


@_jit
def _forget_rho(n, m, eu, ev, weight, in_c, dscore, scalars, rho):
    # Small epsilon compensates the binary representation of decimal rho, so
    # that e.g. 0.3 * 10 floors to 3, not 2.
    for e in range(m):
        weight[e] = np.int64(rho * weight[e] + 1e-6)
    _recompute(n, m, eu, ev, weight, in_c, dscore, scalars)


@_jit
def _forget_pd(n, m, eu, ev, weight, in_c, dscore, scalars):
    for e in range(m):
        if weight[e] > 1:
            weight[e] -= 1
    _recompute(n, m, eu, ev, weight, in_c, dscore, scalars)


@_jit
def _copy_best(n, in_c, best_in_c, scalars):
    for v in range(n):
        best_in_c[v] = in_c[v]
    scalars[BEST] = scalars[CSIZE]
    scalars[STEPS_BEST] = scalars[STEP]


@_jit
def _greedy_construct(n, eu, ev, adj_off, adj_vert, adj_edge, in_c, c_list,
                      c_pos, dscore, conf, last_change, weight, uncov_list,
                      uncov_pos, scalars, rng):
    """Add the max-dscore vertex (ties uniformly at random) until C covers."""
    while scalars[NUNCOV] > 0:
        best = np.int64(-1)
        bd = np.int64(-(2 ** 62))
        cnt = 0
        for v in range(n):
            if in_c[v] == 1:
                continue
            d = dscore[v]
            if d > bd:
                best = v
                bd = d
                cnt = 1
            elif d == bd:
                cnt += 1
                if _rand_below(rng, cnt) == 0:
                    best = v
        _add_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos, dscore,
                    conf, last_change, weight, uncov_list, uncov_pos, scalars, best)


@_jit
def _one_step(n, m, eu, ev, adj_off, adj_vert, adj_edge, in_c, c_list, c_pos,
              dscore, conf, last_change, weight, uncov_list, uncov_pos,
              best_in_c, scalars, rng, gamma_abs, rho, variant, pd):
    """One loop iteration. Returns 0 when a cover was found, 1 on an exchange."""
    if scalars[NUNCOV] == 0:
        if scalars[CSIZE] < scalars[BEST]:
            _copy_best(n, in_c, best_in_c, scalars)
        if scalars[CSIZE] > 0:
            u = _select_cover_remove(c_list, dscore, scalars, rng)
            _remove_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos,
                           dscore, conf, last_change, weight, uncov_list,
                           uncov_pos, scalars, u)
        scalars[STEP] += 1
        return 0

    # C can be empty here when the best cover has size 1; then there is
    # nothing to remove and the exchange degenerates to an add.
    if variant == V_PAIR:
        e = uncov_list[_rand_below(rng, scalars[NUNCOV])]
        if scalars[CSIZE] > 0:
            u, v = _select_pair(eu, ev, adj_off, adj_vert, adj_edge, in_c,
                                c_list, dscore, conf, last_change, weight,
                                scalars, e)
            if v < 0:
                raise RuntimeError("uncovered edge has no endpoint with conf_change = 1")
            _remove_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos,
                           dscore, conf, last_change, weight, uncov_list,
                           uncov_pos, scalars, u)
        else:
            v = _select_add(eu, ev, dscore, conf, last_change, e)
            if v < 0:
                raise RuntimeError("uncovered edge has no endpoint with conf_change = 1")
        _add_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos, dscore,
                    conf, last_change, weight, uncov_list, uncov_pos, scalars, v)
    else:
        if scalars[CSIZE] > 0:
            u = _select_remove(c_list, dscore, last_change, scalars)
            _remove_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos,
                           dscore, conf, last_change, weight, uncov_list,
                           uncov_pos, scalars, u)
        e = uncov_list[_rand_below(rng, scalars[NUNCOV])]
        v = _select_add(eu, ev, dscore, conf, last_change, e)
        if v < 0:
            raise RuntimeError("uncovered edge has no endpoint with conf_change = 1")
        _add_vertex(adj_off, adj_vert, adj_edge, in_c, c_list, c_pos, dscore,
                    conf, last_change, weight, uncov_list, uncov_pos, scalars, v)

    _bump_weights(eu, ev, weight, dscore, uncov_list, scalars)
    scalars[XSTEP] += 1
    if variant == V_NUMVC or variant == V_PAIR:
        if scalars[WSUM] >= gamma_abs * m:
            _forget_rho(n, m, eu, ev, weight, in_c, dscore, scalars, rho)
    elif variant == V_PD:
        if scalars[XSTEP] % pd == 0:
            _forget_pd(n, m, eu, ev, weight, in_c, dscore, scalars)
    scalars[STEP] += 1
    return 1


@_jit
def _run_steps(n, m, eu, ev, adj_off, adj_vert, adj_edge, in_c, c_list, c_pos,
               dscore, conf, last_change, weight, uncov_list, uncov_pos,
               best_in_c, scalars, rng, gamma_abs, rho, variant, pd,
               chunk, max_steps, target):
    """Run up to `chunk` iterations. 0: chunk done, 1: target reached, 2: step budget."""
    for _ in range(chunk):
        if scalars[BEST] <= target:
            return 1
        if scalars[STEP] >= max_steps:
            return 2
        _one_step(n, m, eu, ev, adj_off, adj_vert, adj_edge, in_c, c_list,
                  c_pos, dscore, conf, last_change, weight, uncov_list,
                  uncov_pos, best_in_c, scalars, rng, gamma_abs, rho,
                  variant, pd)
    if scalars[BEST] <= target:
        return 1
    if scalars[STEP] >= max_steps:
        return 2
    return 0
