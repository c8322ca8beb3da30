"""Vectorised numpy counterparts of :mod:`._loops` (same signatures)."""

import numpy as np

INF = np.int32(2**30)


def _gather(table, values, fill):
    """``values[table]`` with ``fill`` where the table is padded."""
    out = values[np.where(table < 0, 0, table)]
    out[table < 0] = fill
    return out


def bfs(table, source):
    n = table.shape[0]
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source])
    level = 0
    while frontier.size:
        level += 1
        nxt = table[frontier].ravel()
        nxt = nxt[nxt >= 0]
        nxt = np.unique(nxt[dist[nxt] < 0])
        dist[nxt] = level
        frontier = nxt
    return dist


def all_pairs_to(pred):
    n = pred.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        out[g] = bfs(pred, g)
    return out


def build_constraints(reg, ell, reg_end, agent, beta, succ):
    n_nodes, degree = succ.shape
    t0 = int(ell[agent])
    horizon = beta - t0
    allowed = np.ones((horizon + 1, n_nodes), dtype=bool)
    move_block = np.zeros((horizon + 1, n_nodes, degree), dtype=bool)
    others = np.arange(reg.shape[0]) != agent

    window = reg[others, t0 : beta + 1]
    ends = reg_end[others]
    times = np.arange(t0, beta + 1)
    live = times[None, :] <= ends[:, None]
    live[:, 0] = False
    rows, ks = np.nonzero(live)
    allowed[ks, window[rows, ks]] = False
    prev = window[rows, ks - 1]
    cur = window[rows, ks]
    moving = prev != cur
    ks, prev, cur = ks[moving], prev[moving], cur[moving]
    # the slot d with succ[cur, d] == prev; moving that way would swap
    k_idx, d = np.nonzero(succ[cur] == prev[:, None])
    move_block[ks[k_idx], cur[k_idx], d] = True

    # non-invasion of longer committed paths
    ell_o = ell[others]
    longer = np.nonzero(ell_o > t0 + 1)[0]
    if longer.size:
        span = int(ell_o[longer].max())
        seg = reg[others][longer, t0 + 2 : span + 1]
        ts = np.arange(t0 + 2, span + 1)
        mask = ts[None, :] <= ell_o[longer][:, None]
        r, c = np.nonzero(mask)
        invade = np.zeros(n_nodes, dtype=np.int32)
        np.maximum.at(invade, seg[r, c], ts[c] - 1 - t0)
        ks = np.arange(horizon + 1)[:, None]
        allowed &= ~((ks >= 1) & (ks <= invade[None, :]))
    return allowed, move_block


def space_time_search(succ, start, goal, allowed, move_block, h):
    horizon = allowed.shape[0] - 1
    n = allowed.shape[1]
    succ_ok = succ >= 0
    succ_safe = np.where(succ_ok, succ, 0)

    reach = np.zeros((horizon + 1, n), dtype=bool)
    reach[0, start] = True
    for k in range(1, horizon + 1):
        step = reach[k - 1].copy()
        open_ = succ_ok & ~move_block[k] & reach[k - 1][:, None]
        step[succ[open_]] = True
        reach[k] = allowed[k] & step

    path = np.full(horizon + 1, -1, dtype=np.int32)
    if not reach[horizon].any():
        return 0, -1, path

    stay_ok = np.ones(horizon + 2, dtype=bool)
    stay_ok[: horizon + 1] = np.logical_and.accumulate(allowed[::-1, goal])[::-1]
    cand = np.nonzero(reach[:, goal] & stay_ok[1:])[0]
    cost = np.full((horizon + 1, n), INF, dtype=np.int32)
    if cand.size:
        status, arrival, last = 1, int(cand[0]), int(cand[0])
        cost[last, goal] = 0
    else:
        status, arrival, last = 2, -1, horizon
        hv = np.where(reach[horizon], h, INF)
        cost[horizon, hv == hv.min()] = 0

    for k in range(last - 1, -1, -1):
        nxt = cost[k + 1]
        legal = succ_ok & ~move_block[k + 1]
        via = np.where(legal, nxt[succ_safe], INF)
        best = np.minimum(nxt, np.where(via < INF, via + 1, INF).min(axis=1))
        cost[k] = np.where(reach[k], best, INF)

    path[0] = start
    u = start
    for k in range(last):
        target = cost[k, u]
        options = [u] if cost[k + 1, u] == target else []
        for d, v in enumerate(succ[u]):
            if v < 0:
                break
            if not move_block[k + 1, u, d] and cost[k + 1, v] < INF and cost[k + 1, v] + 1 == target:
                options.append(int(v))
        u = max(options)
        path[k + 1] = u
    path[last + 1 :] = u
    return status, arrival, path


def disentangled_violation(paths, ell):
    n = paths.shape[0]
    if n < 2:
        return -1, -1
    a, b = np.triu_indices(n, 1)
    swap = ell[a] > ell[b]
    i = np.where(swap, b, a)
    j = np.where(swap, a, b)
    width = paths.shape[1]
    t = np.arange(width)
    pi, pj = paths[i], paths[j]
    li, lj = ell[i][:, None], ell[j][:, None]
    within = t[None, :] <= li
    vertex = (pi == pj) & within
    swaps = np.zeros_like(vertex)
    swaps[:, 1:] = (pi[:, 1:] == pj[:, :-1]) & (pi[:, :-1] == pj[:, 1:]) & within[:, 1:]
    last = np.take_along_axis(pi, ell[i][:, None], axis=1)
    tail = (pj == last) & (t[None, :] > li) & (t[None, :] <= lj)
    bad = np.nonzero((vertex | swaps | tail).any(axis=1))[0]
    if bad.size == 0:
        return -1, -1
    return int(a[bad[0]]), int(b[bad[0]])


def first_conflict(paths):
    n, width = paths.shape
    if n < 2:
        return 0, -1, -1, -1
    i, j = np.triu_indices(n, 1)
    pi, pj = paths[i], paths[j]
    vertex = pi == pj
    swaps = np.zeros_like(vertex)
    swaps[:, 1:] = (pi[:, 1:] == pj[:, :-1]) & (pi[:, :-1] == pj[:, 1:])
    hit = vertex | swaps
    if not hit.any():
        return 0, -1, -1, -1
    t = int(np.nonzero(hit.any(axis=0))[0].min())
    k = int(np.nonzero(hit[:, t])[0][0])
    kind = 1 if vertex[k, t] else 2
    return kind, int(i[k]), int(j[k]), t
