"""Loop-form kernels, compiled with numba when enabled.

All graph tables are dense ``(V, D)`` int32 arrays padded with ``-1``.
Paths are ``(n_agents, T)`` int32 arrays padded with ``-1`` past each
agent's last registered timestep.
"""

import numpy as np

from .._accel import njit

INF = np.int32(2**30)


@njit
def bfs(table, source):
    n = table.shape[0]
    dist = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(table.shape[1]):
            v = table[u, k]
            if v < 0:
                break
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist


@njit
def all_pairs_to(pred):
    n = pred.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        out[g, :] = bfs(pred, g)
    return out


@njit
def build_constraints(reg, ell, reg_end, agent, beta, succ):
    """Per-layer vertex mask and edge blocks for agent ``agent``'s search.

    Layer ``k`` is timestep ``ell[agent] + k``.  ``move_block[k, u, d]`` forbids
    moving from ``u`` to ``succ[u, d]`` between layers ``k - 1`` and ``k``.
    """
    n_nodes, degree = succ.shape
    t0 = ell[agent]
    horizon = beta - t0
    allowed = np.ones((horizon + 1, n_nodes), dtype=np.bool_)
    move_block = np.zeros((horizon + 1, n_nodes, degree), dtype=np.bool_)
    invade = np.zeros(n_nodes, dtype=np.int32)
    for j in range(reg.shape[0]):
        if j == agent:
            continue
        last = reg_end[j]
        for k in range(1, horizon + 1):
            t = t0 + k
            if t > last:
                break
            v = reg[j, t]
            allowed[k, v] = False
            u = reg[j, t - 1]
            if u != v:
                # j moves u -> v, so v -> u would swap with it
                for d in range(degree):
                    if succ[v, d] == u:
                        move_block[k, v, d] = True
                        break
        # a shorter path may not step on nodes the longer committed path
        # still has to visit
        for t in range(t0 + 2, ell[j] + 1):
            u = reg[j, t]
            lim = t - 1 - t0
            if lim > invade[u]:
                invade[u] = lim
    for u in range(n_nodes):
        for k in range(1, invade[u] + 1):
            if k > horizon:
                break
            allowed[k, u] = False
    return allowed, move_block


@njit
def space_time_search(succ, start, goal, allowed, move_block, h):
    horizon = allowed.shape[0] - 1
    n = allowed.shape[1]
    degree = succ.shape[1]
    reach = np.zeros((horizon + 1, n), dtype=np.bool_)
    reach[0, start] = True
    for k in range(1, horizon + 1):
        for u in range(n):
            if not reach[k - 1, u]:
                continue
            if allowed[k, u]:
                reach[k, u] = True
            for d in range(degree):
                v = succ[u, d]
                if v < 0:
                    break
                if allowed[k, v] and not move_block[k, u, d]:
                    reach[k, v] = True

    path = np.full(horizon + 1, -1, dtype=np.int32)
    any_end = False
    for v in range(n):
        if reach[horizon, v]:
            any_end = True
            break
    if not any_end:
        return 0, -1, path

    # earliest timestep after which the agent can rest on its goal
    arrival = -1
    stay_ok = True
    for k in range(horizon, -1, -1):
        if reach[k, goal] and stay_ok:
            arrival = k
        stay_ok = stay_ok and allowed[k, goal]
        if not stay_ok:
            break

    cost = np.full((horizon + 1, n), INF, dtype=np.int32)
    if arrival >= 0:
        status = 1
        last = arrival
        cost[last, goal] = 0
    else:
        status = 2
        last = horizon
        best = INF
        for v in range(n):
            if reach[horizon, v] and h[v] < best:
                best = h[v]
        for v in range(n):
            if reach[horizon, v] and h[v] == best:
                cost[horizon, v] = 0

    # fewest remaining moves from (u, k); unreachable states stay at INF
    for k in range(last - 1, -1, -1):
        for u in range(n):
            if not reach[k, u]:
                continue
            best = cost[k + 1, u]
            for d in range(degree):
                v = succ[u, d]
                if v < 0:
                    break
                if move_block[k + 1, u, d]:
                    continue
                c = cost[k + 1, v]
                if c < INF and c + 1 < best:
                    best = c + 1
            cost[k, u] = best

    path[0] = start
    u = start
    for k in range(last):
        target = cost[k, u]
        choice = -1
        if cost[k + 1, u] == target:
            choice = u
        for d in range(degree):
            v = succ[u, d]
            if v < 0:
                break
            if move_block[k + 1, u, d]:
                continue
            if cost[k + 1, v] < INF and cost[k + 1, v] + 1 == target:
                if choice < 0 or v > choice:
                    choice = v
        path[k + 1] = choice
        u = choice
    for k in range(last + 1, horizon + 1):
        path[k] = u
    return status, arrival, path


@njit
def disentangled_violation(paths, ell):
    n = paths.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            if ell[a] <= ell[b]:
                i = a
                j = b
            else:
                i = b
                j = a
            li = ell[i]
            bad = False
            for t in range(li + 1):
                if paths[i, t] == paths[j, t]:
                    bad = True
                    break
                if t > 0 and paths[i, t] == paths[j, t - 1] and paths[i, t - 1] == paths[j, t]:
                    bad = True
                    break
            if not bad:
                last = paths[i, li]
                for t in range(li + 1, ell[j] + 1):
                    if paths[j, t] == last:
                        bad = True
                        break
            if bad:
                return a, b
    return -1, -1


@njit
def first_conflict(paths):
    n = paths.shape[0]
    for t in range(paths.shape[1]):
        for i in range(n):
            for j in range(i + 1, n):
                if paths[i, t] == paths[j, t]:
                    return 1, i, j, t
                if t > 0 and paths[i, t] == paths[j, t - 1] and paths[i, t - 1] == paths[j, t]:
                    return 2, i, j, t
    return 0, -1, -1, -1
