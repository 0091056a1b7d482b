"""JIT-compiled Dinic kernel on two-limb int64 capacities.

Weight mantissas can exceed 64 bits, so each capacity is held as
(hi, lo) with lo < 2**62; all arithmetic keeps limbs normalized.  Exact
for totals below 2**123, which the dispatcher guards.  Produces the same
flow value and the same canonical residual-reachable source side as the
pure-Python backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit

LIMB_BITS = 62
LIMB_BASE = 1 << LIMB_BITS
LIMB_MASK = LIMB_BASE - 1


@njit(cache=False)
def _kernel(n, s, t, arc_to, cap_hi, cap_lo, adj_start, adj_arc):
    level = np.empty(n, np.int64)
    itp = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    path = np.empty(n + 1, np.int64)
    flow_hi = 0
    flow_lo = 0
    base = np.int64(LIMB_BASE)

    while True:
        for i in range(n):
            level[i] = -1
        level[s] = 0
        qh = 0
        qt = 1
        queue[0] = s
        while qh < qt:
            v = queue[qh]
            qh += 1
            lv = level[v] + 1
            for ai in range(adj_start[v], adj_start[v + 1]):
                a = adj_arc[ai]
                u = arc_to[a]
                if level[u] < 0 and (cap_hi[a] > 0 or cap_lo[a] > 0):
                    level[u] = lv
                    queue[qt] = u
                    qt += 1
        if level[t] < 0:
            break

        for i in range(n):
            itp[i] = adj_start[i]
        plen = 0
        v = s
        while True:
            if v == t:
                a = path[0]
                bh = cap_hi[a]
                bl = cap_lo[a]
                for i in range(1, plen):
                    a = path[i]
                    if cap_hi[a] < bh or (cap_hi[a] == bh and cap_lo[a] < bl):
                        bh = cap_hi[a]
                        bl = cap_lo[a]
                for i in range(plen):
                    a = path[i]
                    r = a ^ 1
                    cap_hi[a] -= bh
                    cap_lo[a] -= bl
                    if cap_lo[a] < 0:
                        cap_lo[a] += base
                        cap_hi[a] -= 1
                    cap_hi[r] += bh
                    cap_lo[r] += bl
                    if cap_lo[r] >= base:
                        cap_lo[r] -= base
                        cap_hi[r] += 1
                flow_hi += bh
                flow_lo += bl
                if flow_lo >= base:
                    flow_lo -= base
                    flow_hi += 1
                i = 0
                while cap_hi[path[i]] > 0 or cap_lo[path[i]] > 0:
                    i += 1
                plen = i
                v = arc_to[path[plen - 1]] if plen > 0 else s
                continue
            a = np.int64(-1)
            while itp[v] < adj_start[v + 1]:
                c = adj_arc[itp[v]]
                if (cap_hi[c] > 0 or cap_lo[c] > 0) and level[arc_to[c]] == level[v] + 1:
                    a = c
                    break
                itp[v] += 1
            if a >= 0:
                path[plen] = a
                plen += 1
                v = arc_to[a]
            elif v == s:
                break
            else:
                level[v] = -1
                a = path[plen - 1]
                plen -= 1
                v = arc_to[a ^ 1]

    reach = np.zeros(n, np.uint8)
    reach[s] = 1
    qh = 0
    qt = 1
    queue[0] = s
    while qh < qt:
        v = queue[qh]
        qh += 1
        for ai in range(adj_start[v], adj_start[v + 1]):
            a = adj_arc[ai]
            u = arc_to[a]
            if reach[u] == 0 and (cap_hi[a] > 0 or cap_lo[a] > 0):
                reach[u] = 1
                queue[qt] = u
                qt += 1
    return flow_hi, flow_lo, reach


def solve(n: int, s: int, t: int, edges: dict[tuple[int, int], int]):
    """Same contract as the pure backend: returns (flow, reach)."""
    m = len(edges)
    arc_to = np.empty(2 * m, np.int64)
    tails = np.empty(2 * m, np.int64)
    cap_hi = np.empty(2 * m, np.int64)
    cap_lo = np.empty(2 * m, np.int64)
    for i, ((u, v), w) in enumerate(edges.items()):
        hi = w >> LIMB_BITS
        lo = w & LIMB_MASK
        arc_to[2 * i] = v
        arc_to[2 * i + 1] = u
        tails[2 * i] = u
        tails[2 * i + 1] = v
        cap_hi[2 * i] = hi
        cap_hi[2 * i + 1] = hi
        cap_lo[2 * i] = lo
        cap_lo[2 * i + 1] = lo

    adj_arc = np.argsort(tails, kind="stable").astype(np.int64)
    counts = np.bincount(tails, minlength=n) if m else np.zeros(n, np.int64)
    adj_start = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=adj_start[1:])

    fh, fl, reach = _kernel(n, s, t, arc_to, cap_hi, cap_lo, adj_start, adj_arc)
    return (int(fh) << LIMB_BITS) + int(fl), [bool(r) for r in reach]
