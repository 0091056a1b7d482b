"""Dinic blocking-flow max flow on Python integers.

Reference backend: exact for arbitrarily wide capacities.  Arcs are stored
in pairs, arc ``a ^ 1`` is the reverse of arc ``a``; an undirected edge of
weight w becomes one pair with capacity w on both arcs.
"""

from __future__ import annotations

from collections import deque


def solve(n: int, s: int, t: int, edges: dict[tuple[int, int], int]):
    """Max flow / canonical min cut.  Returns (flow, reach) where reach[v]
    marks residual reachability from s, i.e. the minimal source side."""
    arc_to: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for (u, v), w in edges.items():
        a = len(arc_to)
        arc_to.append(v)
        arc_to.append(u)
        cap.append(w)
        cap.append(w)
        adj[u].append(a)
        adj[v].append(a + 1)

    flow = 0
    while True:
        level = [-1] * n
        level[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            lv = level[v] + 1
            for a in adj[v]:
                u = arc_to[a]
                if level[u] < 0 and cap[a] > 0:
                    level[u] = lv
                    q.append(u)
        if level[t] < 0:
            break

        it = [0] * n
        path: list[int] = []
        v = s
        while True:
            if v == t:
                aug = min(cap[a] for a in path)
                flow += aug
                for a in path:
                    cap[a] -= aug
                    cap[a ^ 1] += aug
                i = 0
                while cap[path[i]] > 0:
                    i += 1
                del path[i:]
                v = arc_to[path[-1]] if path else s
                continue
            arcs = adj[v]
            a = -1
            while it[v] < len(arcs):
                a = arcs[it[v]]
                if cap[a] > 0 and level[arc_to[a]] == level[v] + 1:
                    break
                it[v] += 1
            else:
                a = -1
            if a >= 0:
                path.append(a)
                v = arc_to[a]
            elif v == s:
                break
            else:
                level[v] = -1
                a = path.pop()
                v = arc_to[a ^ 1]

    reach = [False] * n
    reach[s] = True
    q = deque([s])
    while q:
        v = q.popleft()
        for a in adj[v]:
            u = arc_to[a]
            if not reach[u] and cap[a] > 0:
                reach[u] = True
                q.append(u)
    return flow, reach
