"""Exact minimum s-t cut with a canonical tie-break.

Every solve returns the *minimal source side*: the set of nodes reachable
from s in the residual network of a maximum flow.  That set is the same
for every maximum flow, so results are independent of backend and arc
order.  Two backends implement the same Dinic algorithm: a pure-Python
big-int one and a JIT-compiled two-limb kernel; ``DPCUT_NO_NUMBA=1``
forces the pure path.
"""

from __future__ import annotations

import os

from . import _dinic
from .graphcore import CutSolution, Graph, crossing_edges, cut_weight

# Below this size the JIT call overhead dominates; the audit loop solves
# 4-node graphs by the hundred thousand and must stay on the pure path.
_NUMBA_MIN_NODES = 48
# Two int64 limbs hold values below 2**124; stay clear of the boundary.
_NUMBA_MAX_TOTAL = 1 << 120

_numba_solver = None
_numba_failed = False


def _get_numba_solver():
    global _numba_solver, _numba_failed
    if _numba_solver is None and not _numba_failed:
        try:
            from . import _dinic_numba

            _numba_solver = _dinic_numba.solve
        except Exception:
            _numba_failed = True
    return _numba_solver


def _pick_backend(g: Graph, backend: str | None) -> str:
    if backend is not None:
        if backend not in ("py", "numba"):
            raise ValueError(f"unknown backend {backend!r}")
        return backend
    if os.environ.get("DPCUT_NO_NUMBA"):
        return "py"
    if g.n < _NUMBA_MIN_NODES or g.total_weight >= _NUMBA_MAX_TOTAL:
        return "py"
    return "numba" if _get_numba_solver() else "py"


def _check_pair(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"terminal out of range: s={s}, t={t}, n={g.n}")
    if s == t:
        raise ValueError("source and sink must differ")


def min_st_cut_exact(g: Graph, s: int, t: int, backend: str | None = None) -> CutSolution:
    """Minimum s-t cut; the returned side is the minimal source side.

    With s and t disconnected the cut weight is 0 and the source side is
    exactly the component of s.
    """
    _check_pair(g, s, t)
    if _pick_backend(g, backend) == "numba":
        solver = _get_numba_solver()
        if solver is None:
            raise RuntimeError("numba backend requested but unavailable")
        flow, reach = solver(g.n, s, t, g.edges)
    else:
        flow, reach = _dinic.solve(g.n, s, t, g.edges)
    side = tuple(reach)
    cw = cut_weight(g, side)
    if cw != flow:
        raise AssertionError(f"flow/cut mismatch: flow={flow}, cut={cw}")
    return CutSolution(side, tuple(crossing_edges(g, side)), flow, flow, g.scale)


def brute_force_min_st_cut(g: Graph, s: int, t: int) -> tuple[CutSolution, int]:
    """Enumerate all 2**(n-2) bipartitions; n <= 22.

    Returns the canonical minimum (the intersection of all minimum source
    sides, itself a minimum cut) and the exact number of distinct minima.
    """
    _check_pair(g, s, t)
    if g.n > 22:
        raise ValueError("brute force is limited to 22 nodes")
    free = [v for v in range(g.n) if v not in (s, t)]
    edge_items = list(g.edges.items())

    best = None
    count = 0
    minimal: set[int] = set()
    side = [False] * g.n
    side[s] = True
    for mask in range(1 << len(free)):
        for i, v in enumerate(free):
            side[v] = bool(mask >> i & 1)
        w = 0
        for (u, v), wt in edge_items:
            if side[u] != side[v]:
                w += wt
        if best is None or w < best:
            best = w
            count = 1
            minimal = {v for v in range(g.n) if side[v]}
        elif w == best:
            count += 1
            minimal &= {v for v in range(g.n) if side[v]}

    final = tuple(v in minimal for v in range(g.n))
    if cut_weight(g, final) != best:
        raise AssertionError("minimum sides not closed under intersection")
    return (
        CutSolution(final, tuple(crossing_edges(g, final)), best, best, g.scale),
        count,
    )
