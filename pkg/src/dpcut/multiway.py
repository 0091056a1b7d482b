"""Multiway k-cut by recursive terminal bisection.

Splitting the terminal list in half, contracting each half into a single
node, and solving one minimum s-t cut separates the halves; recursing on
the two sides yields a valid multiway cut of weight at most twice the
optimum when the s-t solves are exact.  The batched variant runs every
subproblem of a recursion level as one solve on their disjoint union (all
level sources merged into one s, all sinks into one t), so the whole
reduction costs ceil(log2 k) solver invocations, which is what makes the
private variant affordable: one noise charge per level instead of per
terminal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .dpnoise import NoiseSpec, RngStream
from .dpstcut import dp_min_st_cut
from .graphcore import (
    EdgeKey,
    Graph,
    NodeId,
    Scale,
    contract,
    fx_decimal,
    induced_subgraph,
)
from .maxflow import min_st_cut_exact


@dataclass(frozen=True)
class MultiwayCut:
    """A partition of the nodes into one block per terminal.

    ``part[v]`` is the index of v's terminal in the input terminal list;
    ``cut_edges`` are the edges crossing blocks and ``weight`` their total
    on the graph the cut was computed for.
    """

    part: tuple[int, ...]
    cut_edges: tuple[EdgeKey, ...]
    weight: int
    scale: Scale

    def to_json(self) -> dict:
        return {
            "part": list(self.part),
            "cut_edges": [[u, v] for u, v in self.cut_edges],
            "weight": fx_decimal(self.weight, self.scale),
        }


@dataclass(frozen=True)
class DpMultiwayResult:
    cut: MultiwayCut
    levels: int
    total_epsilon: float

    def to_json(self) -> dict:
        out = self.cut.to_json()
        out["levels"] = self.levels
        out["total_privacy_cost"] = self.total_epsilon
        return out


def num_levels(k: int) -> int:
    """Bisection depth for k terminals: ceil(log2 k), 0 for k <= 1."""
    return (k - 1).bit_length() if k >= 1 else 0


def _validate_terminals(g: Graph, terminals) -> None:
    if not terminals:
        raise ValueError("need at least one terminal")
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminals must be distinct")
    for tm in terminals:
        if not 0 <= tm < g.n:
            raise ValueError(f"terminal {tm} out of range for n={g.n}")


def _finish(g: Graph, part: list[int]) -> MultiwayCut:
    cut = sorted(e for e in g.edges if part[e[0]] != part[e[1]])
    weight = sum(g.edges[e] for e in cut)
    return MultiwayCut(tuple(part), tuple(cut), weight, g.scale)


def _contract_halves(h: Graph, terms: list[NodeId]):
    """Contract the first half of terms into a source and the rest into a
    sink.  Returns (graph, s, t, flatten) where flatten maps an h node to
    its contracted id."""
    kp = len(terms) // 2
    left, right = terms[:kp], terms[kp:]
    h1, m1 = contract(h, set(left), label=left[0])
    right1 = [m1[x] for x in right]
    h2, m2 = contract(h1, set(right1), label=right1[0])
    flatten = [m2[m1[v]] for v in range(h.n)]
    return h2, flatten[left[0]], flatten[right[0]], flatten


def multiway_recursive(g: Graph, terminals, solver=None) -> MultiwayCut:
    """Plain recursion: one solver call per internal node of the bisection
    tree (k - 1 calls for k terminals)."""
    solver = solver or min_st_cut_exact
    _validate_terminals(g, terminals)
    part = [-1] * g.n

    def rec(h: Graph, to_orig: list[int], terms: list[int], offset: int) -> None:
        if len(terms) == 1:
            for v in range(h.n):
                part[to_orig[v]] = offset
            return
        kp = len(terms) // 2
        h2, s2, t2, flatten = _contract_halves(h, terms)
        sol = solver(h2, s2, t2)
        side_a = {v for v in range(h.n) if sol.side[flatten[v]]}
        side_b = set(range(h.n)) - side_a
        ha, ma = induced_subgraph(h, side_a)
        hb, mb = induced_subgraph(h, side_b)
        rec(ha, [to_orig[v] for v in sorted(side_a)], [ma[x] for x in terms[:kp]], offset)
        rec(hb, [to_orig[v] for v in sorted(side_b)], [mb[x] for x in terms[kp:]], offset + kp)

    rec(g, list(range(g.n)), list(terminals), 0)
    return _finish(g, part)


def multiway_batched(g: Graph, terminals, solver=None) -> MultiwayCut:
    """Level-synchronous variant: all subproblems of one recursion level
    are solved by a single invocation on their disjoint union, with the
    level's sources sharing one node and the sinks another.

    With the same deterministic solver it produces the identical
    partition as ``multiway_recursive``: the union's residual network
    decomposes per component, so the canonical source side restricted to
    a component equals that component's standalone solution.
    """
    solver = solver or min_st_cut_exact
    _validate_terminals(g, terminals)
    part = [-1] * g.n

    # item: (original node ids, terminal ids among them, block offset)
    items: list[tuple[list[int], list[int], int]] = [
        (list(range(g.n)), list(terminals), 0)
    ]
    while items:
        active = []
        for nodes, terms, offset in items:
            if len(terms) == 1:
                for v in nodes:
                    part[v] = offset
            else:
                active.append((nodes, terms, offset))
        if not active:
            break

        comps = []
        union_edges: dict[EdgeKey, int] = {}
        src = snk = -1
        next_id = 0
        for nodes, terms, offset in active:
            h, mh = induced_subgraph(g, set(nodes))
            h2, s2, t2, flatten = _contract_halves(h, [mh[x] for x in terms])
            # First component keeps its ids; later ones reuse the shared
            # source/sink slots and append the rest.
            glob = [0] * h2.n
            for v in range(h2.n):
                if next_id == 0:
                    glob[v] = v
                elif v == s2:
                    glob[v] = src
                elif v == t2:
                    glob[v] = snk
                else:
                    glob[v] = next_id
                    next_id += 1
            if src < 0:
                src, snk = glob[s2], glob[t2]
                next_id = h2.n
            for (u, v), w in h2.edges.items():
                gu, gv = glob[u], glob[v]
                key = (gu, gv) if gu < gv else (gv, gu)
                union_edges[key] = union_edges.get(key, 0) + w
            slot = {v: glob[flatten[mh[v]]] for v in nodes}
            comps.append((nodes, terms, offset, slot))

        union = Graph(next_id, union_edges, g.scale)
        sol = solver(union, src, snk)

        items = []
        for nodes, terms, offset, slot in comps:
            kp = len(terms) // 2
            side_a = [v for v in nodes if sol.side[slot[v]]]
            side_b = [v for v in nodes if not sol.side[slot[v]]]
            items.append((side_a, terms[:kp], offset))
            items.append((side_b, terms[kp:], offset + kp))

    return _finish(g, part)


def dp_multiway(
    g: Graph, terminals, spec: NoiseSpec, rng: RngStream | None = None
) -> DpMultiwayResult:
    """Private multiway cut: the batched reduction with the private s-t
    mechanism as solver, one fresh split stream per level.  Total privacy
    cost composes to epsilon * ceil(log2 k)."""
    _validate_terminals(g, terminals)
    if rng is None:
        rng = RngStream(spec.seed)
    levels = num_levels(len(terminals))
    streams = iter(rng.split(levels)) if levels else iter(())

    def solver(h: Graph, s: int, t: int):
        return dp_min_st_cut(h, s, t, spec, next(streams))

    cut = multiway_batched(g, terminals, solver)
    return DpMultiwayResult(cut, levels, spec.epsilon * levels)


def multiway_brute_force(g: Graph, terminals) -> MultiwayCut:
    """Optimal multiway cut by enumerating all k**(n-k) assignments of the
    non-terminal nodes; guarded to at most 10**7 assignments."""
    _validate_terminals(g, terminals)
    k = len(terminals)
    free = [v for v in range(g.n) if v not in set(terminals)]
    if k**len(free) > 10**7:
        raise ValueError("assignment space exceeds 10**7; instance too large")

    part = [-1] * g.n
    for i, tm in enumerate(terminals):
        part[tm] = i
    edge_items = list(g.edges.items())
    best = None
    best_part: list[int] = []
    for assign in itertools.product(range(k), repeat=len(free)):
        for j, v in enumerate(free):
            part[v] = assign[j]
        w = 0
        for (u, v), wt in edge_items:
            if part[u] != part[v]:
                w += wt
        if best is None or w < best:
            best = w
            best_part = part.copy()
    return _finish(g, best_part)


def multiway_isolation_baseline(g: Graph, terminals, solver=None) -> MultiwayCut:
    """Classical isolation heuristic: k solver calls, one per terminal,
    each separating it from the contraction of all the others; a node
    joins the block of the first terminal that kept it on its source
    side (the last block if none did), so the crossing edges are a subset
    of the union of the k isolating cuts."""
    solver = solver or min_st_cut_exact
    _validate_terminals(g, terminals)
    k = len(terminals)
    if k == 1:
        return _finish(g, [0] * g.n)

    sides: list[set[int]] = []
    for si in terminals:
        rest = set(terminals) - {si}
        hc, mc = contract(g, rest)
        sol = solver(hc, mc[si], mc[min(rest)])
        sides.append({v for v in range(g.n) if sol.side[mc[v]]})

    part = [-1] * g.n
    for v in range(g.n):
        part[v] = next((i for i in range(k) if v in sides[i]), k - 1)
    return _finish(g, part)
