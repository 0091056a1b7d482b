"""Undirected weighted graphs over exact fixed-point weights.

Weights are stored as nonnegative integer mantissas of a shared per-graph
``Scale``.  The low bits of every mantissa are reserved for noise payloads
(a guard gap plus a tie-breaking field) so that cut weights of a graph and
of any graph derived from it can be compared exactly with integer
arithmetic, no floats involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

NodeId = int
EdgeKey = tuple[int, int]


def _ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 needs a positive integer")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class Scale:
    """Fixed-point layout shared by all weights of one graph family.

    A weight value ``v`` is stored as ``trunc(v * 2**frac_bits) << (gap_bits
    + iso_bits)``.  The gap absorbs carries from summing up to ~2n noise
    payloads; the iso field holds the random tie-breaking integers.  Graphs
    derived by contraction inherit the scale of their parent, so mantissas
    from an instance and its subproblems stay directly comparable.
    """

    frac_bits: int = 0
    gap_bits: int = 0
    iso_bits: int = 0

    def __post_init__(self) -> None:
        if min(self.frac_bits, self.gap_bits, self.iso_bits) < 0:
            raise ValueError("scale bit counts must be nonnegative")

    @property
    def shift(self) -> int:
        return self.gap_bits + self.iso_bits

    @property
    def total_bits(self) -> int:
        return self.frac_bits + self.gap_bits + self.iso_bits

    @classmethod
    def for_nodes(cls, n: int, frac_bits: int = 0) -> Scale:
        """Layout sized for a graph on n nodes: gap 2*ceil(log2 n) bits,
        tie-break field ceil(log2(2 n^2)) bits."""
        if n < 0:
            raise ValueError("node count must be nonnegative")
        if n < 2:
            return cls(frac_bits, 0, 1 if n == 1 else 0)
        return cls(frac_bits, 2 * _ceil_log2(n), _ceil_log2(2 * n * n))


def fx_from_value(value: int | str | Fraction, scale: Scale) -> int:
    """Mantissa for a nonnegative weight value; truncates toward zero at
    ``frac_bits`` fractional bits."""
    v = Fraction(value)
    if v < 0:
        raise ValueError(f"weight must be nonnegative, got {value}")
    units = (v.numerator << scale.frac_bits) // v.denominator
    return units << scale.shift


def fx_value(mantissa: int, scale: Scale) -> Fraction:
    return Fraction(mantissa, 1 << scale.total_bits)


def fx_float(mantissa: int, scale: Scale) -> float:
    return mantissa / float(1 << scale.total_bits)


def fx_decimal(mantissa: int, scale: Scale) -> str:
    """Exact decimal string of mantissa / 2**total_bits (denominator is a
    power of two, so the expansion is finite)."""
    k = scale.total_bits
    if k == 0:
        return str(mantissa)
    digits = str(mantissa * 5**k).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:].rstrip("0")
    return f"{whole}.{frac}" if frac else whole


@dataclass(frozen=True)
class Graph:
    """Undirected graph with positive fixed-point edge weights.

    ``edges`` maps node pairs (u, v) with u < v to weight mantissas.
    Treat instances as immutable; derived graphs are new objects.
    """

    n: int
    edges: dict[EdgeKey, int]
    scale: Scale
    terminals: tuple[NodeId, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        for (u, v), w in self.edges.items():
            if not 0 <= u < v < self.n:
                raise ValueError(f"bad edge key ({u}, {v}) for n={self.n}")
            if w <= 0:
                raise ValueError(f"edge ({u}, {v}) has nonpositive weight")
        if len(set(self.terminals)) != len(self.terminals):
            raise ValueError("duplicate terminals")
        for tm in self.terminals:
            if not 0 <= tm < self.n:
                raise ValueError(f"terminal {tm} out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def weight(self, u: NodeId, v: NodeId) -> int:
        """Mantissa of edge {u, v}, or 0 if absent."""
        if u == v:
            return 0
        return self.edges.get((u, v) if u < v else (v, u), 0)

    def degree_weight(self, v: NodeId) -> int:
        return sum(w for (a, b), w in self.edges.items() if v in (a, b))

    def adjacency(self) -> list[list[tuple[NodeId, int]]]:
        adj: list[list[tuple[NodeId, int]]] = [[] for _ in range(self.n)]
        for (u, v), w in self.edges.items():
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj


@dataclass(frozen=True)
class CutSolution:
    """An s-t bipartition with its cut edges and weights.

    ``side[v]`` is True for nodes on the source side.  For an exact solve
    the two weights coincide; for a noise-augmented solve
    ``weight_perturbed`` is the optimum on the augmented graph while
    ``weight_original`` re-evaluates the partition on the input graph.
    """

    side: tuple[bool, ...]
    cut_edges: tuple[EdgeKey, ...]
    weight_perturbed: int
    weight_original: int
    scale: Scale

    def side_labels(self) -> tuple[str, ...]:
        return tuple("S" if b else "T" for b in self.side)

    def to_json(self) -> dict:
        return {
            "side": list(self.side_labels()),
            "cut_edges": [[u, v] for u, v in self.cut_edges],
            "weight": fx_decimal(self.weight_original, self.scale),
            "weight_perturbed": fx_decimal(self.weight_perturbed, self.scale),
        }


def build_graph(
    n: int,
    weighted_edges: list[tuple[NodeId, NodeId, int | str | Fraction]],
    frac_bits: int = 0,
    terminals: tuple[NodeId, ...] = (),
) -> Graph:
    """Graph from (u, v, value) triples; duplicates merge by addition."""
    scale = Scale.for_nodes(n, frac_bits)
    totals: dict[EdgeKey, Fraction] = {}
    for u, v, w in weighted_edges:
        if u == v:
            raise ValueError(f"self loop at node {u}")
        key = (u, v) if u < v else (v, u)
        totals[key] = totals.get(key, Fraction(0)) + Fraction(w)
    edges = {}
    for key, val in totals.items():
        m = fx_from_value(val, scale)
        if m <= 0:
            raise ValueError(f"edge {key} weight {val} quantizes to zero")
        edges[key] = m
    return Graph(n, edges, scale, tuple(terminals))


def parse_edge_list(text: str, frac_bits: int = 0) -> Graph:
    """Parse a whitespace edge list: ``u v`` or ``u v w`` per line, ``#``
    comments.  When every node token is a nonnegative integer the tokens
    are used as node ids directly (n is the largest id plus one, so ids
    may have holes); otherwise tokens are compacted to 0..n-1 in order of
    first appearance.  Duplicate edges merge by addition; a missing
    weight means 1.
    """
    tokens: list[tuple[int, str, str, Fraction]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u v' or 'u v w', got {line!r}")
        if len(parts) == 3:
            try:
                w = Fraction(parts[2])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: bad weight {parts[2]!r}") from exc
        else:
            w = Fraction(1)
        if w < 0:
            raise ValueError(f"line {lineno}: negative weight {parts[2]}")
        tokens.append((lineno, parts[0], parts[1], w))

    numeric = all(tu.isdigit() and tv.isdigit() for _, tu, tv, _ in tokens)
    ids: dict[str, int] = {}
    raw: list[tuple[int, int, Fraction]] = []
    for lineno, tu, tv, w in tokens:
        if numeric:
            u, v = int(tu), int(tv)
        else:
            u = ids.setdefault(tu, len(ids))
            v = ids.setdefault(tv, len(ids))
        if u == v:
            raise ValueError(f"line {lineno}: self loop at node {tu!r}")
        raw.append((u, v, w))

    n = (1 + max(max(u, v) for u, v, _ in raw)) if numeric and raw else len(ids)
    scale = Scale.for_nodes(n, frac_bits)
    totals: dict[EdgeKey, Fraction] = {}
    for u, v, w in raw:
        key = (u, v) if u < v else (v, u)
        totals[key] = totals.get(key, Fraction(0)) + w
    edges = {}
    for key, val in totals.items():
        m = fx_from_value(val, scale)
        if m <= 0:
            raise ValueError(f"edge {key} weight {val} quantizes to zero at {frac_bits} fractional bits")
        edges[key] = m
    return Graph(n, edges, scale)


def load_edge_list(path: str | Path, frac_bits: int = 0) -> Graph:
    return parse_edge_list(Path(path).read_text(), frac_bits)


def to_edge_list(g: Graph) -> str:
    lines = [f"{u} {v} {fx_decimal(w, g.scale)}" for (u, v), w in sorted(g.edges.items())]
    return "\n".join(lines) + ("\n" if lines else "")


def graph_to_json(g: Graph) -> dict:
    return {
        "n": g.n,
        "edges": [[u, v, fx_decimal(w, g.scale)] for (u, v), w in sorted(g.edges.items())],
    }


def graph_from_json(obj: dict, frac_bits: int = 0) -> Graph:
    return build_graph(obj["n"], [(u, v, w) for u, v, w in obj["edges"]], frac_bits)


def contract(
    g: Graph, z: set[NodeId] | frozenset[NodeId], label: NodeId | None = None
) -> tuple[Graph, dict[NodeId, NodeId]]:
    """Merge the nodes of z into a single supernode.

    Returns the contracted graph and the full old->new id map.  Ids are
    re-compacted: survivors keep ascending order, with the supernode at
    the slot of ``label`` (a member of z, default its minimum).  Edges
    inside z disappear; parallel edges created by the merge sum.
    Contracting a singleton is therefore the identity map.
    """
    z = set(z)
    if not z:
        raise ValueError("contraction set is empty")
    for v in z:
        if not 0 <= v < g.n:
            raise ValueError(f"contraction node {v} out of range")
    if label is None:
        label = min(z)
    elif label not in z:
        raise ValueError("label must belong to the contracted set")

    kept = sorted(set(range(g.n)) - z | {label})
    slot = {v: i for i, v in enumerate(kept)}
    mapping = {v: slot[label] if v in z else slot[v] for v in range(g.n)}

    edges: dict[EdgeKey, int] = {}
    for (u, v), w in g.edges.items():
        nu, nv = mapping[u], mapping[v]
        if nu == nv:
            continue
        key = (nu, nv) if nu < nv else (nv, nu)
        edges[key] = edges.get(key, 0) + w

    terms: list[NodeId] = []
    for tm in g.terminals:
        nt = mapping[tm]
        if nt not in terms:
            terms.append(nt)
    return Graph(len(kept), edges, g.scale, tuple(terms)), mapping


def induced_subgraph(g: Graph, nodes: set[NodeId]) -> tuple[Graph, dict[NodeId, NodeId]]:
    """Subgraph on ``nodes`` with ids re-compacted in ascending order."""
    kept = sorted(nodes)
    for v in kept:
        if not 0 <= v < g.n:
            raise ValueError(f"node {v} out of range")
    mapping = {v: i for i, v in enumerate(kept)}
    edges = {
        (mapping[u], mapping[v]): w
        for (u, v), w in g.edges.items()
        if u in mapping and v in mapping
    }
    terms = tuple(mapping[t] for t in g.terminals if t in mapping)
    return Graph(len(kept), edges, g.scale, terms), mapping


def cut_weight(g: Graph, source_side) -> int:
    """Total mantissa of edges crossing the given bipartition.

    ``source_side`` is a length-n sequence, truthy for nodes on the
    source side.
    """
    if len(source_side) != g.n:
        raise ValueError("side vector length != node count")
    return sum(
        w for (u, v), w in g.edges.items() if bool(source_side[u]) != bool(source_side[v])
    )


def crossing_edges(g: Graph, source_side) -> list[EdgeKey]:
    if len(source_side) != g.n:
        raise ValueError("side vector length != node count")
    return sorted(
        (u, v) for (u, v) in g.edges if bool(source_side[u]) != bool(source_side[v])
    )


def random_graph(n: int, p: float, max_weight: int = 1, seed: int = 0) -> Graph:
    """Seeded Erdos-Renyi graph with uniform integer weights in [1, max_weight]."""
    if n < 0:
        raise ValueError("node count must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    rng = np.random.default_rng(seed)
    scale = Scale.for_nodes(n)
    npairs = n * (n - 1) // 2
    mask = rng.random(npairs) < p
    weights = rng.integers(1, max_weight + 1, size=int(mask.sum()))
    edges: dict[EdgeKey, int] = {}
    idx = 0
    w_idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if mask[idx]:
                edges[(u, v)] = int(weights[w_idx]) << scale.shift
                w_idx += 1
            idx += 1
    return Graph(n, edges, scale)


def connected_components(n: int, edges) -> list[int]:
    """Component label per node for an edge iterable of (u, v) pairs."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    roots = {}
    return [roots.setdefault(find(v), len(roots)) for v in range(n)]


def graphs_weight_equal(a: Graph, b: Graph) -> bool:
    """Same node count and identical weight function by value (scales may
    differ, e.g. after a serialize/reload round trip)."""
    if a.n != b.n:
        return False
    keys = set(a.edges) | set(b.edges)
    return all(
        fx_value(a.weight(u, v), a.scale) == fx_value(b.weight(u, v), b.scale)
        for u, v in keys
    )
