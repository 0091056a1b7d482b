"""Private minimum s-t cut: exponential noise edges plus random tie-breaks.

The mechanism augments the input graph with one pair of synthetic edges
per non-terminal node u, weighted by fresh Exp(epsilon) draws:
(s, u) and (t, u), 2(n-2) edges in total and never an (s, t) edge.  Each
synthetic weight additionally carries a uniform tie-breaking integer in
its low mantissa bits, which makes the minimum cut of the augmented graph
unique with high probability without affecting the ordering of cuts that
differ in real weight.  The released output is the partition; weights on
the original graph are derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dpnoise import NoiseSpec, RngStream, quantize_weight, sample_exp_block
from .graphcore import CutSolution, Graph, cut_weight
from .maxflow import brute_force_min_st_cut, min_st_cut_exact


@dataclass(frozen=True)
class PerturbedGraph:
    """One draw of the noise augmentation.

    ``added`` maps each non-terminal node u to the mantissas of its
    synthetic (s, u) and (t, u) weights (tie-break payload included);
    ``raw`` keeps the unquantized Exp samples for diagnostics.
    """

    base: Graph
    graph: Graph
    s: int
    t: int
    added: dict[int, tuple[int, int]]
    raw: dict[int, tuple[float, float]]

    @property
    def total_added(self) -> int:
        return sum(a + b for a, b in self.added.values())

    @property
    def raw_total(self) -> float:
        return sum(a + b for a, b in self.raw.values())


def _check_pair(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"terminal out of range: s={s}, t={t}, n={g.n}")
    if s == t:
        raise ValueError("source and sink must differ")


def perturb(g: Graph, s: int, t: int, spec: NoiseSpec, rng: RngStream | None = None) -> PerturbedGraph:
    """Sample the noise augmentation of g for terminals s, t.

    Draw order is fixed: the s-side Exp block over non-terminals in
    ascending order, the t-side block, then the two tie-break blocks.
    Existing s-u or t-u edges absorb the synthetic weight by addition, so
    no parallel edges arise.
    """
    _check_pair(g, s, t)
    if rng is None:
        rng = RngStream(spec.seed)
    scale = g.scale
    # Payload sums must stay inside the reserved low bits of the mantissa.
    if 4 * g.n**3 > 1 << scale.shift:
        raise ValueError("graph scale has too few payload bits for this node count")

    others = [u for u in range(g.n) if u != s and u != t]
    k = len(others)
    iso_hi = 2 * g.n * g.n
    xs = sample_exp_block(spec.epsilon, k, rng)
    xt = sample_exp_block(spec.epsilon, k, rng)
    iso_s = rng.integers_block(1, iso_hi + 1, k)
    iso_t = rng.integers_block(1, iso_hi + 1, k)

    edges = dict(g.edges)
    added: dict[int, tuple[int, int]] = {}
    raw: dict[int, tuple[float, float]] = {}
    for i, u in enumerate(others):
        m_su = quantize_weight(float(xs[i]), scale) + int(iso_s[i])
        m_tu = quantize_weight(float(xt[i]), scale) + int(iso_t[i])
        added[u] = (m_su, m_tu)
        raw[u] = (float(xs[i]), float(xt[i]))
        ks = (s, u) if s < u else (u, s)
        kt = (t, u) if t < u else (u, t)
        edges[ks] = edges.get(ks, 0) + m_su
        edges[kt] = edges.get(kt, 0) + m_tu

    return PerturbedGraph(g, Graph(g.n, edges, scale, g.terminals), s, t, added, raw)


def dp_min_st_cut(
    g: Graph, s: int, t: int, spec: NoiseSpec, rng: RngStream | None = None
) -> CutSolution:
    """One run of the private cut mechanism.

    The partition of the augmented graph's exact minimum cut is the
    mechanism output; ``weight_original`` re-evaluates it on g and
    ``weight_perturbed`` is the optimum value on the augmented graph.
    """
    pg = perturb(g, s, t, spec, rng)
    sol = min_st_cut_exact(pg.graph, s, t)
    original = cut_weight(g, sol.side)
    # synthetic weights only ever add, so the released partition can never
    # cost less on the augmented graph than on the input
    assert original <= sol.weight_perturbed
    return CutSolution(sol.side, sol.cut_edges, sol.weight_perturbed, original, g.scale)


def unique_min_probability(
    g: Graph, s: int, t: int, spec: NoiseSpec, trials: int, rng: RngStream | None = None
) -> float:
    """Fraction of noise draws whose augmented graph has a unique minimum
    s-t cut, established by exhaustive enumeration (n <= 12)."""
    if g.n > 12:
        raise ValueError("uniqueness check enumerates all cuts; limited to 12 nodes")
    if trials < 1:
        raise ValueError("need at least one trial")
    if rng is None:
        rng = RngStream(spec.seed)
    unique = 0
    for _ in range(trials):
        pg = perturb(g, s, t, spec, rng)
        _, n_minima = brute_force_min_st_cut(pg.graph, s, t)
        unique += n_minima == 1
    return unique / trials
