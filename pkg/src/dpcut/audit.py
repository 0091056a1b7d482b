"""Monte-Carlo distinguishing audit and worst-case error families.

The auditor runs the private cut mechanism many times on two neighboring
graphs, histograms the released partitions, and certifies a lower
confidence bound on the largest per-outcome probability log-ratio.  Each
outcome gets a Wilson score interval, Bonferroni-corrected across all
observed outcomes and both ratio directions, so a reported violation is a
high-confidence statement rather than a point estimate.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist

from .dpnoise import NoiseSpec, RngStream
from .dpstcut import dp_min_st_cut
from .graphcore import Graph, build_graph, fx_float


def wilson_bounds(successes: int, trials: int, z: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class AuditReport:
    epsilon: float
    tau: float
    bound: float
    trials: int
    z: float
    outcomes: tuple[dict, ...]
    max_lcb_log_ratio: float
    violated: bool

    def to_json(self) -> dict:
        def clean(x: float):
            return x if math.isfinite(x) else None

        return {
            "epsilon": self.epsilon,
            "tau": self.tau,
            "bound": self.bound,
            "trials": self.trials,
            "z": self.z,
            "max_lcb_log_ratio": clean(self.max_lcb_log_ratio),
            "violated": self.violated,
            "outcomes": [
                {**o, "log_ratio": clean(o["log_ratio"]),
                 "lcb_ab": clean(o["lcb_ab"]), "lcb_ba": clean(o["lcb_ba"])}
                for o in self.outcomes
            ],
        }


def _require_neighbors(a: Graph, b: Graph, tau: float) -> None:
    if a.n != b.n:
        raise ValueError("neighboring graphs must share the node set")
    if a.scale != b.scale:
        raise ValueError("neighboring graphs must share the weight scale")
    diffs = [e for e in set(a.edges) | set(b.edges) if a.weight(*e) != b.weight(*e)]
    if len(diffs) > 1:
        raise ValueError(f"graphs differ on {len(diffs)} node pairs; neighbors differ on at most one")
    if diffs:
        u, v = diffs[0]
        delta = abs(a.weight(u, v) - b.weight(u, v))
        if Fraction(delta, 1 << a.scale.total_bits) > Fraction(tau):
            raise ValueError(f"weight difference on ({u}, {v}) exceeds tau={tau}")


def privacy_ratio_audit(
    g_a: Graph,
    g_b: Graph,
    s: int,
    t: int,
    spec: NoiseSpec,
    trials: int,
    rng: RngStream | None = None,
    alpha: float = 1e-3,
) -> AuditReport:
    """Empirically compare output distributions on two neighboring graphs.

    The outcome of one run is the side bit-vector of the non-terminal
    nodes.  ``max_lcb_log_ratio`` is the largest Bonferroni-corrected
    lower confidence bound on |log(Pr_a[o] / Pr_b[o])| over observed
    outcomes; a violation means it exceeds 4 * tau * epsilon.
    """
    if g_a.n > 8:
        raise ValueError("audit histograms all partitions; limited to 8 nodes")
    if trials < 1:
        raise ValueError("need at least one trial")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    _require_neighbors(g_a, g_b, spec.tau)
    if rng is None:
        rng = RngStream(spec.seed)

    free = [v for v in range(g_a.n) if v not in (s, t)]
    stream_a, stream_b = rng.split(2)

    def histogram(g: Graph, stream: RngStream) -> Counter:
        hist: Counter = Counter()
        for _ in range(trials):
            sol = dp_min_st_cut(g, s, t, spec, stream)
            key = 0
            for i, v in enumerate(free):
                if sol.side[v]:
                    key |= 1 << i
            hist[key] += 1
        return hist

    hist_a = histogram(g_a, stream_a)
    hist_b = histogram(g_b, stream_b)

    keys = sorted(set(hist_a) | set(hist_b))
    # Bonferroni over every observed outcome in both ratio directions.
    alpha_each = alpha / (2 * len(keys))
    z = NormalDist().inv_cdf(1.0 - alpha_each / 2.0)

    outcomes = []
    max_lcb = -math.inf
    for key in keys:
        ca, cb = hist_a.get(key, 0), hist_b.get(key, 0)
        lo_a, hi_a = wilson_bounds(ca, trials, z)
        lo_b, hi_b = wilson_bounds(cb, trials, z)
        lcb_ab = math.log(lo_a / hi_b) if lo_a > 0 else -math.inf
        lcb_ba = math.log(lo_b / hi_a) if lo_b > 0 else -math.inf
        point = math.log(ca / cb) if ca > 0 and cb > 0 else math.inf * (1 if ca else -1)
        outcomes.append(
            {
                "outcome": format(key, f"0{len(free)}b") if free else "",
                "count_a": ca,
                "count_b": cb,
                "log_ratio": point,
                "lcb_ab": lcb_ab,
                "lcb_ba": lcb_ba,
            }
        )
        max_lcb = max(max_lcb, lcb_ab, lcb_ba)

    bound = 4.0 * spec.tau * spec.epsilon
    return AuditReport(
        epsilon=spec.epsilon,
        tau=spec.tau,
        bound=bound,
        trials=trials,
        z=z,
        outcomes=tuple(outcomes),
        max_lcb_log_ratio=max_lcb,
        violated=max_lcb > bound,
    )


def lower_bound_family(n: int, tau_bits) -> Graph:
    """Worst-case instance on n non-terminal nodes: node i hangs by a unit
    edge off the source when tau_bits[i] is set, off the sink otherwise.
    The exact minimum s-t cut is always 0; any mechanism's placement
    errors are paid in full.  Terminals are nodes 0 (source) and 1 (sink).
    """
    if n < 1:
        raise ValueError("need at least one non-terminal node")
    bits = [int(bool(b)) for b in tau_bits]
    if len(bits) != n:
        raise ValueError(f"expected {n} bits, got {len(bits)}")
    edges = [(0 if b else 1, i + 2, 1) for i, b in enumerate(bits)]
    return build_graph(n + 2, edges, terminals=(0, 1))


def lower_bound_error_sweep(
    n: int,
    epsilon: float,
    num_tau: int,
    trials_per_tau: int,
    rng: RngStream | None = None,
) -> float:
    """Mean original-graph cut weight released by the mechanism over
    random instances of the worst-case family (the exact optimum is 0, so
    this is the mean additive error).  The n/20 error floor applies in
    the epsilon <= 1 regime; larger epsilon may do arbitrarily better.
    """
    if num_tau < 1 or trials_per_tau < 1:
        raise ValueError("need at least one instance and one trial")
    if rng is None:
        rng = RngStream(0)
    spec = NoiseSpec(epsilon=epsilon)
    streams = rng.split(num_tau + 1)
    total = 0.0
    for j in range(num_tau):
        bits = streams[0].integers_block(0, 2, n)
        g = lower_bound_family(n, bits)
        for _ in range(trials_per_tau):
            sol = dp_min_st_cut(g, 0, 1, spec, streams[j + 1])
            total += fx_float(sol.weight_original, g.scale)
    return total / (num_tau * trials_per_tau)
