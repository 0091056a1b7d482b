"""Command line interface: one subcommand per pipeline stage."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import audit as audit_mod
from . import experiment as exp_mod
from .dpnoise import NoiseSpec, RngStream
from .dpstcut import dp_min_st_cut
from .graphcore import Graph, fx_decimal, fx_float, graph_from_json, load_edge_list
from .maxflow import min_st_cut_exact
from .multiway import (
    dp_multiway,
    multiway_batched,
    multiway_brute_force,
    multiway_isolation_baseline,
    multiway_recursive,
    num_levels,
)


def _load_graph(path: str, frac_bits: int = 0) -> Graph:
    p = Path(path)
    if p.suffix == ".json":
        return graph_from_json(json.loads(p.read_text()), frac_bits)
    return load_edge_list(p, frac_bits)


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


class _Counting:
    def __init__(self, solver):
        self.solver = solver
        self.calls = 0

    def __call__(self, g, s, t):
        self.calls += 1
        return self.solver(g, s, t)


def _cmd_stcut(args) -> int:
    g = _load_graph(args.graph)
    sol = min_st_cut_exact(g, args.source, args.sink)
    _emit(sol.to_json())
    return 0


def _cmd_dp_stcut(args) -> int:
    g = _load_graph(args.graph)
    spec = NoiseSpec(epsilon=args.epsilon, tau=args.tau, seed=args.seed)
    rng = RngStream(args.seed)
    out: dict = {
        "epsilon": args.epsilon,
        "tau": args.tau,
        "seed": args.seed,
        "trials": args.trials,
    }
    opt = None
    if args.with_exact:
        opt = min_st_cut_exact(g, args.source, args.sink).weight_original
        out["opt"] = fx_decimal(opt, g.scale)
    if args.trials == 1:
        sol = dp_min_st_cut(g, args.source, args.sink, spec, rng)
        out.update(sol.to_json())
        if opt is not None:
            err = fx_float(sol.weight_original - opt, g.scale)
            out["additive_error"] = err
            if opt > 0:
                out["relative_error"] = (sol.weight_original - opt) / opt
    else:
        runs = [dp_min_st_cut(g, args.source, args.sink, spec, rng) for _ in range(args.trials)]
        originals = [r.weight_original for r in runs]
        out["weights_original"] = [fx_decimal(w, g.scale) for w in originals]
        out["mean_weight_original"] = sum(fx_float(w, g.scale) for w in originals) / len(runs)
        if opt is not None:
            errs = [fx_float(w - opt, g.scale) for w in originals]
            out["additive_error_mean"] = sum(errs) / len(errs)
            if opt > 0:
                out["relative_error_mean"] = sum(
                    (w - opt) / opt for w in originals
                ) / len(runs)
    _emit(out)
    return 0


def _cmd_multiway(args) -> int:
    g = _load_graph(args.graph)
    terminals = [int(x) for x in args.terminals.split(",")]
    out: dict = {"terminals": terminals}
    if args.dp:
        spec = NoiseSpec(epsilon=args.epsilon, tau=args.tau, seed=args.seed)
        res = dp_multiway(g, terminals, spec, RngStream(args.seed))
        out.update(res.to_json())
        out["solver_calls"] = res.levels
        cut_weight_m = res.cut.weight
    elif args.baseline == "isolation":
        counting = _Counting(min_st_cut_exact)
        cut = multiway_isolation_baseline(g, terminals, counting)
        out.update(cut.to_json())
        out["solver_calls"] = counting.calls
        cut_weight_m = cut.weight
    else:
        counting = _Counting(min_st_cut_exact)
        runner = multiway_recursive if args.recursive else multiway_batched
        cut = runner(g, terminals, counting)
        out.update(cut.to_json())
        out["solver_calls"] = counting.calls
        out["levels"] = num_levels(len(terminals))
        cut_weight_m = cut.weight
    if args.with_exact:
        opt = multiway_brute_force(g, terminals)
        out["opt"] = fx_decimal(opt.weight, g.scale)
        if opt.weight > 0:
            out["ratio"] = cut_weight_m / opt.weight
    _emit(out)
    return 0


def _cmd_audit(args) -> int:
    g_a = _load_graph(args.graph)
    g_b = _load_graph(args.neighbor)
    spec = NoiseSpec(epsilon=args.epsilon, tau=args.tau, seed=args.seed)
    report = audit_mod.privacy_ratio_audit(
        g_a, g_b, args.source, args.sink, spec, args.trials,
        RngStream(args.seed), alpha=args.alpha,
    )
    _emit(report.to_json())
    return 0


def _cmd_lb_sweep(args) -> int:
    mean = audit_mod.lower_bound_error_sweep(
        args.n, args.epsilon, args.num_tau, args.trials, RngStream(args.seed)
    )
    _emit(
        {
            "n": args.n,
            "epsilon": args.epsilon,
            "num_tau": args.num_tau,
            "trials_per_tau": args.trials,
            "seed": args.seed,
            "mean_error": mean,
            "n_over_20": args.n / 20.0,
        }
    )
    return 0


def _cmd_experiment(args) -> int:
    if args.graph:
        base = _load_graph(args.graph)
        label = args.graph
    else:
        base = exp_mod.synthetic_standin(seed=args.seed)
        label = f"synthetic-standin(n={base.n}, m={base.num_edges}, seed={args.seed})"
    epsilons = exp_mod.EPSILON_SWEEP if args.epsilon_sweep else [
        float(x) for x in args.epsilons.split(",")
    ]
    rows = exp_mod.run_experiment(
        base,
        epsilons,
        args.instances,
        args.trials,
        args.seed,
        weight_mean=args.weight_mean,
        contract_fraction=args.contract_fraction,
    )
    exp_mod.write_csv(rows, args.out, label)
    print(f"wrote {len(rows)} rows to {args.out} (base: {label})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpcut",
        description="Exact and differentially private minimum graph cuts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stcut", help="exact minimum s-t cut")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--sink", type=int, required=True)
    p.set_defaults(func=_cmd_stcut)

    p = sub.add_parser("dp-stcut", help="private minimum s-t cut")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--sink", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--with-exact", action="store_true")
    p.set_defaults(func=_cmd_dp_stcut)

    p = sub.add_parser("multiway", help="multiway terminal cut")
    p.add_argument("--graph", required=True)
    p.add_argument("--terminals", required=True, help="comma-separated node ids")
    p.add_argument("--dp", action="store_true")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--baseline", choices=["isolation"], default=None)
    p.add_argument("--recursive", action="store_true", help="use the per-subproblem recursion instead of the batched solver")
    p.add_argument("--with-exact", action="store_true")
    p.set_defaults(func=_cmd_multiway)

    p = sub.add_parser("audit", help="distinguishing audit on neighboring graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--neighbor", required=True)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--sink", type=int, default=1)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=1e-3)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("lb-sweep", help="mean error on the worst-case family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--num-tau", type=int, default=50)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_lb_sweep)

    p = sub.add_parser("experiment", help="error experiment vs the terminal baseline")
    p.add_argument("--graph", default=None, help="edge list or .json; omit for the synthetic stand-in")
    p.add_argument("--epsilons", default="0.5", help="comma-separated list")
    p.add_argument("--epsilon-sweep", action="store_true", help="use the bundled 1/15..1/2,1 grid")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weight-mean", type=float, default=40.0)
    p.add_argument("--contract-fraction", type=float, default=0.1)
    p.add_argument("--out", default="results.csv")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
