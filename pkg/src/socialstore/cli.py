"""Command line entry point: ``socialstore simulate|enumerate|sweep|verify``.

Exit codes: 0 stable / confirmed, 1 operational or usage error, 2 cycle,
3 pass cap reached, 4 claim not confirmed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import analysis
from .analysis import RegimeKind
from .config import RunConfig, parse_config
from .dynamics import DynamicsTrace, Status, is_bilaterally_stable, run_dynamics
from .errors import SocialStoreError
from .export import to_dot, to_edge_list
from .model import Network, Params, pair_list

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CYCLE = 2
EXIT_CAP = 3
EXIT_REFUTED = 4

_STATUS_EXIT = {Status.STABLE: EXIT_OK, Status.CYCLE: EXIT_CYCLE, Status.ITERATION_CAP: EXIT_CAP}

CLAIMS = ("theorem1", "lemma1", "lemma2", "corollary1", "window", "nonuniqueness")


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for detected cycles
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _edges(net: Network) -> list[list[int]]:
    return [[i, j] for i, j in net.edges]


def _params_dict(p: Params) -> dict[str, float]:
    return {"c": p.c, "beta": p.beta, "lambda": p.lam}


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args) -> RunConfig:
    cfg = parse_config(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    return cfg


def simulation_report(cfg: RunConfig, trace: DynamicsTrace) -> dict:
    return {
        "status": trace.status.value,
        "passes": trace.passes,
        "first_repeat_index": trace.first_repeat_index,
        "moves": [
            {"pass": s.pass_index, "kind": s.move.kind.value, "pair": list(s.move.pair), "key": s.key}
            for s in trace.moves
        ],
        "start_edges": _edges(trace.start),
        "final_edges": _edges(trace.final),
        "final_key": trace.final.key,
        "stable": is_bilaterally_stable(trace.final, cfg.matrix, cfg.params),
        "params": _params_dict(cfg.params),
        "n": cfg.n,
    }


def cmd_simulate(args) -> int:
    cfg = _load(args)
    trace = run_dynamics(cfg.start_network(), cfg.matrix, cfg.params, cfg.order, cfg.max_passes)
    _emit(_dump(simulation_report(cfg, trace)), args.out)
    if args.dot:
        Path(args.dot).write_text(to_dot(trace.final, cfg.matrix))
    if args.edges:
        Path(args.edges).write_text(to_edge_list(trace.final))
    return _STATUS_EXIT[trace.status]


def _stable_set_dict(report: analysis.StableSetReport) -> dict:
    return {
        "n": report.n_agents,
        "params": _params_dict(report.params),
        "total_examined": report.total_examined,
        "count": report.count,
        "stable_networks": [{"key": net.key, "edges": _edges(net)} for net in report.stable_networks],
    }


def cmd_enumerate(args) -> int:
    cfg = _load(args)
    report = analysis.enumerate_stable(cfg.n, cfg.matrix, cfg.params)
    _emit(_dump(_stable_set_dict(report)), args.out)
    return EXIT_OK


def _grid(args) -> list[float]:
    return analysis.ratio_grid(args.grid_start, args.grid_end, args.grid_step)


def cmd_sweep(args) -> int:
    cfg = _load(args)
    lam, beta = cfg.params.lam, cfg.params.beta
    if args.dynamics:
        points = analysis.sweep_dynamics(cfg.matrix, lam, _grid(args), cfg.start_network(), cfg.order, beta, cfg.max_passes)
        lines = ["ratio,status,passes,final_edges"]
        lines += [
            f"{pt.ratio:.6f},{pt.trace.status.value},{pt.trace.passes},{analysis.format_edges(pt.trace.final)}"
            for pt in points
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(analysis.sweep_ratio(cfg.matrix, lam, _grid(args), beta).to_csv(), args.out)
    return EXIT_OK


def _verdict_dict(verdict: analysis.Verdict) -> dict:
    return {
        "outcome": verdict.outcome.value,
        "member": verdict.member,
        "unique": verdict.unique,
        "expected_edges": _edges(verdict.expected),
        "stable_set": _stable_set_dict(verdict.report),
    }


def verify_claim(claim: str, cfg: RunConfig, grid: list[float]) -> dict:
    p, F, n = cfg.params, cfg.matrix, cfg.n
    if claim == "theorem1":
        checked, failures = 0, []
        for i, j in pair_list(n):
            if F[i][j] <= 0:
                continue
            for n_i in range(n - 1):
                for n_j in range(n - 1):
                    checked += 1
                    if not analysis.check_theorem1(p, F, i, j, n_i, n_j):
                        failures.append([i, j, n_i, n_j])
        return {
            "outcome": "confirmed" if not failures else "refuted",
            "threshold": analysis.theorem1_threshold(p),
            "instances": checked,
            "failures": failures,
        }
    if claim in ("lemma1", "lemma2", "corollary1"):
        kind = {"lemma1": RegimeKind.COMPLETE, "lemma2": RegimeKind.EMPTY, "corollary1": RegimeKind.ENEMY_PAIRS}[claim]
        return _verdict_dict(analysis.verify_regime_claim(kind, n, F, p))
    if claim == "window":
        sweep = analysis.sweep_ratio(F, p.lam, grid, p.beta)
        check = analysis.check_window(sweep.zero_runs())
        cycles = analysis.cycle_runs(
            analysis.sweep_dynamics(F, p.lam, grid, Network.empty(n), cfg.order, p.beta, cfg.max_passes)
        )
        return {
            "outcome": "confirmed" if check.confirmed else "refuted",
            "target": list(check.target),
            "tolerance": check.tolerance,
            "zero_count_runs": [list(r) for r in check.runs],
            "min_stable_count": min(pt.stable_count for pt in sweep.grid),
            "empty_start_non_stable_runs": [list(r) for r in cycles],
        }
    if claim == "nonuniqueness":
        report = analysis.enumerate_stable(n, F, p)
        return {"outcome": "confirmed" if report.count >= 2 else "refuted", "stable_set": _stable_set_dict(report)}
    raise SocialStoreError(f"unknown claim {claim!r}")


def cmd_verify(args) -> int:
    cfg = _load(args)
    result = verify_claim(args.claim, cfg, _grid(args))
    result["claim"] = args.claim
    _emit(_dump(result), args.out)
    return EXIT_OK if result["outcome"] == "confirmed" else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="socialstore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--config", required=True, help="run configuration (JSON)")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, help="override every seed in the configuration")
        sp.set_defaults(func=func)
        return sp

    def grid_flags(sp):
        sp.add_argument("--grid-start", type=float, default=0.01)
        sp.add_argument("--grid-end", type=float, default=0.12)
        sp.add_argument("--grid-step", type=float, default=0.001)

    sp = add("simulate", cmd_simulate, "run the pairwise formation dynamics")
    sp.add_argument("--dot", help="write the final network as Graphviz DOT")
    sp.add_argument("--edges", help="write the final network as an edge list")
    add("enumerate", cmd_enumerate, "list every bilaterally stable network")
    sp = add("sweep", cmd_sweep, "stable-set size across cost/benefit ratios (CSV)")
    grid_flags(sp)
    sp.add_argument("--dynamics", action="store_true", help="report dynamics outcome per ratio instead")
    sp = add("verify", cmd_verify, "check a regime or case-study claim")
    sp.add_argument("--claim", required=True, choices=CLAIMS)
    grid_flags(sp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SocialStoreError, OSError) as exc:
        print(f"socialstore {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
