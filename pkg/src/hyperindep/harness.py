"""Command-line interface, machine-readable reports, and experiment sweeps.

Single runs emit JSON (scripts read sweeps, humans read single runs); sweeps
emit CSV with a fixed column set. Every run takes one master seed, recorded
in its output; timing fields are omitted unless requested so that reruns
with the same seed are byte-identical.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

from . import antiramsey, gen, nibble, oracle
from .errors import HyperindepError
from .hypercore import Hypergraph, load_nhg, save_nhg, serialize_nhg

__all__ = ["main", "cli_main", "RunConfig", "StudyRow", "scaling_study", "paired_study"]

SCHEMA_VERSION = 1

CSV_COLUMNS = [
    "model",
    "n",
    "k",
    "t_target",
    "t_achieved",
    "seed",
    "method",
    "size",
    "comp_spencer",
    "comp_log",
    "elapsed_ms",
]


@dataclass(frozen=True)
class RunConfig:
    """Sweep request shared by the study commands."""

    k: int = 2
    t_grid: tuple[float, ...] = (8.0, 16.0, 32.0, 64.0)
    n_mult: int = 512
    reps: int = 1
    seed: int = 0
    trials: int = 200
    mode: str = "practical"
    algos: tuple[str, ...] = ()
    timings: bool = False


@dataclass
class StudyRow:
    """One measurement; comparator columns are recomputable from the
    descriptor fields alone."""

    model: str
    n: int
    k: int
    t_target: float
    t_achieved: float
    seed: int
    method: str
    size: int
    comp_spencer: float
    comp_log: float
    elapsed_ms: str = ""

    def csv_values(self) -> list[str]:
        return [
            self.model,
            str(self.n),
            str(self.k),
            _fmt(self.t_target),
            _fmt(self.t_achieved),
            str(self.seed),
            self.method,
            str(self.size),
            _fmt(self.comp_spencer),
            _fmt(self.comp_log),
            self.elapsed_ms,
        ]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _study_instance(cfg: RunConfig, t: float, rep: int) -> tuple[Hypergraph, gen.GenSpec]:
    n = int(cfg.n_mult * t)
    if cfg.k == 2:
        spec = gen.GenSpec("girth5_graph", n, {2: t}, seed=_seed_for(cfg.seed, rep, t))
    else:
        targets = {i: t for i in range(2, cfg.k + 1)}
        spec = gen.GenSpec("mixed_linear", n, targets, seed=_seed_for(cfg.seed, rep, t))
    return gen.generate(spec), spec


def _seed_for(seed: int, rep: int, t: float) -> int:
    return (seed * 1_000_003 + rep * 8191 + int(t) * 131) % (2**63)


def _run_algo(h: Hypergraph, algo: str, seed: int, cfg: RunConfig) -> nibble.SolveReport:
    if algo == "spencer":
        return nibble.spencer_solve(h, seed=seed, trials=cfg.trials)
    if algo == "greedy":
        return nibble.greedy_solve(h)
    if algo == "nibble":
        return nibble.uncrowded_solve(h, seed=seed, mode=cfg.mode)
    if algo == "pipeline":
        return nibble.linear_solve(
            h, nibble.PipelineParams(trials=cfg.trials, mode=cfg.mode), seed=seed
        )
    if algo == "best":
        return nibble.best_of(h, seed=seed, trials=cfg.trials)
    raise ValueError(f"unknown algorithm {algo!r}")


def scaling_study(cfg: RunConfig) -> list[StudyRow]:
    """Size grid n = n_mult * t: random deletion vs the semi-random route,
    with the plain and log-boosted comparator values per row."""
    rows: list[StudyRow] = []
    algos = cfg.algos or (("spencer", "nibble") if cfg.k == 2 else ("spencer", "pipeline"))
    for t in cfg.t_grid:
        for rep in range(cfg.reps):
            h, spec = _study_instance(cfg, t, rep)
            t_ach = h.average_degree(cfg.k)[1] if cfg.k > 2 else h.average_degree(2)[1]
            comp_sp = h.n / (4.0 * t)
            comp_log = (h.n / t) * math.log(t) ** (1.0 / (cfg.k - 1)) if t > 1 else h.n / t
            for algo in algos:
                t0 = time.perf_counter()
                rep_out = _run_algo(h, algo, spec.seed, cfg)
                elapsed = f"{1000 * (time.perf_counter() - t0):.1f}" if cfg.timings else ""
                rows.append(
                    StudyRow(
                        model=spec.model,
                        n=h.n,
                        k=cfg.k,
                        t_target=t,
                        t_achieved=t_ach,
                        seed=spec.seed,
                        method=algo,
                        size=rep_out.size,
                        comp_spencer=comp_sp,
                        comp_log=comp_log,
                        elapsed_ms=elapsed,
                    )
                )
    rows.sort(key=lambda r: (r.model, r.n, r.k, r.t_target, r.seed, r.method))
    return rows


def paired_study(cfg: RunConfig) -> list[StudyRow]:
    """Two (or more) named algorithms on identical instances."""
    if not cfg.algos:
        raise ValueError("paired study needs --algos")
    return scaling_study(cfg)


def _write_csv(rows: list[StudyRow], path: str | None) -> None:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(",".join(r.csv_values()) for r in rows)
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# report helpers
# ----------------------------------------------------------------------


def report_json(
    h: Hypergraph, rep: nibble.SolveReport, mode: str, timings: bool, extra: dict | None = None
) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "method": rep.method,
        "mode": mode,
        "seed": rep.seed,
        "n": h.n,
        "k": h.k,
        "T": rep.params.get("T"),
        "size": rep.size,
        "witness": list(rep.witness),
        "verified": rep.verified,
        "params": _jsonable(rep.params),
    }
    if timings:
        doc["elapsed_ms"] = round(rep.elapsed_ms, 3)
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return round(obj, 12)
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)


def _parse_targets(entries: list[str]) -> dict[int, float]:
    targets: dict[int, float] = {}
    for entry in entries:
        if "=" not in entry:
            raise ValueError(f"density target {entry!r} must look like SIZE=VALUE")
        s, v = entry.split("=", 1)
        targets[int(s)] = float(v)
    return targets


def _load_witness(path: str) -> list[int]:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
        if isinstance(doc, dict) and "witness" in doc:
            return [int(v) for v in doc["witness"]]
        if isinstance(doc, list):
            return [int(v) for v in doc]
    except json.JSONDecodeError:
        pass
    return [int(tok) for tok in text.replace(",", " ").split()]


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def _cmd_gen(args) -> int:
    if args.fixture:
        h = gen.fixture(args.fixture)
    else:
        if args.model == "complete":
            sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [2]
            targets = {s: 0.0 for s in sizes}
        else:
            targets = _parse_targets(args.t or [])
        spec = gen.GenSpec(args.model, args.n, targets, seed=args.seed)
        h = gen.generate(spec)
    if args.out:
        save_nhg(h, args.out)
    else:
        sys.stdout.write(serialize_nhg(h))
    return 0


def _cmd_solve(args) -> int:
    h = load_nhg(args.input)
    cfg = RunConfig(trials=args.trials, mode=args.mode, timings=args.timings)
    if args.algo == "spencer":
        rep = nibble.spencer_solve(h, T=args.T, seed=args.seed, trials=args.trials)
    elif args.algo == "nibble":
        rep = nibble.uncrowded_solve(h, T=args.T, seed=args.seed, mode=args.mode)
    elif args.algo == "pipeline":
        rep = nibble.linear_solve(
            h, nibble.PipelineParams(T=args.T, trials=args.trials, mode=args.mode), seed=args.seed
        )
    else:
        rep = _run_algo(h, args.algo, args.seed, cfg)
    out = report_json(h, rep, args.mode, args.timings)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if rep.verified else 2


def _cmd_exact(args) -> int:
    h = load_nhg(args.input)
    res = oracle.exact_alpha(h, node_budget=args.budget)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "alpha": res.alpha,
        "witness": list(res.witness),
        "nodes_explored": res.nodes_explored,
        "complete": res.complete,
    }
    sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return 0


def _cmd_cycles(args) -> int:
    h = load_nhg(args.input)
    if args.exhaustive:
        counts = {}
        for j in range(2, args.max_len + 1):
            wit = oracle.enumerate_cycles_exhaustive(h, j)
            counts[str(j)] = len(wit)
        doc = {"schema_version": SCHEMA_VERSION, "exhaustive": True, "counts": counts}
    else:
        census = h.cycle_census(args.max_len, want_witnesses=args.witnesses)
        doc = {
            "schema_version": SCHEMA_VERSION,
            "exhaustive": False,
            "two_cycles": census.two_cycles,
            "three_cycles": {str(k): v for k, v in sorted(census.three_cycles.items())},
            "four_cycles": {str(k): v for k, v in sorted(census.four_cycles.items())},
            "linear": census.is_linear,
            "uncrowded": census.is_uncrowded,
        }
        if args.witnesses:
            doc["witnesses"] = [
                {"edges": [list(e) for e in w.edges], "links": list(w.link_vertices)}
                for w in census.witnesses or []
            ]
    sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return 0


def _cmd_verify(args) -> int:
    h = load_nhg(args.input)
    witness = _load_witness(args.set)
    ok = h.is_independent(witness)
    doc = {"schema_version": SCHEMA_VERSION, "size": len(set(witness)), "verified": ok}
    sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return 0 if ok else 2


def _cmd_study(args) -> int:
    cfg = RunConfig(
        k=args.k,
        t_grid=tuple(float(t) for t in args.t.split(",")),
        n_mult=args.n_mult,
        reps=args.reps,
        seed=args.seed,
        trials=args.trials,
        mode=args.mode,
        algos=tuple(args.algos.split(",")) if args.algos else (),
        timings=args.timings,
    )
    rows = scaling_study(cfg) if args.kind == "scaling" else paired_study(cfg)
    _write_csv(rows, args.csv)
    return 0


def _cmd_ar(args) -> int:
    if args.ar_cmd == "color":
        bounds = {s: args.u for s in range(2, args.ell + 1)}
        params = antiramsey.MatchingColoringParams(k=args.k, u=args.u, c0=args.c0, seed=args.seed)
        coloring = antiramsey.matching_coloring(args.n, params, ell=args.ell, bounds=bounds)
        antiramsey.save_coloring(coloring, args.out)
        violations = antiramsey.validate_coloring(coloring)
        doc = {
            "schema_version": SCHEMA_VERSION,
            "n": args.n,
            "classes": len(coloring.classes),
            "colored_edges": coloring.colored_edge_count(),
            "violations": len(violations),
        }
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    if args.ar_cmd == "validate":
        coloring = antiramsey.load_coloring(args.coloring)
        violations = antiramsey.validate_coloring(coloring)
        doc = {"schema_version": SCHEMA_VERSION, "violations": violations}
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    if args.ar_cmd == "find":
        coloring = antiramsey.load_coloring(args.coloring)
        build = antiramsey.plan_conflict_build(
            coloring.n, coloring.bounds, regime=args.regime, cstar=args.cstar
        )
        found, report = antiramsey.find_multicolored(
            coloring, build, seed=args.seed, trials=args.trials
        )
        doc = {
            "schema_version": SCHEMA_VERSION,
            "U": list(found),
            "size": len(found),
            "report": _jsonable(report),
            "seed": args.seed,
        }
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    if args.ar_cmd == "exactf":
        coloring = antiramsey.load_coloring(args.coloring)
        value = antiramsey.exact_f_delta(coloring, budget=args.budget)
        doc = {"schema_version": SCHEMA_VERSION, "f_delta": value}
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        return 0
    if args.ar_cmd == "sweep":
        lines = [
            "n,s,u_s,regime,reps,min,median,max,shape_poly,shape_log",
        ]
        for n_str in args.n_grid.split(","):
            n = int(n_str)
            u = n if args.u == "n" else int(args.u)
            bounds = {s: u for s in range(2, args.ell + 1)}
            stats = antiramsey.estimate_f(
                n,
                bounds,
                regime=args.regime,
                reps=args.reps,
                seed=args.seed,
                trials=args.trials,
            )
            lines.append(
                ",".join(
                    str(x)
                    for x in (
                        stats["n"],
                        stats["s"],
                        stats["u_s"],
                        stats["regime"],
                        stats["reps"],
                        stats["min"],
                        stats["median"],
                        stats["max"],
                        _fmt(stats["shape_poly"]),
                        _fmt(stats["shape_log"]),
                    )
                )
            )
        text = "\n".join(lines) + "\n"
        if args.csv:
            with open(args.csv, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    raise ValueError(f"unknown ar subcommand {args.ar_cmd!r}")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hyperindep", description=__doc__)
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate an instance into .nhg form")
    p.add_argument("--model", choices=gen.MODELS, default="uniform_random")
    p.add_argument("--fixture", choices=gen.FIXTURE_NAMES)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--t", action="append", metavar="SIZE=VALUE")
    p.add_argument("--sizes", help="comma list of sizes (complete model)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="run a solver on an .nhg instance")
    p.add_argument("--algo", choices=("spencer", "greedy", "nibble", "pipeline", "best"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--T", type=float)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("practical", "paper"), default="practical")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("exact", help="exact independence number (small instances)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("cycles", help="short-cycle census or exhaustive enumeration")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-len", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--witnesses", action="store_true")
    p.set_defaults(func=_cmd_cycles)

    p = sub.add_parser("verify", help="check a claimed independent set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--set", required=True, help="witness file (JSON report or id list)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("study", help="experiment sweeps (CSV)")
    p.add_argument("kind", choices=("scaling", "paired"))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", default="8,16,32,64")
    p.add_argument("--n-mult", type=int, default=512)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--mode", choices=("practical", "paper"), default="practical")
    p.add_argument("--algos", help="comma list, e.g. spencer,nibble")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_study)

    p = sub.add_parser("ar", help="bounded-coloring rainbow-set commands")
    arsub = p.add_subparsers(dest="ar_cmd", required=True)
    q = arsub.add_parser("color", help="build a random matching coloring")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--u", type=int, required=True)
    q.add_argument("--ell", type=int, default=2)
    q.add_argument("--c0", type=float)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_ar)
    q = arsub.add_parser("validate")
    q.add_argument("--coloring", required=True)
    q.set_defaults(func=_cmd_ar)
    q = arsub.add_parser("find")
    q.add_argument("--coloring", required=True)
    q.add_argument("--regime", choices=("auto", "poly", "log"), default="auto")
    q.add_argument("--cstar", type=float, default=1.0)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_ar)
    q = arsub.add_parser("exactf")
    q.add_argument("--coloring", required=True)
    q.add_argument("--budget", type=int, default=50_000_000)
    q.set_defaults(func=_cmd_ar)
    q = arsub.add_parser("sweep")
    q.add_argument("--n-grid", required=True, help="comma list of n values")
    q.add_argument("--u", default="n", help="'n' or an integer bound")
    q.add_argument("--ell", type=int, default=2)
    q.add_argument("--regime", choices=("auto", "poly", "log"), default="log")
    q.add_argument("--reps", type=int, default=5)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--csv")
    q.set_defaults(func=_cmd_ar)
    return top


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (HyperindepError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(cli_main())
