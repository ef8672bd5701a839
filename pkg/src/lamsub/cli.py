"""Command-line front end: every analysis as a subcommand.

Reports are deterministic given argv + config + seed; the seed is echoed in
every report header.  Exit codes: 0 success, 1 violated invariant or refuted
check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace

from .algebra import (
    FiniteAlgebra,
    enumerate_compatible_partial_orders,
    find_malcev_terms,
    find_subtractive_witnesses,
    hasse_dot,
    is_0_symmetric,
    is_0_unorderable,
)
from .labelled import LinkRefuted, ProofSkeleton, transform_proof
from .pi import PiOracle, betaetapi_graph, lambda_pi_eq
from .reduction import BETA, Budget, ETA, normalize, reduction_graph
from .terms import ParseError, from_json_tree, parse_named, pretty
from .topology import (
    FiniteSpace,
    check_top_algebra,
    gamma_iteration,
    specialization_dot,
    subtractive_separation_suite,
    validate_space,
)
from .verdict import PROVED, REFUTED


@dataclass(frozen=True)
class RunConfig:
    fuel: int = 2
    max_steps: int = 1000
    max_nodes: int = 500
    max_term_size: int = 10_000
    max_carrier: int = 3
    term_depth: int = 14
    seed: int = 0
    fmt: str = "text"  # text | json | dot

    def __post_init__(self):
        for f in ("fuel", "max_steps", "max_nodes", "max_term_size", "max_carrier", "term_depth"):
            if getattr(self, f) <= 0:
                raise ValueError(f"{f} must be positive")
        if self.fmt not in ("text", "json", "dot"):
            raise ValueError(f"unknown output format {self.fmt}")

    @property
    def budget(self) -> Budget:
        return Budget(self.max_steps, self.max_nodes, self.max_term_size)

    def oracle(self) -> PiOracle:
        return PiOracle(fuel=self.fuel, budget=self.budget)


def load_config(path: str) -> dict:
    if path.endswith(".toml"):
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    with open(path) as fh:
        return json.load(fh)


def _config_from_args(args) -> RunConfig:
    base = {}
    if args.config:
        base = load_config(args.config)
    cfg = RunConfig(**base)
    overrides = {}
    for field in ("fuel", "max_steps", "max_nodes", "max_term_size", "seed", "fmt"):
        v = getattr(args, field, None)
        if v is not None:
            overrides[field] = v
    return replace(cfg, **overrides)


def _header(cfg: RunConfig, out) -> None:
    if cfg.fmt == "text":
        print(f"# seed={cfg.seed} fuel={cfg.fuel} budget={cfg.max_steps}/{cfg.max_nodes}/{cfg.max_term_size}", file=out)


def _rules(spec: str):
    names = {"beta": BETA, "eta": ETA}
    try:
        return frozenset(names[r] for r in spec.split(","))
    except KeyError as e:
        raise SystemExit(2) from e


def _parse_term(text: str):
    try:
        return parse_named(text)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(2)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_reduce(args, cfg, out) -> int:
    t = _parse_term(args.term)
    r = normalize(t, cfg.budget)
    if cfg.fmt == "json":
        json.dump({"seed": cfg.seed, "status": r.status, "term": pretty(r.term)}, out)
        print(file=out)
    else:
        _header(cfg, out)
        print(f"{r.status}: {pretty(r.term)}", file=out)
    return 0


def cmd_graph(args, cfg, out) -> int:
    t = _parse_term(args.term)
    g = reduction_graph(t, _rules(args.rules), cfg.budget)
    _emit_graph(g, cfg, out)
    return 0


def cmd_pi_graph(args, cfg, out) -> int:
    t = _parse_term(args.term)
    g = betaetapi_graph(t, cfg.oracle(), cfg.budget)
    _emit_graph(g, cfg, out)
    return 0


def _emit_graph(g, cfg, out) -> None:
    if cfg.fmt == "dot":
        print(g.to_dot(), file=out)
    elif cfg.fmt == "json":
        json.dump({"seed": cfg.seed, **g.to_json()}, out)
        print(file=out)
    else:
        _header(cfg, out)
        print(f"nodes={len(g.nodes)} edges={len(g.edges)} complete={g.complete}", file=out)
        for s, t, r in sorted(g.edges, key=lambda e: (pretty(e[0]), pretty(e[1]))):
            print(f"  {pretty(s)}  --{r}-->  {pretty(t)}", file=out)


def cmd_pi_eq(args, cfg, out) -> int:
    a, b = _parse_term(args.left), _parse_term(args.right)
    v = lambda_pi_eq(a, b, cfg.oracle())
    word = {PROVED: "proved", REFUTED: "refuted"}.get(v, "unknown")
    if cfg.fmt == "json":
        json.dump({"seed": cfg.seed, "verdict": word}, out)
        print(file=out)
    else:
        _header(cfg, out)
        print(word, file=out)
    return 1 if v is REFUTED else 0


def cmd_jk_transform(args, cfg, out) -> int:
    with open(args.skeleton) as fh:
        d = json.load(fh)
    sk = ProofSkeleton.from_json(d["skeleton"])
    witnesses = [from_json_tree(w) for w in d.get("witnesses", [])]
    try:
        res = transform_proof(sk, witnesses, cfg.oracle())
    except LinkRefuted as e:
        print(f"refuted at link {e.index}", file=out)
        return 1
    report = {
        "seed": cfg.seed,
        "links_before": len(sk.fs),
        "links_after": len(res.skeleton.fs) if res.skeleton else 0,
        "eliminated": res.skeleton is None,
        "assumptions": [
            {"index": i, "lhs": pretty(l), "rhs": pretty(r)}
            for i, l, r in res.assumptions
        ],
    }
    if res.skeleton:
        report["skeleton"] = res.skeleton.to_json()
    if cfg.fmt == "json":
        json.dump(report, out)
        print(file=out)
    else:
        _header(cfg, out)
        print(
            f"links {report['links_before']} -> {report['links_after']}"
            f" (eliminated: {report['eliminated']},"
            f" assumptions: {len(report['assumptions'])})",
            file=out,
        )
    return 0


def cmd_alg_check(args, cfg, out) -> int:
    A = FiniteAlgebra.load(args.algebra)
    orders = list(enumerate_compatible_partial_orders(A))
    report = {
        "seed": cfg.seed,
        "size": A.size,
        "compatible_partial_orders": len(orders),
        "zero_unorderable": is_0_unorderable(A, args.zero),
        "zero_symmetric": is_0_symmetric(A, args.zero),
    }
    if cfg.fmt == "json":
        json.dump(report, out)
        print(file=out)
    elif cfg.fmt == "dot":
        for o in orders:
            print(hasse_dot(o), file=out)
    else:
        _header(cfg, out)
        for k, v in report.items():
            print(f"{k}: {v}", file=out)
    return 0


def cmd_alg_search(args, cfg, out) -> int:
    A = FiniteAlgebra.load(args.algebra)
    if args.malcev:
        found = find_malcev_terms(A, n=args.n, depth=args.depth)
    else:
        found = find_subtractive_witnesses(A, args.zero, args.n, args.depth)
    if cfg.fmt == "json":
        json.dump(
            {"seed": cfg.seed, "witnesses": [str(t) for t in found] if found else None},
            out,
        )
        print(file=out)
    else:
        _header(cfg, out)
        if found:
            for i, t in enumerate(found, start=1):
                print(f"s{i}(x, y) = {t}" if not args.malcev else f"p{i} = {t}", file=out)
        else:
            print("no witnesses", file=out)
    return 0 if found else 1


def cmd_top_check(args, cfg, out) -> int:
    A = FiniteAlgebra.load(args.algebra)
    s = FiniteSpace.load(args.space)
    ok, err = validate_space(s)
    if not ok:
        print(f"invalid space: {err}", file=sys.stderr)
        return 1
    cont, witness = check_top_algebra(A, s, args.mode)
    report = {"seed": cfg.seed, "mode": args.mode, "continuous": cont}
    if not cont:
        report["witness"] = str(witness)
    ws = find_subtractive_witnesses(A, args.zero, 2, 3)
    if ws:
        suite = subtractive_separation_suite(A, s, args.zero, ws)
        report["separation"] = {
            k: v for k, v in suite.items() if k not in ("kappa", "R", "Sigma")
        }
    if cfg.fmt == "json":
        json.dump(report, out, default=str)
        print(file=out)
    elif cfg.fmt == "dot":
        print(specialization_dot(s), file=out)
    else:
        _header(cfg, out)
        for k, v in report.items():
            print(f"{k}: {v}", file=out)
    return 0 if cont else 1


def cmd_top_sweep(args, cfg, out) -> int:
    from .acceptance import criterion_9

    if cfg.max_carrier > 3:
        print("error: exhaustive sweep supports carrier <= 3", file=sys.stderr)
        return 1
    r = criterion_9()
    _header(cfg, out)
    print(r.line(), file=out)
    return 0 if r.ok else 1


def cmd_gamma(args, cfg, out) -> int:
    s = FiniteSpace.load(args.space)
    ok, err = validate_space(s)
    if not ok:
        print(f"invalid space: {err}", file=sys.stderr)
        return 1
    masks = gamma_iteration(s, args.point)
    sets = [sorted(i for i in range(s.size) if (m >> i) & 1) for m in masks]
    if cfg.fmt == "json":
        json.dump({"seed": cfg.seed, "point": args.point, "iteration": sets}, out)
        print(file=out)
    else:
        _header(cfg, out)
        for i, st in enumerate(sets):
            print(f"step {i}: {st}", file=out)
    return 0


def cmd_suite(args, cfg, out) -> int:
    from .acceptance import run_all

    _header(cfg, out)
    results = run_all(write=lambda line: print(line, file=out))
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lamsub",
        description="rewriting workbench and finite-model analyzer",
    )
    p.add_argument("--config", help="TOML or JSON config file")
    p.add_argument("--fuel", type=int)
    p.add_argument("--max-steps", type=int, dest="max_steps")
    p.add_argument("--max-nodes", type=int, dest="max_nodes")
    p.add_argument("--max-term-size", type=int, dest="max_term_size")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", dest="fmt", choices=("text", "json", "dot"))
    p.add_argument("--output", help="write the report to a file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="leftmost-outermost normalization")
    s.add_argument("term")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("graph", help="bounded reduction graph")
    s.add_argument("term")
    s.add_argument("--rules", default="beta,eta")
    s.set_defaults(fn=cmd_graph)

    s = sub.add_parser("pi-eq", help="provable equality with the subtraction rule")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_pi_eq)

    s = sub.add_parser("pi-graph", help="reduction graph including oracle-gated steps")
    s.add_argument("term")
    s.set_defaults(fn=cmd_pi_graph)

    s = sub.add_parser("jk-transform", help="one round of proof-chain shortening")
    s.add_argument("skeleton", help="JSON file with skeleton and witnesses")
    s.set_defaults(fn=cmd_jk_transform)

    s = sub.add_parser("alg-check", help="compatible orders and zero properties")
    s.add_argument("algebra", help="algebra JSON file")
    s.add_argument("--zero", type=int, default=0)
    s.set_defaults(fn=cmd_alg_check)

    s = sub.add_parser("alg-search", help="subtractive or permutability witness search")
    s.add_argument("algebra", help="algebra JSON file")
    s.add_argument("--subtractive", action="store_true")
    s.add_argument("--malcev", action="store_true")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--depth", type=int, default=2)
    s.add_argument("--zero", type=int, default=0)
    s.set_defaults(fn=cmd_alg_search)

    s = sub.add_parser("top-check", help="continuity and separation report")
    s.add_argument("algebra")
    s.add_argument("space")
    s.add_argument("--mode", choices=("topological", "semitopological"), default="topological")
    s.add_argument("--zero", type=int, default=0)
    s.set_defaults(fn=cmd_top_check)

    s = sub.add_parser("top-sweep", help="separation sweep over small carriers")
    s.set_defaults(fn=cmd_top_sweep)

    s = sub.add_parser("gamma", help="pairwise-separation iteration at a point")
    s.add_argument("space")
    s.add_argument("--point", type=int, default=0)
    s.set_defaults(fn=cmd_gamma)

    s = sub.add_parser("suite", help="run the full acceptance battery")
    s.set_defaults(fn=cmd_suite)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except (ValueError, TypeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = sys.stdout
    close = False
    if args.output:
        out = open(args.output, "w")
        close = True
    try:
        return args.fn(args, cfg, out)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    finally:
        if close:
            out.close()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
