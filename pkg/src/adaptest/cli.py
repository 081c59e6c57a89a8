"""Command-line front end.

Exit codes: 0 for YES/success, 1 for NO/infeasible, 2 for usage, parse, or
validation problems.  Generated documents go to stdout in canonical form.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import formats, generators, oracle, reductions, solver
from .model import Scenario
from .reductions import InfeasibleScenarioError
from .solver import MODE_EARLY_STOP, MODE_LITERAL_B1, NoStrategyError, SolveConfig

_CLI_MODES = {"early": MODE_EARLY_STOP, "literal": MODE_LITERAL_B1}


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise formats.FormatError(f"cannot read {path}: {exc}") from exc


def _load_scenario(path: str) -> tuple[Scenario, int | None]:
    return formats.loads_scenario(_read(path))


def _config(args: argparse.Namespace) -> SolveConfig:
    forced = tuple(args.first.split(",")) if getattr(args, "first", None) else None
    mode = _CLI_MODES[getattr(args, "mode", "early")]
    return SolveConfig(mode=mode, forced_prefix=forced)


def _effective_k(args: argparse.Namespace, doc_k: int | None) -> int:
    if args.k is not None:
        return args.k
    if doc_k is not None:
        return doc_k
    raise formats.FormatError("no depth bound: pass -k or put 'k' in the document")


def _cmd_decide(args: argparse.Namespace) -> int:
    scenario, doc_k = _load_scenario(args.scenario)
    k = _effective_k(args, doc_k)
    answer = solver.decide(scenario, k, _config(args))
    print("YES" if answer else "NO")
    return 0 if answer else 1


def _cmd_optimize(args: argparse.Namespace) -> int:
    scenario, _ = _load_scenario(args.scenario)
    best = solver.optimize(scenario, _config(args))
    if best is None:
        print("INFEASIBLE")
        return 1
    print(best)
    return 0


def _cmd_strategy(args: argparse.Namespace) -> int:
    scenario, doc_k = _load_scenario(args.scenario)
    k = _effective_k(args, doc_k)
    try:
        tree = solver.extract_strategy(scenario, k, _config(args))
    except NoStrategyError as exc:
        print(f"INFEASIBLE: {exc}", file=sys.stderr)
        return 1
    if args.dot:
        sys.stdout.write(formats.tree_to_dot(tree))
    else:
        import json

        print(json.dumps(formats.tree_to_document(tree), indent=2))
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    if args.kind == "msc":
        instance = formats.parse_cover(_read(args.source))
        reduced = reductions.msc_to_scenario(instance)
        sys.stdout.write(formats.dumps_scenario(reduced.scenario))
    else:
        formula = formats.parse_qbf(_read(args.source))
        reduced = reductions.qbf_to_scenario(formula)
        sys.stdout.write(formats.dumps_scenario(reduced.scenario, k=reduced.budget))
    return 0


def _cmd_approx(args: argparse.Namespace) -> int:
    scenario, _ = _load_scenario(args.scenario)
    try:
        suite = reductions.greedy_cover(scenario)
    except InfeasibleScenarioError as exc:
        print(f"INFEASIBLE: {exc}", file=sys.stderr)
        return 1
    for input_symbol in suite:
        print(input_symbol)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    scenario, _ = _load_scenario(args.scenario)
    try:
        best = oracle.min_depth(scenario)
    except oracle.OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if best is None:
        print("INFEASIBLE")
        return 1
    print(best)
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.what == "cas":
        sys.stdout.write(formats.dumps_scenario(generators.builtin_cas()))
        return 0
    if args.what == "cas-variant":
        sys.stdout.write(formats.dumps_scenario(generators.cas_variant(args.which)))
        return 0
    if args.what == "random":
        scenario = generators.random_scenario(
            seed=args.seed,
            n_inputs=args.inputs,
            n_outputs=args.outputs,
            n_functions=args.functions,
            n_correct=args.correct,
            nondet_density=args.nondet_density,
        )
        sys.stdout.write(formats.dumps_scenario(scenario))
        return 0
    if args.what == "factored":
        import json

        spec = formats.document_to_factored(json.loads(_read(args.source)))
        if args.count_only:
            counts = generators.count_factored(spec)
            print(f"{counts.correct} {counts.fault_combinations} {counts.total}")
            return 0
        scenario = generators.expand_factored(spec, cap=args.cap)
        sys.stdout.write(formats.dumps_scenario(scenario))
        return 0
    if args.what == "discretize":
        import json

        ns = formats.document_to_numeric(json.loads(_read(args.source)))
        sys.stdout.write(formats.dumps_scenario(generators.discretize_observations(ns)))
        return 0
    raise AssertionError(f"unhandled generator {args.what!r}")


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port if args.port is not None else int(os.environ.get("ATDP_PORT", "8000"))
    uvicorn.run(create_app(ui_dir=args.ui_dir), host=args.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adaptest",
        description="Solve, compile, and drive adaptive black-box testing scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    decide = sub.add_parser("decide", help="can k adaptive tests always force a verdict?")
    decide.add_argument("scenario")
    decide.add_argument("-k", type=int, default=None, help="depth bound (overrides the document)")
    decide.add_argument("--first", help="comma-separated forced first inputs")
    decide.add_argument("--mode", choices=sorted(_CLI_MODES), default="early")
    decide.set_defaults(func=_cmd_decide)

    optimize = sub.add_parser("optimize", help="minimum number of adaptive tests")
    optimize.add_argument("scenario")
    optimize.add_argument("--first", help="comma-separated forced first inputs")
    optimize.add_argument("--mode", choices=sorted(_CLI_MODES), default="early")
    optimize.set_defaults(func=_cmd_optimize)

    strategy = sub.add_parser("strategy", help="emit a witnessing strategy tree")
    strategy.add_argument("scenario")
    strategy.add_argument("-k", type=int, default=None)
    strategy.add_argument("--first", help="comma-separated forced first inputs")
    strategy.add_argument("--mode", choices=sorted(_CLI_MODES), default="early")
    group = strategy.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true", help="Graphviz output")
    group.add_argument("--json", action="store_true", help="JSON output (default)")
    strategy.set_defaults(func=_cmd_strategy)

    reduce_cmd = sub.add_parser("reduce", help="compile a source instance into a scenario")
    reduce_cmd.add_argument("kind", choices=["msc", "qbf"])
    reduce_cmd.add_argument("source")
    reduce_cmd.set_defaults(func=_cmd_reduce)

    approx = sub.add_parser("approx", help="greedy preset suite (deterministic, one correct)")
    approx.add_argument("scenario")
    approx.set_defaults(func=_cmd_approx)

    oracle_cmd = sub.add_parser("oracle", help="brute-force minimum depth (small instances)")
    oracle_cmd.add_argument("scenario")
    oracle_cmd.set_defaults(func=_cmd_oracle)

    generate = sub.add_parser("generate", help="emit a scenario document")
    gen_sub = generate.add_subparsers(dest="what", required=True)
    gen_sub.add_parser("cas").set_defaults(func=_cmd_generate)
    variant = gen_sub.add_parser("cas-variant")
    variant.add_argument("which", choices=list(generators.CAS_VARIANTS))
    variant.set_defaults(func=_cmd_generate)
    rand = gen_sub.add_parser("random")
    rand.add_argument("--seed", type=int, required=True)
    rand.add_argument("--inputs", type=int, required=True)
    rand.add_argument("--outputs", type=int, required=True)
    rand.add_argument("--functions", type=int, required=True)
    rand.add_argument("--correct", type=int, required=True)
    rand.add_argument("--nondet-density", type=float, default=0.0)
    rand.set_defaults(func=_cmd_generate)
    factored = gen_sub.add_parser("factored")
    factored.add_argument("source")
    factored.add_argument("--count-only", action="store_true")
    factored.add_argument("--cap", type=int, default=100_000)
    factored.set_defaults(func=_cmd_generate)
    discretize = gen_sub.add_parser("discretize")
    discretize.add_argument("source")
    discretize.set_defaults(func=_cmd_generate)

    serve = sub.add_parser("serve", help="start the HTTP session API")
    serve.add_argument("--port", type=int, default=None, help="default: $ATDP_PORT or 8000")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui-dir", default=None, help="serve this directory as the web UI")
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (formats.FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
