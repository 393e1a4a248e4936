"""Command line front end: validate / run / oracle / compare / signing / stats / generate.

Exit codes partition outcomes: 0 success, 1 validation failure (or compare
mismatch), 2 syntax/usage error, 3 no survivors (a definitive negative for the
start vertex, not a failure), 4 resource cap exceeded.

Structured output is one self-contained JSON record per line with keys in
fixed order; identical config and seed give byte-identical records. Timing
telemetry (the per-step stats channel and wall time) goes to stderr so it
never perturbs that contract.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .evolve import StepOptions, TermLimitExceeded, gate_count, run_walk
from .graphs import (
    GenerationFailedError,
    Graph,
    GraphSyntaxError,
    GraphValidationError,
    UnknownBuiltinError,
    builtin_graph,
    parse_graph,
    random_regular_bipartite,
)
from .oracle import GraphTooLargeError, compare_with_quantum, enumerate_hamiltonian
from .postselect import (
    NoSurvivors,
    apply_closure_filter,
    probability_decimal,
    project_alpha_all_ones,
    sample_measurement,
)
from .signing import build_flip_unitary, published_matrix, verify_flip_unitary

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_SYNTAX = 2
EXIT_NO_SURVIVORS = 3
EXIT_RESOURCE = 4

DEFAULT_MAX_TERMS = 1 << 25


def _load_graph(args) -> Graph:
    if args.builtin:
        return builtin_graph(args.builtin)
    with open(args.graph, encoding="utf-8") as fh:
        return parse_graph(fh.read(), name=args.graph)


def _graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="graph file to load")
    src.add_argument("--builtin", metavar="NAME",
                     help="builtin graph (c4, k33, cube8, prism<m>, heawood, moebius_kantor)")


def _emit(record: dict, fmt: str, human_lines: list[str]) -> None:
    if fmt == "structured":
        sys.stdout.write(json.dumps(record, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write("\n".join(human_lines) + "\n")


def _telemetry_printer(stats) -> None:
    sys.stderr.write(stats.format() + "\n")


def cmd_validate(args) -> int:
    if args.builtin:
        g = builtin_graph(args.builtin)
    else:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
        try:
            g = parse_graph(text, name=args.graph)
        except GraphValidationError as exc:
            for v in exc.violations:
                print(v)
            return EXIT_VALIDATION
    print(f"ok: simple {g.degree}-regular bipartite connected, n={g.n}")
    return EXIT_OK


def cmd_run(args) -> int:
    g = _load_graph(args)
    steps = args.steps if args.steps is not None else g.n - 1
    options = StepOptions(prune=args.prune, max_terms=args.max_terms)
    per_step_terms = [1]
    t0 = time.perf_counter()
    final = run_walk(g, args.start, steps=steps, options=options,
                     on_step=lambda s: (per_step_terms.append(s.terms),
                                        _telemetry_printer(s)))
    result = project_alpha_all_ones(final)
    if args.mode == "cycle":
        result = apply_closure_filter(result, g, args.start)
    try:
        walk = sample_measurement(result, args.seed)
        status = EXIT_OK
    except NoSurvivors:
        walk = None
        status = EXIT_NO_SURVIVORS
    wall_ms = (time.perf_counter() - t0) * 1000.0
    num, base, exp = result.probability_parts()
    gates = gate_count(g, steps, start=args.start)
    record = {
        "command": "run",
        "graph": g.name or "file",
        "graph_hash": g.content_hash(),
        "n": g.n,
        "d": g.degree,
        "start": args.start,
        "steps": steps,
        "filter_mode": args.mode,
        "prune": args.prune,
        "rng_seed": args.seed,
        "max_terms": args.max_terms,
        "survivor_count": result.survivor_count,
        "success_probability": {
            "num": num,
            "den_base": base,
            "den_exp": exp,
            "decimal": probability_decimal(result.success_probability),
        },
        "sampled_walk": list(walk) if walk else None,
        "gate_count": gates,
        "per_step_terms": per_step_terms,
    }
    human = [
        f"graph {record['graph']} (hash {record['graph_hash']}): n={g.n} d={g.degree}",
        f"start={args.start} steps={steps} mode={args.mode} prune={args.prune} seed={args.seed}",
        f"survivors: {result.survivor_count}",
        f"success probability: {num}/{base}^{exp} = {probability_decimal(result.success_probability)}",
        f"sampled walk: {','.join(map(str, walk)) if walk else '(none)'}",
        f"gate count: {gates}",
        f"per-step terms: {','.join(map(str, per_step_terms))}",
    ]
    _emit(record, args.format, human)
    sys.stderr.write(f"wall_ms={wall_ms:.2f}\n")
    return status


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    res = enumerate_hamiltonian(g, args.start)
    record = {
        "command": "oracle",
        "graph": g.name or "file",
        "graph_hash": g.content_hash(),
        "n": g.n,
        "d": g.degree,
        "start": args.start,
        "ham_path_count": len(res.ham_paths_from_start),
        "ham_cycle_count": len(res.ham_cycles_from_start),
        "undirected_cycle_count": len(res.ham_cycles_from_start) // 2,
        "walk_counts": list(res.walk_counts),
        "ham_paths": [list(p) for p in res.ham_paths_from_start],
        "ham_cycles": [list(c) for c in res.ham_cycles_from_start],
    }
    human = [
        f"graph {record['graph']}: n={g.n} d={g.degree} start={args.start}",
        f"hamiltonian paths from start: {record['ham_path_count']}",
        f"directed anchored cycles: {record['ham_cycle_count']} "
        f"(undirected: {record['undirected_cycle_count']})",
        f"walk counts by length: {','.join(map(str, res.walk_counts))}",
    ]
    human += ["cycle: " + ",".join(map(str, c)) for c in res.ham_cycles_from_start]
    _emit(record, args.format, human)
    return EXIT_OK


def cmd_compare(args) -> int:
    g = _load_graph(args)
    report = compare_with_quantum(g, args.start, mode=args.mode)
    record = {
        "command": "compare",
        "graph": g.name or "file",
        "graph_hash": g.content_hash(),
        "n": g.n,
        "d": g.degree,
        "start": args.start,
        "mode": args.mode,
        "match": report.match,
        "survivor_count": report.survivor_count,
        "oracle_count": report.oracle_count,
        "missing": [list(w) for w in report.missing],
        "extra": [list(w) for w in report.extra],
    }
    human = [
        f"graph {record['graph']}: n={g.n} d={g.degree} start={args.start} mode={args.mode}",
        f"match={'true' if report.match else 'false'} "
        f"(quantum {report.survivor_count}, oracle {report.oracle_count})",
    ]
    human += ["missing: " + ",".join(map(str, w)) for w in report.missing]
    human += ["extra: " + ",".join(map(str, w)) for w in report.extra]
    _emit(record, args.format, human)
    return EXIT_OK if report.match else EXIT_VALIDATION


def cmd_signing(args) -> int:
    flip = build_flip_unitary(args.d)
    audit = verify_flip_unitary(published_matrix(), 3)
    record = {
        "command": "signing",
        "d": args.d,
        "scale": flip.scale,
        "matrix": [list(row) for row in flip.entries],
        "published_audit": {
            "unitary": audit.unitary,
            "single_flip_support": audit.single_flip_support,
            "first_violation": list(audit.first_violation) if audit.first_violation else None,
            "violation_value": audit.violation_value,
        },
    }
    human = [f"corrected flip matrix, d={args.d}, every entry scaled by {flip.scale}:",
             str(flip),
             "",
             "erratum audit of the published 8x8 transcription (d=3):",
             f"  single_flip_support: {str(audit.single_flip_support).lower()}",
             f"  unitary: {str(audit.unitary).lower()}"]
    if audit.first_violation:
        kind, i, j = audit.first_violation
        human.append(f"  first violation: {kind} ({i},{j}), value {audit.violation_value}")
    _emit(record, args.format, human)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _load_graph(args)
    steps = args.steps if args.steps is not None else g.n - 1
    options = StepOptions(prune=args.prune, max_terms=args.max_terms)
    per_step = []
    run_walk(g, args.start, steps=steps, options=options,
             on_step=lambda s: (per_step.append(s), _telemetry_printer(s)))
    terms = [1] + [s.terms for s in per_step]
    gates = gate_count(g, steps, start=args.start)
    record = {
        "command": "stats",
        "graph": g.name or "file",
        "graph_hash": g.content_hash(),
        "n": g.n,
        "d": g.degree,
        "start": args.start,
        "steps": steps,
        "prune": args.prune,
        "gate_count": gates,
        "per_step_terms": terms,
        "per_step_pruned": [s.pruned for s in per_step],
    }
    human = [
        f"graph {record['graph']}: n={g.n} d={g.degree} start={args.start} steps={steps}",
        f"gate_count={gates}",
        f"per-step terms: {','.join(map(str, terms))}",
    ]
    _emit(record, args.format, human)
    return EXIT_OK


def cmd_generate(args) -> int:
    g = random_regular_bipartite(args.half, args.d, args.seed)
    sys.stdout.write(f"# random {args.d}-regular bipartite graph: "
                     f"half={args.half} seed={args.seed}\n")
    sys.stdout.write(g.serialize())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hamwalk",
        description="Quantum-walk Hamiltonian cycle search, exactly simulated "
                    "and oracle-checked.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, steps=False, mode=False, seed=False):
        _graph_args(p)
        p.add_argument("--start", type=int, default=1, help="start vertex (default 1)")
        p.add_argument("--format", choices=("human", "structured"), default="human")
        if steps:
            p.add_argument("--steps", type=int, default=None,
                           help="walk length (default n-1)")
            p.add_argument("--prune", action="store_true",
                           help="drop branches that cannot reach all-ones")
            p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                           help="abort when a step would exceed this term count")
        if mode:
            p.add_argument("--mode", choices=("path", "cycle"), default="cycle",
                           help="survivor filter (default cycle)")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="measurement rng seed")

    p = sub.add_parser("validate", help="check a graph against all required properties")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="full pipeline: walk, project, filter, measure")
    common(p, steps=True, mode=True, seed=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle", help="classical enumeration of Hamiltonian structures")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", help="diff quantum survivors against the oracle")
    common(p, mode=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("signing", help="print the corrected flip matrix and erratum audit")
    p.add_argument("--d", type=int, default=3, help="degree (default 3)")
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.set_defaults(func=cmd_signing)

    p = sub.add_parser("stats", help="gate count and per-step term telemetry")
    common(p, steps=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="emit a random regular bipartite graph file")
    p.add_argument("half", type=int, help="vertices per part")
    p.add_argument("d", type=int, help="degree")
    p.add_argument("seed", type=int, help="generator seed")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphSyntaxError as exc:
        sys.stderr.write(f"syntax error: {exc}\n")
        return EXIT_SYNTAX
    except (UnknownBuiltinError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SYNTAX
    except (GraphValidationError, GenerationFailedError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except (TermLimitExceeded, GraphTooLargeError) as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
