"""Command-line front end.

Subcommands mirror the library: parse/serialize graphs, enumerate
strategies and nonfaces, decide controllability, work with tree
decompositions, build and check release sequences, replay fixtures, run an
interactive reveal loop, and serve the HTTP API.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures as fixture_corpus
from .bruteforce import brute_force_longest_iars
from .complexes import (
    Budget,
    action_relation,
    enumerate_maximal_strategies,
    enumerate_minimal_nonfaces,
    is_fully_controllable,
)
from .errors import (
    BudgetExceededError,
    GraphFormatError,
    HcgFormatError,
    InvariantViolationError,
    PreconditionError,
    RelationFormatError,
)
from .graphs import Graph, parse_graph, serialize_graph
from .hcg import (
    acyclic_dissection,
    extract_hcg,
    nondet_iars_audit,
    parse_hcg,
    serialize_hcg,
    validate_hcg,
)
from .ordering import joined, ordered
from .relations import is_iars, write_relation_csv
from .sessions import RevealSession
from .stochastic import expand_min_nonfaces, expansive_sets, stochastic_iars

USER_ERRORS = (GraphFormatError, RelationFormatError, HcgFormatError,
               PreconditionError, BudgetExceededError, InvariantViolationError)


def _load_graph(path: str) -> Graph:
    if path.startswith("fixture:"):
        graph, _ = fixture_corpus.load_graph_fixture(path[len("fixture:"):])
        return graph
    graph, _ = parse_graph(Path(path).read_text("utf-8"))
    return graph


def _budget(args) -> Budget:
    return Budget(max_actions=args.max_actions, max_nodes=args.max_nodes)


def _split_actions(raw: str) -> frozenset[str]:
    return frozenset(t for t in raw.replace("+", ",").split(",") if t)


def cmd_parse(args) -> int:
    graph, purity = parse_graph(Path(args.graph).read_text("utf-8"))
    sys.stdout.write(serialize_graph(graph))
    print(f"# purity: {purity.label()}")
    return 0


def cmd_strategies(args) -> int:
    graph = _load_graph(args.graph)
    for sigma in enumerate_maximal_strategies(graph, _budget(args)):
        goal = joined(frozenset(graph.states)
                      - {graph.action(i).source for i in sigma})
        print(f"{joined(sigma)} | goal {goal}")
    return 0


def cmd_relation(args) -> int:
    graph = _load_graph(args.graph)
    ar = action_relation(graph, _budget(args))
    sys.stdout.write(write_relation_csv(ar.relation, ar.goals_by_key(),
                                        key_header="strategy"))
    return 0


def cmd_nonfaces(args) -> int:
    graph = _load_graph(args.graph)
    for kappa in enumerate_minimal_nonfaces(graph, _budget(args)):
        print(joined(kappa))
    return 0


def cmd_controllable(args) -> int:
    graph = _load_graph(args.graph)
    verdict = is_fully_controllable(graph, _budget(args))
    print("fully-controllable" if verdict else "not-fully-controllable")
    return 0 if verdict else 1


def cmd_hcg(args) -> int:
    graph = _load_graph(args.graph)
    if args.hcg_command == "extract":
        sys.stdout.write(serialize_hcg(extract_hcg(graph, _budget(args))))
        return 0
    tree = parse_hcg(Path(args.tree).read_text("utf-8"))
    ok, problems = validate_hcg(tree, graph)
    print("valid" if ok else "invalid")
    for problem in problems:
        print(f"  {problem}")
    return 0 if ok else 1


def cmd_dissect(args) -> int:
    graph = _load_graph(args.graph)
    tree = parse_hcg(Path(args.tree).read_text("utf-8"))
    d = acyclic_dissection(_split_actions(args.actions), tree, graph)
    print(json.dumps({
        "tau_o": ordered(d.tau_o),
        "tau_plus": ordered(d.tau_plus),
        "tau_minus": ordered(d.tau_minus),
        "xi": ordered(d.xi),
        "core": ordered(d.core),
        "h_star_is_leaf": d.h_star_is_leaf,
        "marked_nodes": [ordered(b) for b in d.marked_nodes],
    }, indent=2))
    return 0


def cmd_iars(args) -> int:
    graph = _load_graph(args.graph)
    budget = _budget(args)
    if args.iars_command == "nondet":
        tree = (parse_hcg(Path(args.tree).read_text("utf-8"))
                if args.tree else extract_hcg(graph, budget))
        audit = nondet_iars_audit(_split_actions(args.sigma), graph, tree, budget)
        if args.audit:
            print(json.dumps(audit.to_payload(), indent=2))
        print(",".join(audit.sequence))
        return 0
    if args.iars_command == "stoch":
        sequence = stochastic_iars(_split_actions(args.sigma), graph, budget)
        if args.trace:
            trace = expansive_sets(
                expand_min_nonfaces(_split_actions(args.sigma), graph, budget), budget)
            print(json.dumps(trace.to_payload(), indent=2))
        print(",".join(sequence))
        return 0
    if args.iars_command == "verify":
        relation = action_relation(graph, budget).relation
        verdict = is_iars([t for t in args.sequence.split(",") if t], relation)
        if verdict:
            print("informative")
            return 0
        print(f"not-informative (first failure at position {verdict.failure_index})")
        return 1
    length, witness = brute_force_longest_iars(
        _split_actions(args.sigma), graph, max_nodes=args.search_nodes, budget=budget)
    print(f"{length}: {','.join(witness)}")
    return 0


def cmd_reveal(args) -> int:
    if args.relation in fixture_corpus.RELATION_FIXTURES:
        relation, goals = fixture_corpus.load_relation_fixture(args.relation)
    elif args.relation in fixture_corpus.GRAPH_FIXTURES:
        graph, _ = fixture_corpus.load_graph_fixture(args.relation)
        ar = action_relation(graph)
        relation, goals = ar.relation, ar.goals_by_key()
    else:
        from .relations import read_relation_csv
        relation, goals = read_relation_csv(Path(args.relation).read_text("utf-8"))
    session = RevealSession.start(relation, goals)
    print("attributes:", " ".join(relation.attributes))
    print("commands: reveal <attribute> | show | quit")
    for line in sys.stdin:
        words = line.split()
        if not words:
            continue
        if words[0] in {"quit", "exit", "q"}:
            break
        try:
            if words[0] == "reveal" and len(words) == 2:
                session = session.reveal(words[1])
            elif words[0] != "show":
                print("?")
                continue
        except PreconditionError as exc:
            print(f"error: {exc}")
            continue
        print(json.dumps(session.view()))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_fixtures(args) -> int:
    if args.fixtures_command == "list":
        for info in fixture_corpus.fixture_infos():
            print(f"{info.fixture_id}\t{info.kind}\t{info.title}")
        return 0
    for fixture_id in fixture_corpus.GRAPH_FIXTURES:
        graph, purity = fixture_corpus.load_graph_fixture(fixture_id)
        ar = action_relation(graph)
        print(f"{fixture_id}: {len(graph.states)} states, {len(graph.actions)} actions, "
              f"{len(ar.strategies)} maximal strategies, {purity.label()}")
    for fixture_id in fixture_corpus.RELATION_FIXTURES:
        relation, _ = fixture_corpus.load_relation_fixture(fixture_id)
        print(f"{fixture_id}: {len(relation.individuals)} rows, "
              f"{len(relation.attributes)} attributes")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iarskit",
        description="Strategy complexes and informative action release sequences.")
    parser.add_argument("--max-actions", type=int, default=20,
                        help="enumeration budget: action count (default 20)")
    parser.add_argument("--max-nodes", type=int, default=100_000,
                        help="enumeration budget: visited nodes (default 100000)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a graph file and echo its canonical form")
    p.add_argument("graph")
    p.set_defaults(func=cmd_parse)

    for name, func, help_text in [
        ("strategies", cmd_strategies, "list maximal strategies and their goal sets"),
        ("relation", cmd_relation, "emit the action relation as CSV"),
        ("nonfaces", cmd_nonfaces, "list minimal nonfaces"),
        ("controllable", cmd_controllable, "decide full controllability"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph file, or fixture:<id>")
        p.set_defaults(func=func)

    p = sub.add_parser("hcg", help="extract or validate a tree decomposition")
    hcg_sub = p.add_subparsers(dest="hcg_command", required=True)
    q = hcg_sub.add_parser("extract")
    q.add_argument("graph")
    q.set_defaults(func=cmd_hcg)
    q = hcg_sub.add_parser("validate")
    q.add_argument("graph")
    q.add_argument("tree")
    q.set_defaults(func=cmd_hcg)

    p = sub.add_parser("dissect", help="acyclic dissection of an action set")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("actions", help="comma- or plus-separated action ids")
    p.set_defaults(func=cmd_dissect)

    p = sub.add_parser("iars", help="build, verify, or search release sequences")
    iars_sub = p.add_subparsers(dest="iars_command", required=True)
    q = iars_sub.add_parser("nondet")
    q.add_argument("graph")
    q.add_argument("sigma")
    q.add_argument("--tree", help="tree decomposition file (default: extract one)")
    q.add_argument("--audit", action="store_true", help="also print the construction record")
    q.set_defaults(func=cmd_iars)
    q = iars_sub.add_parser("stoch")
    q.add_argument("graph")
    q.add_argument("sigma")
    q.add_argument("--trace", action="store_true", help="also print the expansion trace")
    q.set_defaults(func=cmd_iars)
    q = iars_sub.add_parser("verify")
    q.add_argument("graph")
    q.add_argument("sequence", help="comma-separated action ids, in release order")
    q.set_defaults(func=cmd_iars)
    q = iars_sub.add_parser("longest")
    q.add_argument("graph")
    q.add_argument("sigma")
    q.add_argument("--search-nodes", type=int, default=1_000_000)
    q.set_defaults(func=cmd_iars)

    p = sub.add_parser("reveal", help="interactive reveal loop over a relation")
    p.add_argument("relation", help="fixture id or relation CSV file")
    p.set_defaults(func=cmd_reveal)

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8411)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("fixtures", help="list or replay the bundled corpus")
    fixtures_sub = p.add_subparsers(dest="fixtures_command", required=True)
    fixtures_sub.add_parser("list").set_defaults(func=cmd_fixtures)
    fixtures_sub.add_parser("run").set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
