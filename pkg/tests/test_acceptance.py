"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Budgets are asserted with wall-clock measurements.
"""

from __future__ import annotations

import time

from iarskit.bruteforce import brute_force_longest_iars, full_permutation_tally
from iarskit.complexes import (
    action_relation,
    enumerate_maximal_strategies,
    enumerate_minimal_nonfaces,
)
from iarskit.fixtures import load_graph_fixture, load_relation_fixture
from iarskit.hcg import HcgLeaf, HcgNode, nondet_iars
from iarskit.relations import (
    closure,
    face_classification,
    is_iars,
    is_identifiable,
    psi,
    write_relation_csv,
)
from iarskit.stochastic import stochastic_iars

from conftest import expected_relation_csv

ALL_GRAPH_FIXTURES = ["cycle4", "ex202b", "ex200", "ex202", "ex241", "ex249",
                      "ex251", "exh5", "ex61", "ex62", "ex63"]

EXPECTED_ROWS = {"cycle4": 4, "ex202b": 6, "ex200": 5, "ex202": 7, "ex241": 10,
                 "ex249": 5, "ex251": 4, "exh5": 6, "ex61": 5, "ex62": 10,
                 "ex63": 32}


def _announce(name: str):
    print(f"ACCEPTANCE PASS: {name}")


def test_criterion_fixture_exact_relations():
    started = time.perf_counter()
    for fixture_id in ALL_GRAPH_FIXTURES:
        graph, _ = load_graph_fixture(fixture_id)
        ar = action_relation(graph)
        assert len(ar.strategies) == EXPECTED_ROWS[fixture_id], fixture_id
        produced = write_relation_csv(ar.relation, ar.goals_by_key(),
                                      key_header="strategy")
        assert produced == expected_relation_csv(fixture_id), fixture_id
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"relation reproduction took {elapsed:.2f}s"
    _announce(f"fixture-exact relation reproduction ({elapsed:.2f}s < 5s)")


def test_criterion_minimal_nonfaces():
    cycle4, _ = load_graph_fixture("cycle4")
    assert enumerate_minimal_nonfaces(cycle4) == (
        frozenset({"e1", "e2", "e3", "e4"}),)
    ex202b, _ = load_graph_fixture("ex202b")
    assert set(enumerate_minimal_nonfaces(ex202b)) == {
        frozenset({"e1", "e2", "e3"}), frozenset({"a2", "b4"})}
    ex63, _ = load_graph_fixture("ex63")
    pairs = {kappa for kappa in enumerate_minimal_nonfaces(ex63)
             if len(kappa) == 2
             and any(a.startswith("d") for a in kappa)
             and any(a.startswith("e") for a in kappa)}
    assert pairs == {frozenset({f"d{i}", f"e{j}"})
                     for i in range(2, 6) for j in range(2, 6) if i != j}
    _announce("minimal nonfaces exactly match the printed sets")


def _tree_ex202b():
    inner = HcgNode(children=(HcgLeaf("1"), HcgLeaf("2"), HcgLeaf("3")),
                    cycle=("e1", "e2", "e3"))
    return HcgNode(children=(inner, HcgLeaf("4")), cycle=("a2", "b4"))


def _tree_ex249():
    inner = HcgNode(children=(HcgLeaf("1"), HcgLeaf("2"), HcgLeaf("3")),
                    cycle=("a1", "a2", "a3"))
    return HcgNode(children=(inner, HcgLeaf("4")), cycle=("e2", "e4"))


def _tree_ex241_flat():
    return HcgNode(children=tuple(HcgLeaf(s) for s in ["1", "2", "6", "4", "5", "3"]),
                   cycle=("a1", "e2", "a6", "a4", "e5", "a3"))


def _tree_ex241_two_node():
    n = HcgNode(children=(HcgLeaf("1"), HcgLeaf("2"), HcgLeaf("3")),
                cycle=("a1", "a2", "a3"))
    m = HcgNode(children=(HcgLeaf("4"), HcgLeaf("5"), HcgLeaf("6")),
                cycle=("a4", "a5", "a6"))
    return HcgNode(children=(n, m), cycle=("e2", "e5"))


def test_criterion_nondet_constructor_goldens():
    ex202, _ = load_graph_fixture("ex202")
    assert nondet_iars({"e1", "a1", "a2", "a3"}, ex202, _tree_ex202b()) == \
        ("a2", "e1", "a3", "a1")

    ex249, _ = load_graph_fixture("ex249")
    assert nondet_iars({"e2", "e4", "a2", "b1", "b2"}, ex249, _tree_ex249()) == \
        ("e2", "a2", "b2", "b1")

    ex241, _ = load_graph_fixture("ex241")
    sigma = {"e2", "e5", "a2", "a3", "a5", "a6"}
    assert nondet_iars(sigma, ex241, _tree_ex241_flat()) == \
        ("e2", "e5", "a3", "a6", "a2", "a5")

    # non-canonical-choice path: a different decomposition still verifies
    # and meets the theorem bound (quotient collapses to a leaf: >= n-1)
    relation = action_relation(ex241).relation
    other = nondet_iars(sigma, ex241, _tree_ex241_two_node())
    assert is_iars(list(other), relation)
    assert len(other) >= len(ex241.states) - 1

    # every maximal strategy of every nondeterministic fixture verifies
    for fixture_id, tree in [("ex202", _tree_ex202b()), ("ex249", _tree_ex249()),
                             ("ex241", _tree_ex241_flat())]:
        graph, _ = load_graph_fixture(fixture_id)
        rel = action_relation(graph).relation
        bound = len(graph.states) - 1
        for strategy in enumerate_maximal_strategies(graph):
            sequence = nondet_iars(strategy, graph, tree)
            assert is_iars(list(sequence), rel)
            assert len(sequence) >= bound
    _announce("nondeterministic constructor goldens and bounds")


def test_criterion_stochastic_constructor_goldens():
    ex251, _ = load_graph_fixture("ex251")
    assert stochastic_iars({"a1", "a2", "d2"}, ex251) == ("a2", "d2")

    ex241, _ = load_graph_fixture("ex241")
    seq = stochastic_iars({"e2", "e5", "a2", "a3", "a5", "a6"}, ex241)
    assert seq[0] == "e2"
    assert set(seq[1:3]) == {"a5", "a6"} and set(seq[3:5]) == {"a2", "a3"}
    assert len(seq) == 5

    exh5, _ = load_graph_fixture("exh5")
    seq = stochastic_iars({"a2", "a3", "e3", "c2"}, exh5)
    assert seq[0] == "a3" and set(seq[1:]) == {"a2", "e3"}

    verdict = is_iars(["a2", "e3", "a3"], action_relation(exh5).relation)
    assert not verdict and verdict.failure_index == 3
    _announce("stochastic constructor goldens and order sensitivity")


def test_criterion_counterexample_certification():
    started = time.perf_counter()
    ex61, _ = load_graph_fixture("ex61")
    length, _ = brute_force_longest_iars({"c1", "a1"}, ex61)
    assert length == 2
    ex62, _ = load_graph_fixture("ex62")
    length, _ = brute_force_longest_iars({"a1", "d2", "d3", "d4", "c1"}, ex62)
    assert length == 3
    ex63, _ = load_graph_fixture("ex63")
    length, _ = brute_force_longest_iars(
        {"a1", "d2", "d3", "d4", "d5", "c1"}, ex63)
    assert length == 4
    exh5, _ = load_graph_fixture("exh5")
    assert full_permutation_tally({"a2", "a3", "e3", "c2"}, exh5) == (12, 24)
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"counterexample certification took {elapsed:.2f}s"
    _announce(f"counterexample certification ({elapsed:.2f}s < 30s)")


def test_criterion_property_suites():
    import test_properties as props

    started = time.perf_counter()
    props.test_peeling_matches_subset_oracle_500_cases()          # (a)
    props.test_closure_laws_1000_cases()                          # (b)
    props.test_nonface_permutations_random_relations()            # (c)
    props.test_every_strategy_of_random_nondet_graphs_yields_iars()    # (d)
    props.test_every_strategy_of_random_stochastic_graphs_yields_iars()  # (d)
    props.test_expansion_traces_hold_their_invariants_on_random_graphs()  # (e)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"property suites took {elapsed:.2f}s"
    _announce(f"randomized property suites (a)-(e) ({elapsed:.2f}s < 60s)")


def test_criterion_dowker_narrative_checks():
    lake, _ = load_relation_fixture("lake")
    assert psi({"H->L", "L->P"}, lake) == {"pi1", "pi5"}
    assert "L->R" in closure({"H->L", "R->P"}, lake).implied
    assert not is_identifiable("pi1", lake)
    assert is_identifiable("pi3", lake)

    stream, _ = load_relation_fixture("stream_fishing")
    report = face_classification(stream)
    assert set(report.free_faces) == {
        frozenset({"d1", "d2"}), frozenset({"d1", "d3"}), frozenset({"d2", "d3"})}

    weak, _ = load_relation_fixture("weak_motor")
    assert psi({"f", "d2"}, weak) == frozenset()
    _announce("narrative relation checks")
