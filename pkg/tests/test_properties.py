"""Randomized, seeded property suites.

Each suite draws from its own deterministic RNG, so failures reproduce.
The end-to-end suites tolerate zero failures: every maximal strategy of
every generated graph must yield a verified release sequence of the
guaranteed length.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from iarskit.bruteforce import longest_iars_in_relation
from iarskit.complexes import (
    action_relation,
    enumerate_maximal_strategies,
    is_fully_controllable,
)
from iarskit.graphs import (
    contains_circuit,
    is_convergent,
    make_action,
    make_graph,
    moves_off,
    quotient,
)
from iarskit.hcg import (
    HcgLeaf,
    HcgNode,
    classify_tau,
    extract_hcg,
    hcg_graph,
    iter_nodes,
    nondet_iars,
    order_cycle_breaking,
    validate_hcg,
)
from iarskit.relations import (
    closure,
    face_classification,
    is_iars,
    make_relation,
    maximal_simplices,
    phi,
    psi,
)
from iarskit.stochastic import expand_min_nonfaces, expansive_sets, stochastic_iars


# --- generators ---------------------------------------------------------------


def random_mixed_graph(rng: random.Random, max_actions: int = 12):
    n = rng.randint(1, 5)
    states = [str(i) for i in range(1, n + 1)]
    count = rng.randint(1, max_actions)
    actions = []
    for i in range(count):
        src = rng.choice(states)
        kind = rng.choice(["det", "nondet", "stoch"])
        if kind == "det":
            targets = [rng.choice(states)]
        else:
            targets = rng.sample(states, rng.randint(1, n))
        weights = None
        if kind == "stoch":
            weights = {t: Fraction(1, len(targets)) for t in targets}
        actions.append(make_action(f"x{i}", src, targets, kind, weights))
    return make_graph(states, actions)


def random_controllable_graph(rng: random.Random, flavor: str):
    """A permutation cycle keeps the graph fully controllable; extras vary."""
    n = rng.randint(2, 5)
    states = [str(i) for i in range(1, n + 1)]
    order = states[:]
    rng.shuffle(order)
    actions = [make_action(f"c{i}", order[i], [order[(i + 1) % n]])
               for i in range(n)]
    for i in range(rng.randint(0, 4)):
        src = rng.choice(states)
        if flavor == "nondet":
            kind = rng.choice(["det", "nondet"])
        else:
            kind = rng.choice(["det", "stoch"])
        if kind == "det":
            targets = [rng.choice(states)]
            weights = None
        elif kind == "nondet":
            targets = rng.sample(states, rng.randint(2, n))
            weights = None
        else:
            targets = rng.sample(states, rng.randint(1, n))
            weights = {t: Fraction(1, len(targets)) for t in targets}
        actions.append(make_action(f"x{i}", src, targets, kind, weights))
    return make_graph(states, actions)


def random_relation(rng: random.Random, max_rows: int = 8, max_cols: int = 8):
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    individuals = [f"r{i}" for i in range(rows)]
    attributes = [f"c{j}" for j in range(cols)]
    mapping = {x: {y for y in attributes if rng.random() < 0.45}
               for x in individuals}
    return make_relation(mapping, attributes)


_COUNTER = 0


def random_hcg(rng: random.Random, states: list[str]):
    """A random tree decomposition over the given states, plus its actions."""
    global _COUNTER
    if len(states) == 1:
        return HcgLeaf(states[0]), []
    k = rng.randint(2, min(4, len(states)))
    pool = states[:]
    rng.shuffle(pool)
    blocks = [[pool[i]] for i in range(k)]
    for s in pool[k:]:
        rng.choice(blocks).append(s)
    children = []
    actions = []
    for block in blocks:
        child, inner = random_hcg(rng, block)
        children.append(child)
        actions.extend(inner)
    cycle = []
    for i, block in enumerate(blocks):
        nxt = blocks[(i + 1) % k]
        targets = rng.sample(nxt, rng.randint(1, len(nxt)))
        _COUNTER += 1
        ident = f"g{_COUNTER}"
        actions.append(make_action(
            ident, rng.choice(block), targets,
            "det" if len(targets) == 1 else "nondet"))
        cycle.append(ident)
    return HcgNode(children=tuple(children), cycle=tuple(cycle)), actions


# --- (a) peeling vs subset oracle ----------------------------------------------


def subset_oracle_contains_circuit(ids, graph) -> bool:
    pool = list(ids)
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            sources = {graph.action(i).source for i in combo}
            if not any(moves_off(graph.action(i), sources, graph) for i in combo):
                return True
    return False


def test_peeling_matches_subset_oracle_500_cases():
    rng = random.Random(20250809)
    for case in range(500):
        graph = random_mixed_graph(rng)
        ids = [a.id for a in graph.actions]
        subset = rng.sample(ids, rng.randint(0, len(ids)))
        assert contains_circuit(subset, graph) == \
            subset_oracle_contains_circuit(subset, graph), (case, subset)


def test_circuit_monotonicity_sampled():
    rng = random.Random(1107)
    for _ in range(200):
        graph = random_mixed_graph(rng)
        ids = [a.id for a in graph.actions]
        small = set(rng.sample(ids, rng.randint(0, len(ids))))
        big = small | set(rng.sample(ids, rng.randint(0, len(ids))))
        if contains_circuit(small, graph):
            assert contains_circuit(big, graph)
        if is_convergent(big, graph):
            assert is_convergent(small, graph)


# --- (b) closure-operator laws ---------------------------------------------------


def test_closure_laws_1000_cases():
    rng = random.Random(40923)
    for _ in range(1000):
        relation = random_relation(rng)
        attrs = list(relation.attributes)
        individuals = list(relation.individuals)
        gamma = frozenset(rng.sample(attrs, rng.randint(0, len(attrs))))
        delta = frozenset(rng.sample(attrs, rng.randint(0, len(attrs))))
        sigma = frozenset(rng.sample(individuals, rng.randint(0, len(individuals))))
        # inclusion-reversing, both ways around
        if gamma <= delta:
            assert psi(delta, relation) <= psi(gamma, relation)
        union_psi = psi(gamma | delta, relation)
        assert union_psi <= psi(gamma, relation)
        bigger_sigma = sigma | frozenset(
            rng.sample(individuals, rng.randint(0, len(individuals))))
        assert phi(bigger_sigma, relation) <= phi(sigma, relation)
        # extensivity and idempotence
        closed = closure(gamma, relation).closure
        assert gamma <= closed
        assert closure(closed, relation).closure == closed
        # phi . psi . phi == phi
        assert phi(psi(phi(sigma, relation), relation), relation) == phi(sigma, relation)


@given(st.integers(min_value=0, max_value=2**63 - 1))
@settings(max_examples=60, deadline=None)
def test_closure_laws_hypothesis(seed):
    rng = random.Random(seed)
    relation = random_relation(rng, max_rows=6, max_cols=6)
    attrs = list(relation.attributes)
    gamma = frozenset(rng.sample(attrs, rng.randint(0, len(attrs))))
    closed = closure(gamma, relation).closure
    assert gamma <= closed
    assert closure(closed, relation).closure == closed


def test_maximal_rows_are_closure_fixed():
    rng = random.Random(77)
    for _ in range(200):
        relation = random_relation(rng)
        for gamma in maximal_simplices(relation):
            assert closure(gamma, relation).closure == gamma


# --- (c) minimal nonfaces of a relation release in any order ---------------------


def _assert_nonface_permutations_are_informative(relation):
    report = face_classification(relation)
    for kappa in report.minimal_nonfaces:
        if len(kappa) > 4:
            continue
        for perm in permutations(sorted(kappa)):
            assert is_iars(list(perm), relation), (kappa, perm)


def test_nonface_permutations_random_relations():
    rng = random.Random(5150)
    for _ in range(120):
        _assert_nonface_permutations_are_informative(random_relation(rng, 6, 6))


def test_nonface_permutations_fixture_relations(hand_relations, relations):
    for relation, _ in hand_relations.values():
        _assert_nonface_permutations_are_informative(relation)
    for fid in ["cycle4", "ex202b", "ex251", "exh5"]:
        _assert_nonface_permutations_are_informative(relations[fid].relation)


def test_enlargement_criterion_brute_force():
    # for a maximal row gamma and outside vertex y: eta + y is a simplex iff
    # every minimal nonface inside gamma + y leaves something uncovered
    rng = random.Random(8181)
    for _ in range(60):
        relation = random_relation(rng, 5, 6)
        maximal = maximal_simplices(relation)
        nonfaces = face_classification(relation).minimal_nonfaces
        for gamma in maximal:
            for y in relation.attributes:
                if y in gamma:
                    continue
                inside = [k for k in nonfaces if k <= gamma | {y}]
                for size in range(len(gamma) + 1):
                    for eta in combinations(sorted(gamma), size):
                        enlarged = frozenset(eta) | {y}
                        is_simplex = any(enlarged <= m for m in maximal)
                        criterion = all(k - enlarged for k in inside)
                        assert is_simplex == criterion


# --- (d) end-to-end theorem properties --------------------------------------------


def test_every_strategy_of_random_nondet_graphs_yields_iars():
    rng = random.Random(90125)
    checked = 0
    for _ in range(60):
        graph = random_controllable_graph(rng, "nondet")
        assert is_fully_controllable(graph)
        tree = extract_hcg(graph)
        ok, problems = validate_hcg(tree, graph)
        assert ok, problems
        relation = action_relation(graph).relation
        n = len(graph.states)
        for sigma in enumerate_maximal_strategies(graph):
            sequence = nondet_iars(sigma, graph, tree)
            assert len(sequence) >= n - 1
            assert is_iars(list(sequence), relation)
            checked += 1
    assert checked >= 100


def test_every_strategy_of_random_stochastic_graphs_yields_iars():
    rng = random.Random(31415)
    checked = 0
    for _ in range(60):
        graph = random_controllable_graph(rng, "stoch")
        assert is_fully_controllable(graph)
        relation = action_relation(graph).relation
        n = len(graph.states)
        for sigma in enumerate_maximal_strategies(graph):
            sequence = stochastic_iars(sigma, graph)
            assert len(sequence) == n - 1
            assert is_iars(list(sequence), relation)
            checked += 1
    assert checked >= 100


# --- (e) construction invariants beyond the builders' own assertions ----------------


def test_expansion_traces_hold_their_invariants_on_random_graphs():
    rng = random.Random(2718)
    for _ in range(40):
        graph = random_controllable_graph(rng, "stoch")
        for sigma in enumerate_maximal_strategies(graph):
            trace = expansive_sets(expand_min_nonfaces(sigma, graph))
            union = trace.expansive_union()
            assert len(union) == len(trace.steps[-1].states_so_far) - 1
            previous = None
            for step in trace.steps:
                if previous is not None:
                    assert previous < step.states_so_far
                previous = step.states_so_far


def test_expansion_independence_sampled(graphs):
    rng = random.Random(606)
    for fid in ["ex251", "exh5", "ex241"]:
        graph = graphs[fid]
        for sigma in enumerate_maximal_strategies(graph):
            trace = expansive_sets(expand_min_nonfaces(sigma, graph))
            for i, step in enumerate(trace.steps):
                prev_actions = (trace.steps[i - 1].actions_so_far if i
                                else frozenset())
                prev_states = (trace.steps[i - 1].states_so_far if i
                               else frozenset({graph.action(step.probe).source}))
                sub_prev = make_graph(prev_states or {graph.action(step.probe).source},
                                      [graph.action(a) for a in prev_actions])
                sub_here = make_graph(step.states_so_far,
                                      [graph.action(a) for a in step.actions_so_far])
                prev_ids = [a.id for a in sub_prev.actions]
                for _ in range(10):
                    tau = rng.sample(prev_ids, rng.randint(0, len(prev_ids)))
                    if is_convergent(tau, sub_prev):
                        assert is_convergent(set(tau) | step.expansive, sub_here)


# --- hierarchical decompositions over random trees ----------------------------------


def test_random_hcgs_validate_and_are_controllable():
    rng = random.Random(12021)
    for _ in range(40):
        n = rng.randint(2, 6)
        states = [str(i) for i in range(1, n + 1)]
        tree, actions = random_hcg(rng, states)
        graph = make_graph(states, actions)
        ok, problems = validate_hcg(tree, graph)
        assert ok, problems
        assert is_fully_controllable(graph)
        for action in graph.actions:
            assert is_convergent([action.id], graph)


def test_random_dissections_hold_their_invariants():
    # acyclic_dissection asserts its own invariants (the four set laws, the
    # size law, the per-block size law) on every run; drive it across random
    # trees and random action subsets, including non-disruptive ones
    rng = random.Random(777)
    for _ in range(40):
        n = rng.randint(2, 6)
        states = [str(i) for i in range(1, n + 1)]
        tree, actions = random_hcg(rng, states)
        graph = make_graph(states, actions)
        from iarskit.hcg import acyclic_dissection

        ids = [a.id for a in graph.actions]
        for _ in range(4):
            tau = frozenset(rng.sample(ids, rng.randint(0, len(ids))))
            dissection = acyclic_dissection(tau, tree, graph)
            m = len(dissection.tau_o | dissection.tau_plus | dissection.tau_minus)
            assert m == n - 1 if dissection.h_star_is_leaf else m == n


def test_cycle_breaking_subsets_are_convergent_and_orderable():
    rng = random.Random(4242)
    for _ in range(30):
        n = rng.randint(2, 6)
        states = [str(i) for i in range(1, n + 1)]
        tree, actions = random_hcg(rng, states)
        graph = make_graph(states, actions)
        host = hcg_graph(tree, graph)
        relation = action_relation(host).relation
        for _ in range(6):
            tau: set[str] = set()
            for node in iter_nodes(tree):
                keep = rng.randint(0, len(node.cycle) - 1)
                tau |= set(rng.sample(list(node.cycle), keep))
            assert classify_tau(tau, tree).cycle_breaking
            assert is_convergent(tau, host)
            if tau:
                sequence = order_cycle_breaking(tau, tree, host, relation=relation)
                assert frozenset(sequence) == frozenset(tau)


# --- quotient facts and lifting -----------------------------------------------------


def test_quotient_facts_sampled():
    rng = random.Random(1999)
    for _ in range(120):
        graph = random_mixed_graph(rng, max_actions=8)
        if len(graph.states) < 2:
            continue
        block = set(rng.sample(list(graph.states),
                               rng.randint(1, len(graph.states))))
        qg, _ = quotient(graph, [block])
        ids = [a.id for a in graph.actions]
        subset = rng.sample(ids, rng.randint(0, len(ids)))
        # convergent in the quotient -> convergent in the original
        if is_convergent(subset, qg):
            assert is_convergent(subset, graph)
        # untouched sources -> convergence survives into the quotient
        sources = {graph.action(i).source for i in subset}
        if is_convergent(subset, graph) and not sources & block:
            assert is_convergent(subset, qg)


def test_quotient_preserves_full_controllability():
    rng = random.Random(333)
    for _ in range(40):
        graph = random_controllable_graph(rng, "nondet")
        block = set(rng.sample(list(graph.states),
                               rng.randint(1, len(graph.states))))
        qg, _ = quotient(graph, [block])
        assert is_fully_controllable(qg)


def test_lifting_quotient_sequences(graphs):
    # sequences informative for G/W lift to G when W carries a fully
    # controllable subgraph; appending a subgraph sequence stays informative
    graph = graphs["ex202b"]
    block = {"1", "2", "3"}
    sub = make_graph(block, [graph.action(i) for i in ["e1", "e2", "e3"]])
    assert is_fully_controllable(sub)
    qg, _ = quotient(graph, [block], drop_pure_self_loops=True)
    q_relation = action_relation(qg).relation
    g_relation = action_relation(graph).relation
    sub_relation = action_relation(sub).relation
    for q_sigma in enumerate_maximal_strategies(qg):
        if not q_sigma:
            continue
        _, witness = longest_iars_in_relation(q_sigma, q_relation)
        assert is_iars(list(witness), q_relation)
        assert is_iars(list(witness), g_relation)  # the lift
        for sub_sigma in enumerate_maximal_strategies(sub):
            _, sub_witness = longest_iars_in_relation(sub_sigma, sub_relation)
            combined = list(witness) + list(sub_witness)
            assert is_iars(combined, g_relation)
