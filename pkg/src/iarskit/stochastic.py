"""The stochastic release-sequence builder: minimal-nonface expansion.

For a maximal strategy of a fully controllable pure stochastic graph, grow a
fully controllable subgraph by probing actions outside the strategy: each
probe closes a minimal nonface whose remaining actions belong to the
strategy.  Each step contributes an "expansive" action set covering the
newly absorbed states; concatenating the expansive sets in reverse step
order (behind a recursively obtained quotient prefix when the coverage
stops short of the full state space) yields a verified informative release
sequence of length exactly n-1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .complexes import (
    Budget,
    action_relation,
    enumerate_maximal_strategies,
    goal_set,
    is_fully_controllable,
    shrink_to_minimal_nonface,
)
from .errors import InvariantViolationError, PreconditionError
from .graphs import (
    Graph,
    contains_circuit,
    is_convergent,
    make_graph,
    moves_off,
    quotient,
)
from .ordering import natural_key, ordered
from .relations import is_iars


@dataclass(frozen=True)
class ExpansionStep:
    """One probe: the minimal nonface it closes and the accumulated coverage."""

    probe: str                      # action probed from outside the strategy
    kappa: frozenset[str]           # minimal nonface through the probe
    actions_so_far: frozenset[str]  # union of the nonfaces up to this step
    states_so_far: frozenset[str]   # their sources: covered state space
    xi: frozenset[str]              # strategy actions sourced outside the coverage
    tau: frozenset[str]             # maximal extension of xi in the quotient (host ids)
    expansive: frozenset[str] | None = None


@dataclass(frozen=True)
class ExpansionTrace:
    graph: Graph
    sigma: frozenset[str]
    steps: tuple[ExpansionStep, ...]

    @property
    def k(self) -> int:
        return len(self.steps)

    def expansive_union(self) -> frozenset[str]:
        out: set[str] = set()
        for step in self.steps:
            if step.expansive is None:
                raise PreconditionError("expansive sets have not been computed yet")
            out |= step.expansive
        return frozenset(out)

    def to_payload(self) -> dict:
        """JSON-friendly audit form of the trace."""
        return {
            "sigma": ordered(self.sigma),
            "k": self.k,
            "steps": [
                {
                    "probe": s.probe,
                    "kappa": ordered(s.kappa),
                    "actions_so_far": ordered(s.actions_so_far),
                    "states_so_far": ordered(s.states_so_far),
                    "xi": ordered(s.xi),
                    "tau": ordered(s.tau),
                    "expansive": None if s.expansive is None else ordered(s.expansive),
                }
                for s in self.steps
            ],
        }


def _check_inputs(sigma: frozenset[str], graph: Graph, budget: Budget | None):
    if not graph.purity.pure_stochastic:
        raise PreconditionError("the builder requires a pure stochastic graph")
    if len(graph.states) < 2:
        raise PreconditionError("need at least two states")
    if sigma not in enumerate_maximal_strategies(graph, budget):
        raise PreconditionError("sigma is not a maximal strategy of the graph")
    if not is_fully_controllable(graph, budget):
        raise PreconditionError("the graph is not fully controllable")


def _greedy_maximal_extension(base: Iterable[str], graph: Graph) -> frozenset[str]:
    """Smallest-first greedy extension of a convergent set to a maximal one."""
    current = set(base)
    if contains_circuit(current, graph):
        raise InvariantViolationError("extension base is not convergent")
    for a in graph.actions:  # canonical order
        if a.id not in current and is_convergent(current | {a.id}, graph):
            current.add(a.id)
    return frozenset(current)


def expand_min_nonfaces(sigma: Iterable[str], graph: Graph,
                        budget: Budget | None = None) -> ExpansionTrace:
    """Run the expansion loop; expansive sets are filled in separately."""
    sigma_set = frozenset(sigma)
    _check_inputs(sigma_set, graph, budget)

    goals = goal_set(sigma_set, graph)
    g0 = min(goals, key=natural_key)
    candidates = [a.id for a in graph.actions
                  if a.source == g0 and is_convergent([a.id], graph)]
    if not candidates:
        raise InvariantViolationError(f"no convergent action at goal state {g0!r}")

    probe = candidates[0]
    kappa = shrink_to_minimal_nonface(sigma_set | {probe}, probe, graph, budget)
    covered_actions = frozenset(kappa)
    covered_states = frozenset(graph.action(i).source for i in kappa)
    probes = {probe}
    steps: list[ExpansionStep] = []

    while True:
        xi = frozenset(a for a in sigma_set
                       if graph.action(a).source not in covered_states)
        quotient_graph, _ = quotient(graph, [covered_states])
        tau = _greedy_maximal_extension(xi, quotient_graph)
        steps.append(ExpansionStep(
            probe=probe,
            kappa=kappa,
            actions_so_far=covered_actions,
            states_so_far=covered_states,
            xi=xi,
            tau=tau,
        ))
        if tau <= sigma_set:
            break
        probe = ordered(tau - sigma_set)[0]
        if probe in probes:
            raise InvariantViolationError("probe repeated; expansion is not growing")
        probes.add(probe)
        kappa = shrink_to_minimal_nonface(sigma_set | {probe}, probe, graph, budget)
        new_states = frozenset(graph.action(i).source for i in kappa)
        if new_states <= covered_states:
            raise InvariantViolationError("covered states did not grow strictly")
        covered_actions = covered_actions | kappa
        covered_states = covered_states | new_states

    trace = ExpansionTrace(graph=graph, sigma=sigma_set, steps=tuple(steps))
    _assert_trace_invariants(trace, budget)
    return trace


def _assert_trace_invariants(trace: ExpansionTrace, budget: Budget | None):
    graph = trace.graph
    previous: frozenset[str] | None = None
    seen: set[str] = set()
    for step in trace.steps:
        if step.probe in seen:
            raise InvariantViolationError("expansion probes are not distinct")
        seen.add(step.probe)
        if previous is not None and not previous < step.states_so_far:
            raise InvariantViolationError("covered states do not grow strictly")
        previous = step.states_so_far
        sub = make_graph(step.states_so_far,
                         [graph.action(i) for i in step.actions_so_far])
        if not is_fully_controllable(sub, budget):
            raise InvariantViolationError("covered subgraph lost full controllability")


def expansive_sets(trace: ExpansionTrace, budget: Budget | None = None
                   ) -> ExpansionTrace:
    """Fill in each step's expansive action set (covering the new states)."""
    graph = trace.graph
    steps = list(trace.steps)
    filled: list[ExpansionStep] = []
    for i, step in enumerate(steps):
        if i == 0:
            w_prev: frozenset[str] = frozenset({graph.action(step.probe).source})
            expansive = step.kappa - {step.probe}
        else:
            prior = steps[i - 1]
            w_prev = prior.states_so_far
            fresh = step.states_so_far - w_prev
            pool = step.kappa - prior.actions_so_far - {step.probe}
            outside = frozenset(a for a in pool
                                if graph.action(a).source not in w_prev)
            if len(outside) == len(fresh):
                expansive = outside
            elif len(outside) == len(fresh) - 1:
                boundary = _backchain_boundary_action(step, pool, w_prev, graph)
                expansive = outside | {boundary}
            else:
                raise InvariantViolationError(
                    "expansive candidates cannot cover the newly absorbed states")
        looking_back = [a for a in expansive if graph.action(a).source in w_prev]
        if len(looking_back) > 1:
            raise InvariantViolationError("more than one expansive action looks back")
        filled.append(replace(step, expansive=frozenset(expansive)))

    out = ExpansionTrace(graph=graph, sigma=trace.sigma, steps=tuple(filled))
    union = out.expansive_union()
    if len(union) != len(out.steps[-1].states_so_far) - 1:
        raise InvariantViolationError("expansive sets violate the cardinality law")
    if sum(len(s.expansive or ()) for s in out.steps) != len(union):
        raise InvariantViolationError("expansive sets are not pairwise disjoint")
    if not union <= trace.sigma:
        raise InvariantViolationError("expansive sets escape the strategy")
    return out


def _backchain_boundary_action(step: ExpansionStep, pool: frozenset[str],
                               w_prev: frozenset[str], graph: Graph) -> str:
    """Pick a boundary action with positive-probability reach to the probe.

    Walks backwards from the probe's source inside the minimal nonface,
    switching to an action sourced in the already-covered states as soon as
    one becomes available.
    """
    kappa = step.kappa
    sub = make_graph({graph.action(i).source for i in kappa},
                     [graph.action(i) for i in kappa])
    chain: set[str] = {step.probe}
    while True:
        chain_sources = {graph.action(i).source for i in chain}
        remainder = frozenset(sub.states) - chain_sources
        movers = [i for i in ordered(kappa)
                  if graph.action(i).source in remainder
                  and moves_off(graph.action(i), remainder, sub)]
        if not movers:
            raise InvariantViolationError("backchaining stalled inside the nonface")
        covered = [i for i in movers if graph.action(i).source in w_prev]
        if covered:
            if covered[0] not in pool:
                raise InvariantViolationError(
                    "boundary action is not eligible for the expansive set")
            return covered[0]
        eligible = [i for i in movers if i in pool and i not in chain]
        if not eligible:
            raise InvariantViolationError("backchaining found no eligible extension")
        chain.add(eligible[0])


def stochastic_iars(sigma: Iterable[str], graph: Graph,
                    budget: Budget | None = None) -> tuple[str, ...]:
    """A verified informative release sequence of length n-1 inside sigma."""
    sigma_set = frozenset(sigma)
    trace = expansive_sets(expand_min_nonfaces(sigma_set, graph, budget), budget)
    sequence: list[str] = []

    last = trace.steps[-1]
    if last.tau:
        quotient_graph, _ = quotient(graph, [last.states_so_far])
        sequence.extend(stochastic_iars(last.tau, quotient_graph, budget))
    for step in reversed(trace.steps):
        assert step.expansive is not None
        sequence.extend(ordered(step.expansive))

    relation = action_relation(graph, budget).relation
    verdict = is_iars(sequence, relation)
    if not verdict:
        raise InvariantViolationError(
            f"constructed sequence failed verification at {verdict.failure_index}")
    if len(sequence) != len(graph.states) - 1:
        raise InvariantViolationError(
            f"sequence length {len(sequence)} != {len(graph.states) - 1}")
    if not frozenset(sequence) <= sigma_set:
        raise InvariantViolationError("sequence escapes the strategy")
    return tuple(sequence)
