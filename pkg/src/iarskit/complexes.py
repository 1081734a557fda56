"""Maximal strategies, minimal nonfaces, and the action relation of a graph.

A strategy is a convergent action set; the convergent sets form a simplicial
complex over the graph's actions.  This module enumerates the
inclusion-maximal strategies, derives the incidence relation between them
and the actions, decides full controllability, and enumerates/extracts
minimal nonfaces (inclusion-minimal nonconvergent sets).

Enumeration is exponential in the worst case, so every entry point takes a
budget that turns overflow into an explicit error rather than a silent
truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BudgetExceededError, InvariantViolationError, PreconditionError
from .graphs import Graph, contains_circuit, is_convergent
from .ordering import joined, ordered, set_key
from .relations import Relation


@dataclass(frozen=True)
class Budget:
    max_actions: int = 20
    max_nodes: int = 100_000


DEFAULT_BUDGET = Budget()


class _Meter:
    def __init__(self, budget: Budget, what: str):
        self.budget = budget
        self.what = what
        self.nodes = 0

    def tick(self, count: int = 1):
        self.nodes += count
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceededError(
                f"{self.what} exceeded the node budget ({self.budget.max_nodes})")


def _check_size(graph: Graph, budget: Budget, what: str):
    if len(graph.actions) > budget.max_actions:
        raise BudgetExceededError(
            f"{what}: {len(graph.actions)} actions exceed the budget "
            f"({budget.max_actions})")


def enumerate_maximal_strategies(graph: Graph, budget: Budget | None = None
                                 ) -> tuple[frozenset[str], ...]:
    """All inclusion-maximal convergent action sets, in canonical order."""
    budget = budget or DEFAULT_BUDGET
    _check_size(graph, budget, "maximal strategy enumeration")
    meter = _Meter(budget, "maximal strategy enumeration")
    ids = [a.id for a in graph.actions]
    found: set[frozenset[str]] = set()

    def extend(current: frozenset[str], index: int):
        meter.tick()
        if index == len(ids):
            if all(contains_circuit(current | {a}, graph)
                   for a in ids if a not in current):
                found.add(current)
            return
        candidate = ids[index]
        if is_convergent(current | {candidate}, graph):
            extend(current | {candidate}, index + 1)
        extend(current, index + 1)

    extend(frozenset(), 0)
    return tuple(sorted(found, key=set_key))


def goal_set(strategy: Iterable[str], graph: Graph) -> frozenset[str]:
    """States at which the strategy specifies no motion."""
    ids = frozenset(strategy)
    if contains_circuit(ids, graph):
        raise PreconditionError("goal set of a nonconvergent action set is undefined")
    sources = {graph.action(i).source for i in ids}
    return frozenset(graph.states) - sources


def is_fully_controllable(graph: Graph, budget: Budget | None = None) -> bool:
    """True when every single state is the goal set of some maximal strategy."""
    goals = {goal_set(s, graph) for s in enumerate_maximal_strategies(graph, budget)}
    return all(frozenset({v}) in goals for v in graph.states)


def strategy_key(strategy: Iterable[str]) -> str:
    """Canonical row key for a strategy: sorted action ids joined by ``+``."""
    return joined(strategy)


@dataclass(frozen=True)
class ActionRelation:
    """Incidence of maximal strategies (rows) against all actions (columns)."""

    relation: Relation
    strategies: tuple[frozenset[str], ...]
    goals: tuple[frozenset[str], ...]

    @property
    def row_keys(self) -> tuple[str, ...]:
        return self.relation.individuals

    def goals_by_key(self) -> dict[str, frozenset[str]]:
        return dict(zip(self.row_keys, self.goals))


def action_relation(graph: Graph, budget: Budget | None = None) -> ActionRelation:
    """The graph's action relation; every row is identifiable by construction."""
    if not graph.actions:
        raise PreconditionError("a graph without actions has no action relation")
    strategies = enumerate_maximal_strategies(graph, budget)
    keys = [strategy_key(s) for s in strategies]
    if len(set(keys)) != len(keys):
        raise InvariantViolationError("duplicate maximal strategies enumerated")
    relation = Relation(
        individuals=tuple(keys),
        attributes=tuple(a.id for a in graph.actions),
        pairs=frozenset((k, a) for k, s in zip(keys, strategies) for a in s),
    )
    goals = tuple(goal_set(s, graph) for s in strategies)
    return ActionRelation(relation=relation, strategies=strategies, goals=goals)


def _distinct_source_subsets(graph: Graph, meter: _Meter):
    """Subsets of actions with pairwise distinct sources, by ascending size."""
    per_state: dict[str, list[str]] = {}
    for a in graph.actions:
        per_state.setdefault(a.source, []).append(a.id)
    groups = [per_state[s] for s in ordered(per_state.keys())]

    def walk(index: int, chosen: tuple[str, ...]):
        meter.tick()
        if index == len(groups):
            yield frozenset(chosen)
            return
        yield from walk(index + 1, chosen)
        for candidate in groups[index]:
            yield from walk(index + 1, chosen + (candidate,))

    seen = sorted(walk(0, ()), key=lambda s: (len(s), set_key(s)))
    yield from seen


def enumerate_minimal_nonfaces(graph: Graph, budget: Budget | None = None
                               ) -> tuple[frozenset[str], ...]:
    """All inclusion-minimal nonconvergent action sets, in canonical order.

    Only subsets with pairwise distinct sources are examined; any minimal
    nonface has that shape.
    """
    budget = budget or DEFAULT_BUDGET
    _check_size(graph, budget, "minimal nonface enumeration")
    meter = _Meter(budget, "minimal nonface enumeration")
    found: list[frozenset[str]] = []
    for subset in _distinct_source_subsets(graph, meter):
        if not subset:
            continue
        if any(known <= subset for known in found):
            continue
        if contains_circuit(subset, graph):
            found.append(subset)
    for kappa in found:
        if any(contains_circuit(kappa - {a}, graph) for a in kappa):
            raise InvariantViolationError("non-minimal nonface slipped through")
    return tuple(sorted(found, key=lambda s: set_key(s)))


def shrink_to_minimal_nonface(
    candidates: Iterable[str],
    must_keep: str,
    graph: Graph,
    budget: Budget | None = None,
) -> frozenset[str]:
    """Canonical minimal nonface inside ``candidates`` that contains ``must_keep``.

    Canonical means smallest cardinality first, then lexicographically
    smallest id tuple; the result is deterministic and reproducible.
    """
    budget = budget or DEFAULT_BUDGET
    pool = frozenset(candidates)
    if must_keep not in pool:
        raise PreconditionError(f"{must_keep!r} is not among the candidate actions")
    if contains_circuit([must_keep], graph):
        raise PreconditionError(f"{{{must_keep!r}}} must itself be convergent")
    if is_convergent(pool, graph):
        raise PreconditionError("candidate set is convergent; nothing to shrink")
    meter = _Meter(budget, "minimal nonface shrinking")
    others = ordered(pool - {must_keep})
    for size in range(1, len(others) + 1):
        for combo in combinations(others, size):
            meter.tick()
            kappa = frozenset(combo) | {must_keep}
            if not contains_circuit(kappa, graph):
                continue
            if all(is_convergent(kappa - {a}, graph) for a in kappa):
                return kappa
    raise PreconditionError(
        f"no minimal nonface containing {must_keep!r} inside the candidate set")
