"""Exhaustive search for the longest informative release sequence in a strategy.

DFS over orderings with closure pruning: a prefix that is already inferable
is never extended, so the search walks only informative prefixes.  Budgeted;
exhaustive within the given strategy.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable

from .complexes import Budget, action_relation
from .errors import BudgetExceededError, PreconditionError
from .graphs import Graph
from .ordering import ordered
from .relations import Relation, closure, is_iars

DEFAULT_SEARCH_NODES = 1_000_000


def brute_force_longest_iars(
    sigma: Iterable[str],
    graph: Graph,
    max_nodes: int = DEFAULT_SEARCH_NODES,
    budget: Budget | None = None,
) -> tuple[int, tuple[str, ...]]:
    """Longest informative ordering of any subset of ``sigma``, with a witness.

    The witness is the lexicographically first sequence of maximum length.
    """
    sigma_ids = ordered(frozenset(sigma))
    if not sigma_ids:
        raise PreconditionError("empty strategy")
    relation = action_relation(graph, budget).relation
    unknown = set(sigma_ids) - set(relation.attributes)
    if unknown:
        raise PreconditionError(f"actions {ordered(unknown)} not in the relation")

    best_len = 0
    best: tuple[str, ...] = ()
    visited = 0

    def search(prefix: list[str], inferable: frozenset[str]):
        nonlocal best_len, best, visited
        visited += 1
        if visited > max_nodes:
            raise BudgetExceededError(
                f"longest-sequence search exceeded {max_nodes} nodes")
        if len(prefix) > best_len:
            best_len = len(prefix)
            best = tuple(prefix)
        for candidate in sigma_ids:
            if candidate in prefix or candidate in inferable:
                continue
            prefix.append(candidate)
            search(prefix, closure(prefix, relation).closure)
            prefix.pop()

    search([], closure([], relation).closure)
    return best_len, best


def full_permutation_tally(sigma: Iterable[str], graph: Graph,
                           budget: Budget | None = None) -> tuple[int, int]:
    """How many orderings of the *entire* strategy are informative."""
    sigma_ids = ordered(frozenset(sigma))
    relation = action_relation(graph, budget).relation
    total = 0
    valid = 0
    for perm in permutations(sigma_ids):
        total += 1
        if is_iars(list(perm), relation):
            valid += 1
    return valid, total


def longest_iars_in_relation(attributes: Iterable[str], relation: Relation,
                             max_nodes: int = DEFAULT_SEARCH_NODES
                             ) -> tuple[int, tuple[str, ...]]:
    """Same search directly over a relation's attributes."""
    pool = ordered(frozenset(attributes))
    best_len = 0
    best: tuple[str, ...] = ()
    visited = 0

    def search(prefix: list[str], inferable: frozenset[str]):
        nonlocal best_len, best, visited
        visited += 1
        if visited > max_nodes:
            raise BudgetExceededError(
                f"longest-sequence search exceeded {max_nodes} nodes")
        if len(prefix) > best_len:
            best_len = len(prefix)
            best = tuple(prefix)
        for candidate in pool:
            if candidate in prefix or candidate in inferable:
                continue
            prefix.append(candidate)
            search(prefix, closure(prefix, relation).closure)
            prefix.pop()

    search([], closure([], relation).closure)
    return best_len, best
