"""State/action graphs with deterministic, nondeterministic and stochastic actions.

The model: a finite state set plus a list of actions.  An action has one
source state and a nonempty target set; a stochastic action additionally
carries an exact rational distribution over its targets.  Duplicate actions
(same source and targets, distinct ids) are legal.

Core semantics live here: whether an action is guaranteed/able to leave a
state set (``moves_off``), whether an action set can trap the system
(``contains_circuit``), and quotient graphs that collapse state blocks.
Probability magnitudes are never consulted anywhere in the package beyond
support membership, so everything is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import GraphFormatError, PreconditionError
from .ordering import natural_key, ordered


class ActionKind(enum.Enum):
    DETERMINISTIC = "det"
    NONDETERMINISTIC = "nondet"
    STOCHASTIC = "stoch"


@dataclass(frozen=True)
class Action:
    """One action: ``id: source -> targets`` with an optional distribution."""

    id: str
    source: str
    targets: frozenset[str]
    kind: ActionKind
    weights: tuple[tuple[str, Fraction], ...] | None = None

    def __post_init__(self):
        if not self.targets:
            raise PreconditionError(f"action {self.id!r} has an empty target set")
        if self.kind is ActionKind.DETERMINISTIC and len(self.targets) != 1:
            raise PreconditionError(f"deterministic action {self.id!r} must have one target")
        if self.kind is ActionKind.STOCHASTIC:
            if self.weights is None:
                raise PreconditionError(f"stochastic action {self.id!r} needs weights")
            covered = {t for t, _ in self.weights}
            if covered != set(self.targets):
                raise PreconditionError(f"weights of {self.id!r} do not cover its targets")
            if any(w <= 0 for _, w in self.weights):
                raise PreconditionError(f"weights of {self.id!r} must be strictly positive")
            if sum(w for _, w in self.weights) != 1:
                raise PreconditionError(f"weights of {self.id!r} do not sum to 1")
        elif self.weights is not None:
            raise PreconditionError(f"non-stochastic action {self.id!r} cannot carry weights")

    @property
    def single_target(self) -> bool:
        """True when the action behaves deterministically (one target)."""
        return len(self.targets) == 1

    def target(self) -> str:
        (t,) = self.targets
        return t


def make_action(
    id: str,
    source: str,
    targets: Iterable[str],
    kind: ActionKind | str = ActionKind.DETERMINISTIC,
    weights: Mapping[str, Fraction] | None = None,
) -> Action:
    """Convenience constructor normalizing kinds and weight ordering."""
    if isinstance(kind, str):
        kind = ActionKind(kind)
    wt = None
    if weights is not None:
        wt = tuple(sorted(((t, Fraction(w)) for t, w in weights.items()),
                          key=lambda p: natural_key(p[0])))
    return Action(id=id, source=source, targets=frozenset(targets), kind=kind, weights=wt)


@dataclass(frozen=True)
class Purity:
    """Which pure families a graph belongs to.

    A graph with only deterministic actions is both pure kinds at once;
    ``mixed`` means it is neither.
    """

    pure_nondeterministic: bool
    pure_stochastic: bool

    @property
    def mixed(self) -> bool:
        return not (self.pure_nondeterministic or self.pure_stochastic)

    def label(self) -> str:
        if self.pure_nondeterministic and self.pure_stochastic:
            return "pure-nondeterministic+pure-stochastic"
        if self.pure_nondeterministic:
            return "pure-nondeterministic"
        if self.pure_stochastic:
            return "pure-stochastic"
        return "mixed"


@dataclass(frozen=True)
class Graph:
    """A finite, immutable graph: ordered states and ordered actions."""

    states: tuple[str, ...]
    actions: tuple[Action, ...]

    def __post_init__(self):
        if not self.states:
            raise PreconditionError("a graph needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise PreconditionError("duplicate state ids")
        state_set = set(self.states)
        seen: set[str] = set()
        for a in self.actions:
            if a.id in seen:
                raise PreconditionError(f"duplicate action id {a.id!r}")
            seen.add(a.id)
            if a.source not in state_set:
                raise PreconditionError(f"action {a.id!r}: unknown source {a.source!r}")
            for t in a.targets:
                if t not in state_set:
                    raise PreconditionError(f"action {a.id!r}: unknown target {t!r}")

    @cached_property
    def _by_id(self) -> dict[str, Action]:
        return {a.id: a for a in self.actions}

    @cached_property
    def action_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.actions)

    def action(self, action_id: str) -> Action:
        try:
            return self._by_id[action_id]
        except KeyError:
            raise PreconditionError(f"unknown action id {action_id!r}") from None

    def subset(self, action_ids: Iterable[str]) -> list[Action]:
        return [self.action(i) for i in ordered(action_ids)]

    @cached_property
    def purity(self) -> Purity:
        kinds = {a.kind for a in self.actions}
        return Purity(
            pure_nondeterministic=ActionKind.STOCHASTIC not in kinds,
            pure_stochastic=ActionKind.NONDETERMINISTIC not in kinds,
        )


def make_graph(states: Iterable[str], actions: Iterable[Action]) -> Graph:
    """Build a graph in canonical order (states and action ids sorted)."""
    return Graph(
        states=tuple(ordered(states)),
        actions=tuple(sorted(actions, key=lambda a: natural_key(a.id))),
    )


def moves_off(action: Action, block: Iterable[str], graph: Graph) -> bool:
    """True iff executing ``action`` from inside ``block`` leaves it.

    Deterministic/nondeterministic actions must be *guaranteed* to leave
    (every target outside), stochastic actions merely *able* to (some
    target outside).  The source must lie inside the block.
    """
    w = frozenset(block)
    unknown = w - set(graph.states)
    if unknown:
        raise PreconditionError(f"states {ordered(unknown)} not in graph")
    if action.source not in w:
        return False
    if action.kind is ActionKind.STOCHASTIC:
        return any(t not in w for t in action.targets)
    return all(t not in w for t in action.targets)


def peeling_residual(action_ids: Iterable[str], graph: Graph) -> frozenset[str]:
    """Largest sub-collection none of whose actions moves off its own sources.

    Computed by repeatedly deleting any action that moves off the residual's
    source set until a fixpoint; the result is empty exactly when the input
    is convergent.
    """
    residual = {graph.action(i).id for i in action_ids}
    while residual:
        sources = {graph.action(i).source for i in residual}
        movers = [i for i in residual if moves_off(graph.action(i), sources, graph)]
        if not movers:
            break
        residual.difference_update(movers)
    return frozenset(residual)


def contains_circuit(action_ids: Iterable[str], graph: Graph) -> bool:
    """True iff some nonempty subset cannot ever leave its own source set."""
    return bool(peeling_residual(action_ids, graph))


def is_convergent(action_ids: Iterable[str], graph: Graph) -> bool:
    return not contains_circuit(action_ids, graph)


def block_state_name(block: Iterable[str], taken: Iterable[str] = ()) -> str:
    """Deterministic fresh name for a collapsed block of states."""
    name = "(" + "+".join(ordered(block)) + ")"
    existing = set(taken)
    while name in existing:
        name += "'"
    return name


@dataclass(frozen=True)
class QuotientMap:
    """Bookkeeping for a quotient: how states and actions correspond."""

    original: Graph
    state_image: Mapping[str, str]
    block_reps: tuple[tuple[frozenset[str], str], ...]
    kept_action_ids: tuple[str, ...]
    dropped_self_loops: tuple[str, ...]

    def unquotient_action(self, action_id: str) -> Action:
        """The original action behind a (relabeled) quotient action id."""
        if action_id not in set(self.kept_action_ids) | set(self.dropped_self_loops):
            raise PreconditionError(f"{action_id!r} does not correspond to a quotient action")
        return self.original.action(action_id)


def quotient(
    graph: Graph,
    blocks: Sequence[Iterable[str]],
    drop_pure_self_loops: bool = False,
) -> tuple[Graph, QuotientMap]:
    """Collapse each block of states to one fresh state.

    Action ids are preserved; sources and targets are relabeled, and the
    weights of a stochastic action's merged targets are summed.  With
    ``drop_pure_self_loops`` set, actions whose relabeled source and entire
    relabeled target set coincide in a single state are removed (they can
    never participate in any strategy of the quotient).
    """
    frozen_blocks = [frozenset(b) for b in blocks]
    state_set = set(graph.states)
    seen: set[str] = set()
    for b in frozen_blocks:
        if not b:
            raise PreconditionError("empty quotient block")
        if not b <= state_set:
            raise PreconditionError(f"block {ordered(b)} not a subset of the states")
        if b & seen:
            raise PreconditionError("quotient blocks overlap")
        seen |= b

    image: dict[str, str] = {s: s for s in graph.states}
    reps: list[tuple[frozenset[str], str]] = []
    taken = set(graph.states)
    for b in sorted(frozen_blocks, key=lambda blk: natural_key(min(blk, key=natural_key))):
        rep = block_state_name(b, taken)
        taken.add(rep)
        reps.append((b, rep))
        for s in b:
            image[s] = rep

    new_states = ordered(set(image.values()))
    kept: list[Action] = []
    dropped: list[str] = []
    for a in graph.actions:
        src = image[a.source]
        tgts = {image[t] for t in a.targets}
        if drop_pure_self_loops and tgts == {src}:
            dropped.append(a.id)
            continue
        weights = None
        if a.weights is not None:
            summed: dict[str, Fraction] = {}
            for t, w in a.weights:
                summed[image[t]] = summed.get(image[t], Fraction(0)) + w
            weights = summed
        kept.append(make_action(a.id, src, tgts, a.kind, weights))

    qg = make_graph(new_states, kept)
    qmap = QuotientMap(
        original=graph,
        state_image=image,
        block_reps=tuple(reps),
        kept_action_ids=tuple(a.id for a in qg.actions),
        dropped_self_loops=tuple(ordered(dropped)),
    )
    return qg, qmap


# --- graph description documents -------------------------------------------


def _parse_fraction(token: str, lineno: int) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise GraphFormatError("malformed rational", lineno, token) from None


def _parse_target_spec(spec: str, kind: ActionKind, lineno: int):
    spec = spec.strip()
    if not spec:
        raise GraphFormatError("missing target specification", lineno)
    if not spec.startswith("{"):
        if kind is ActionKind.STOCHASTIC:
            return [spec], {spec: Fraction(1)}
        return spec.split(), None
    if not spec.endswith("}"):
        raise GraphFormatError("unterminated target set", lineno, spec)
    inner = spec[1:-1].strip()
    if not inner:
        raise GraphFormatError("empty target set", lineno)
    targets: list[str] = []
    weights: dict[str, Fraction] = {}
    for item in inner.split(","):
        item = item.strip()
        if not item:
            raise GraphFormatError("empty item in target set", lineno)
        if ":" in item:
            state, _, frac = item.partition(":")
            state, frac = state.strip(), frac.strip()
            if kind is not ActionKind.STOCHASTIC:
                raise GraphFormatError("weights only allowed on stochastic actions",
                                       lineno, item)
            if state in weights:
                raise GraphFormatError("duplicate target", lineno, state)
            weights[state] = _parse_fraction(frac, lineno)
            targets.append(state)
        else:
            if kind is ActionKind.STOCHASTIC:
                raise GraphFormatError("stochastic targets need `state: p/q` items",
                                       lineno, item)
            if item in targets:
                raise GraphFormatError("duplicate target", lineno, item)
            targets.append(item)
    return targets, (weights if kind is ActionKind.STOCHASTIC else None)


def parse_graph(text: str) -> tuple[Graph, Purity]:
    """Parse a graph description document; see the package docs for the format.

    Raises :class:`GraphFormatError` naming the offending line and token.
    """
    states: list[str] | None = None
    actions: list[Action] = []
    ids: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("states:"):
            if states is not None:
                raise GraphFormatError("repeated states declaration", lineno)
            states = line[len("states:"):].split()
            if not states:
                raise GraphFormatError("empty state list", lineno)
            if len(set(states)) != len(states):
                dup = next(s for s in states if states.count(s) > 1)
                raise GraphFormatError("duplicate state id", lineno, dup)
            continue
        if not line.startswith("action"):
            raise GraphFormatError("unrecognized directive", lineno, line.split()[0])
        if states is None:
            raise GraphFormatError("action before states declaration", lineno)
        head, arrow, target_spec = line.partition("->")
        parts = head.split()
        if len(parts) != 4 or not arrow:
            raise GraphFormatError("malformed action line", lineno, line)
        _keyword, action_id, kind_token, source = parts
        try:
            kind = ActionKind(kind_token)
        except ValueError:
            raise GraphFormatError("unknown action kind", lineno, kind_token) from None
        if action_id in ids:
            raise GraphFormatError("duplicate action id", lineno, action_id)
        ids.add(action_id)
        if source not in states:
            raise GraphFormatError("unknown source state", lineno, source)
        targets, weights = _parse_target_spec(target_spec, kind, lineno)
        for t in targets:
            if t not in states:
                raise GraphFormatError("target outside state set", lineno, t)
        if kind is ActionKind.DETERMINISTIC and len(targets) != 1:
            raise GraphFormatError("deterministic action needs exactly one target",
                                   lineno, action_id)
        if weights is not None and sum(weights.values()) != 1:
            raise GraphFormatError("weights sum != 1", lineno, action_id)
        try:
            actions.append(make_action(action_id, source, targets, kind, weights))
        except PreconditionError as exc:
            raise GraphFormatError(str(exc), lineno, action_id) from None
    if states is None:
        raise GraphFormatError("missing states declaration", 1)
    graph = make_graph(states, actions)
    return graph, graph.purity


def serialize_graph(graph: Graph) -> str:
    """Canonical text form: sorted, normalized, round-trip stable."""
    lines = ["states: " + " ".join(graph.states)]
    for a in graph.actions:
        if a.kind is ActionKind.STOCHASTIC:
            assert a.weights is not None
            items = ", ".join(f"{t}: {w}" for t, w in a.weights)
            spec = "{ " + items + " }"
        elif len(a.targets) == 1:
            spec = a.target()
        else:
            spec = "{ " + ", ".join(ordered(a.targets)) + " }"
        lines.append(f"action {a.id} {a.kind.value} {a.source} -> {spec}")
    return "\n".join(lines) + "\n"
