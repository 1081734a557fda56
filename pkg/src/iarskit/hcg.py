"""Hierarchical cyclic graphs and the nondeterministic release-sequence builder.

A hierarchical cyclic graph (hcg) is a tree: leaves carry one state each and
every internal node carries k >= 2 children joined by k cycle actions, the
i-th sourced in child i with all targets in child i+1 (cyclically).  Such a
graph is always fully controllable, and every fully controllable pure
nondeterministic graph contains one on its full state space.

The pipeline implemented here: classify an action set as cycle-breaking /
disruptive, dissect it by marking-and-quotienting until disruption, take
forward projections along the kept cycle actions, and assemble a verified
informative release sequence for any maximal strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .complexes import (
    Budget,
    action_relation,
    enumerate_maximal_strategies,
    is_fully_controllable,
    shrink_to_minimal_nonface,
)
from .errors import HcgFormatError, InvariantViolationError, PreconditionError
from .graphs import (
    ActionKind,
    Graph,
    block_state_name,
    contains_circuit,
    make_graph,
    quotient,
)
from .ordering import natural_key, ordered
from .relations import Relation, closure, is_iars


@dataclass(frozen=True)
class HcgLeaf:
    state: str


@dataclass(frozen=True)
class HcgNode:
    children: tuple["HcgTree", ...]
    cycle: tuple[str, ...]  # cycle[i] is sourced in children[i]


HcgTree = Union[HcgLeaf, HcgNode]


def tree_states(tree: HcgTree) -> frozenset[str]:
    if isinstance(tree, HcgLeaf):
        return frozenset({tree.state})
    out: set[str] = set()
    for child in tree.children:
        out |= tree_states(child)
    return frozenset(out)


def tree_action_ids(tree: HcgTree) -> frozenset[str]:
    if isinstance(tree, HcgLeaf):
        return frozenset()
    out = set(tree.cycle)
    for child in tree.children:
        out |= tree_action_ids(child)
    return frozenset(out)


def iter_nodes(tree: HcgTree):
    """All internal nodes, preorder (root first, children left to right)."""
    if isinstance(tree, HcgNode):
        yield tree
        for child in tree.children:
            yield from iter_nodes(child)


def covers_only_leaves(node: HcgNode) -> bool:
    return all(isinstance(c, HcgLeaf) for c in node.children)


def hcg_graph(tree: HcgTree, host: Graph) -> Graph:
    """The hcg viewed as a graph in its own right (a subgraph of the host)."""
    return make_graph(tree_states(tree), [host.action(i) for i in tree_action_ids(tree)])


def core_cycle_actions(tree: HcgTree) -> frozenset[str]:
    """For each state, the unique parent-node cycle action targeting it."""
    if isinstance(tree, HcgLeaf):
        return frozenset()
    core: set[str] = set()

    def visit(node: HcgNode):
        k = len(node.children)
        for i, child in enumerate(node.children):
            if isinstance(child, HcgLeaf):
                core.add(node.cycle[(i - 1) % k])
            else:
                visit(child)

    visit(tree)
    return frozenset(core)


# --- serialization -----------------------------------------------------------


def serialize_hcg(tree: HcgTree) -> str:
    lines: list[str] = []

    def emit(t: HcgTree, depth: int):
        pad = "  " * depth
        if isinstance(t, HcgLeaf):
            lines.append(f"{pad}leaf {t.state}")
        else:
            lines.append(f"{pad}node cycle=[{','.join(t.cycle)}]")
            for child in t.children:
                emit(child, depth + 1)

    emit(tree, 0)
    return "\n".join(lines) + "\n"


def parse_hcg(text: str) -> HcgTree:
    entries: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if indent % 2:
            raise HcgFormatError(f"line {lineno}: odd indentation")
        entries.append((indent // 2, stripped, str(lineno)))
    if not entries:
        raise HcgFormatError("empty tree document")

    pos = 0

    def build(depth: int) -> HcgTree:
        nonlocal pos
        level, line, lineno = entries[pos]
        if level != depth:
            raise HcgFormatError(f"line {lineno}: unexpected indentation")
        pos += 1
        if line.startswith("leaf "):
            return HcgLeaf(state=line[len("leaf "):].strip())
        if not line.startswith("node cycle=[") or not line.endswith("]"):
            raise HcgFormatError(f"line {lineno}: expected `leaf <state>` or `node cycle=[...]`")
        cycle = tuple(t.strip() for t in line[len("node cycle=["):-1].split(",") if t.strip())
        children: list[HcgTree] = []
        while pos < len(entries) and entries[pos][0] == depth + 1:
            children.append(build(depth + 1))
        return HcgNode(children=tuple(children), cycle=cycle)

    tree = build(0)
    if pos != len(entries):
        raise HcgFormatError(f"line {entries[pos][2]}: trailing content outside the tree")
    return tree


# --- validity ----------------------------------------------------------------


def validate_hcg(tree: HcgTree, host: Graph) -> tuple[bool, tuple[str, ...]]:
    """Check the decomposition conditions against the host graph.

    Returns (ok, diagnostics); diagnostics enumerate every violated clause.
    """
    problems: list[str] = []
    leaf_states: list[str] = []

    def visit(t: HcgTree, path: str):
        if isinstance(t, HcgLeaf):
            leaf_states.append(t.state)
            if t.state not in host.states:
                problems.append(f"{path}: leaf state {t.state!r} not in the host")
            return
        k = len(t.children)
        if k < 2:
            problems.append(f"{path}: a node needs at least two children")
        if len(t.cycle) != k:
            problems.append(f"{path}: node has {k} children but {len(t.cycle)} cycle actions")
        child_states = [tree_states(c) for c in t.children]
        for i, cs in enumerate(child_states):
            for j in range(i + 1, len(child_states)):
                if cs & child_states[j]:
                    problems.append(f"{path}: children {i} and {j} overlap")
        for i, action_id in enumerate(t.cycle):
            try:
                a = host.action(action_id)
            except PreconditionError:
                problems.append(f"{path}: cycle action {action_id!r} not in the host")
                continue
            if a.kind is ActionKind.STOCHASTIC:
                problems.append(f"{path}: cycle action {action_id!r} is stochastic")
            if i < len(child_states) and a.source not in child_states[i]:
                problems.append(
                    f"{path}: cycle action {action_id!r} not sourced in child {i}")
            if child_states:
                nxt = child_states[(i + 1) % len(child_states)]
                if not a.targets <= nxt:
                    problems.append(
                        f"{path}: cycle action {action_id!r} targets outside child "
                        f"{(i + 1) % len(child_states)}")
        for i, child in enumerate(t.children):
            visit(child, f"{path}.{i}")

    visit(tree, "root")
    if len(set(leaf_states)) != len(leaf_states):
        problems.append("duplicate leaf states")
    if not frozenset(leaf_states) <= frozenset(host.states):
        problems.append("leaf states escape the host state set")
    return (not problems, tuple(problems))


# --- extraction --------------------------------------------------------------


def _deterministic_predecessor(state: str, graph: Graph):
    """Canonical single-target non-looping action targeting ``state``."""
    for a in graph.actions:  # canonical id order
        if a.single_target and a.target() == state and a.source != state:
            return a
    return None


def _rotate_to_min(states_cycle: list[str], actions_cycle: list[str]):
    pivot = min(range(len(states_cycle)), key=lambda i: natural_key(states_cycle[i]))
    return (states_cycle[pivot:] + states_cycle[:pivot],
            actions_cycle[pivot:] + actions_cycle[:pivot])


def _normalize(tree: HcgTree) -> HcgTree:
    """Rotate every node so the child containing the smallest state comes first."""
    if isinstance(tree, HcgLeaf):
        return tree
    children = [_normalize(c) for c in tree.children]
    mins = [min(tree_states(c), key=natural_key) for c in children]
    pivot = min(range(len(children)), key=lambda i: natural_key(mins[i]))
    return HcgNode(
        children=tuple(children[pivot:] + children[:pivot]),
        cycle=tuple(tree.cycle[pivot:]) + tuple(tree.cycle[:pivot]),
    )


def extract_hcg(graph: Graph, budget: Budget | None = None) -> HcgTree:
    """A hierarchical cyclic subgraph on the full state space.

    Backchains single-target actions into a cycle, quotients it away,
    recurses, then splices the cycle back in.  All choices resolve to the
    smallest eligible candidate, so the result is deterministic.
    """
    if not graph.purity.pure_nondeterministic:
        raise PreconditionError("hcg extraction requires a pure nondeterministic graph")
    if not is_fully_controllable(graph, budget):
        raise PreconditionError("hcg extraction requires a fully controllable graph")
    return _normalize(_extract(graph))


def _extract(graph: Graph) -> HcgTree:
    if len(graph.states) == 1:
        return HcgLeaf(state=graph.states[0])
    start = min(graph.states, key=natural_key)
    path = [start]
    via: list[str] = []  # via[i] carries path[i+1] -> path[i]
    positions = {start: 0}
    while True:
        pred = _deterministic_predecessor(path[-1], graph)
        if pred is None:
            raise InvariantViolationError(
                f"no single-target action targets {path[-1]!r}; "
                "the graph cannot be fully controllable")
        nxt = pred.source
        via.append(pred.id)
        if nxt in positions:
            j = positions[nxt]
            loop_states = path[j:]
            loop_actions = via[j:]
            break
        positions[nxt] = len(path)
        path.append(nxt)

    # Walk the loop forward: state loop_states[j+1] reaches loop_states[j]
    # through loop_actions[j], so reverse into cycle order.
    m = len(loop_states)
    forward_states = [loop_states[(m - i) % m] for i in range(m)]
    forward_actions = [loop_actions[(m - 1 - i) % m] for i in range(m)]
    forward_states, forward_actions = _rotate_to_min(forward_states, forward_actions)
    cycle_node = HcgNode(
        children=tuple(HcgLeaf(s) for s in forward_states),
        cycle=tuple(forward_actions),
    )
    if len(forward_states) == len(graph.states):
        return cycle_node

    quotient_graph, qmap = quotient(graph, [frozenset(forward_states)],
                                    drop_pure_self_loops=True)
    rep = qmap.block_reps[0][1]
    sub = _extract(quotient_graph)

    def splice(t: HcgTree) -> HcgTree:
        if isinstance(t, HcgLeaf):
            return cycle_node if t.state == rep else t
        return HcgNode(children=tuple(splice(c) for c in t.children), cycle=t.cycle)

    return splice(sub)


# --- classification ----------------------------------------------------------


@dataclass(frozen=True)
class TauClassification:
    cycle_breaking: bool
    disruptive: bool


def classify_tau(tau: Iterable[str], tree: HcgTree) -> TauClassification:
    """Cycle-breaking: misses an action of every node's cycle.  Disruptive:
    misses at least two of every leaves-only node's cycle."""
    tau_set = frozenset(tau)
    foreign = tau_set - tree_action_ids(tree)
    if foreign:
        raise PreconditionError(f"actions {ordered(foreign)} are not in the tree")
    cycle_breaking = True
    disruptive = True
    for node in iter_nodes(tree):
        missing = [c for c in node.cycle if c not in tau_set]
        if not missing:
            cycle_breaking = False
        if covers_only_leaves(node) and len(missing) < 2:
            disruptive = False
    return TauClassification(cycle_breaking=cycle_breaking, disruptive=disruptive)


def _arc_distance(cycle: tuple[str, ...], present: frozenset[str]) -> dict[str, int]:
    """Steps from each present cycle action back to the nearest gap."""
    k = len(cycle)
    dist: dict[str, int] = {}
    for i, c in enumerate(cycle):
        if c not in present:
            continue
        d = 0
        j = (i - 1) % k
        while cycle[j] in present:
            d += 1
            j = (j - 1) % k
            if d > k:
                raise InvariantViolationError("no gap in a supposedly broken cycle")
        dist[c] = d
    return dist


def order_cycle_breaking(
    tau: Iterable[str],
    tree: HcgTree,
    host: Graph,
    relation: Relation | None = None,
    budget: Budget | None = None,
) -> tuple[str, ...]:
    """An informative ordering of a nonempty cycle-breaking action set.

    Nodes are emitted root-first; within a node the present cycle actions go
    out by distance from the start of their arc, ties by id.  The result is
    verified against the host's action relation before being returned.
    """
    tau_set = frozenset(tau)
    if not tau_set:
        raise PreconditionError("the action set must be nonempty")
    if not classify_tau(tau_set, tree).cycle_breaking:
        raise PreconditionError("the action set is not cycle-breaking in the tree")
    sequence: list[str] = []
    for node in iter_nodes(tree):
        present = frozenset(node.cycle) & tau_set
        if not present:
            continue
        dist = _arc_distance(node.cycle, present)
        sequence.extend(sorted(present, key=lambda c: (dist[c], natural_key(c))))
    verdict = is_iars(sequence, relation or action_relation(host, budget).relation)
    if not verdict:
        raise InvariantViolationError(
            f"cycle-breaking ordering failed verification at {verdict.failure_index}")
    return tuple(sequence)


# --- forward projections ------------------------------------------------------


@dataclass(frozen=True)
class ForwardProjection:
    source: frozenset[str]
    strategy: frozenset[str]
    result: frozenset[str]


def forward_projection(block: Iterable[str], strategy: Iterable[str],
                       graph: Graph) -> ForwardProjection:
    """All states the system might pass through or stop at from ``block``."""
    w = frozenset(block)
    if not w:
        raise PreconditionError("forward projection of an empty state set")
    if not w <= frozenset(graph.states):
        raise PreconditionError("projection block escapes the state set")
    sigma = frozenset(strategy)
    if contains_circuit(sigma, graph):
        raise PreconditionError("forward projection under a nonconvergent set is undefined")
    reached = set(w)
    frontier = list(w)
    while frontier:
        state = frontier.pop()
        for i in sigma:
            a = graph.action(i)
            if a.source != state:
                continue
            for t in a.targets:
                if t not in reached:
                    reached.add(t)
                    frontier.append(t)
    return ForwardProjection(source=w, strategy=sigma, result=frozenset(reached))


# --- acyclic dissection -------------------------------------------------------


@dataclass(frozen=True)
class AcyclicDissection:
    tau_o: frozenset[str]
    tau_plus: frozenset[str]
    tau_minus: frozenset[str]
    xi: frozenset[str]
    marked_nodes: tuple[frozenset[str], ...]  # state sets, in marking order
    h_star: HcgTree
    h_star_is_leaf: bool
    core: frozenset[str]  # actions that become core cycle actions of h_star


def _quotient_tree(tree: HcgTree, marked: set[tuple[int, ...]],
                   taken: Iterable[str]) -> HcgTree:
    taken_names = set(taken)

    def visit(t: HcgTree, path: tuple[int, ...]) -> HcgTree:
        if path in marked:
            name = block_state_name(tree_states(t), taken_names)
            return HcgLeaf(state=name)
        if isinstance(t, HcgLeaf):
            return t
        return HcgNode(
            children=tuple(visit(c, path + (i,)) for i, c in enumerate(t.children)),
            cycle=t.cycle,
        )

    return visit(tree, ())


def acyclic_dissection(tau: Iterable[str], tree: HcgTree, host: Graph
                       ) -> AcyclicDissection:
    """Dissect ``tau`` into (tau_o, tau_plus, tau_minus, xi) by marking nodes
    until the surviving trace is disruptive in the quotient."""
    tau_set = frozenset(tau)
    foreign = tau_set - tree_action_ids(tree)
    if foreign:
        raise PreconditionError(f"actions {ordered(foreign)} are not in the tree")

    paths: dict[tuple[int, ...], HcgNode] = {}

    def index(t: HcgTree, path: tuple[int, ...]):
        if isinstance(t, HcgNode):
            paths[path] = t
            for i, c in enumerate(t.children):
                index(c, path + (i,))

    index(tree, ())

    marked: set[tuple[int, ...]] = set()
    marked_order: list[frozenset[str]] = []
    kappa: set[str] = set()

    def child_settled(t: HcgTree, path: tuple[int, ...]) -> bool:
        return isinstance(t, HcgLeaf) or path in marked

    def inside_marked(path: tuple[int, ...]) -> bool:
        return any(path[:k] in marked for k in range(len(path) + 1))

    def leaves_only_unmarked():
        """Surviving nodes whose quotient image covers only leaves."""
        out = []
        for path, node in paths.items():
            if inside_marked(path):
                continue
            if all(child_settled(c, path + (i,)) for i, c in enumerate(node.children)):
                out.append((path, node))
        return out

    def disruptive_now() -> bool:
        for _, node in leaves_only_unmarked():
            if len([c for c in node.cycle if c not in tau_set]) < 2:
                return False
        return True

    while not disruptive_now():
        eligible = [
            (path, node)
            for path, node in leaves_only_unmarked()
            if len([c for c in node.cycle if c not in tau_set]) <= 1
        ]
        if not eligible:
            raise InvariantViolationError("not disruptive yet no node is markable")
        path, node = min(
            eligible,
            key=lambda e: natural_key(min(tree_states(e[1]), key=natural_key)),
        )
        absent = [c for c in node.cycle if c not in tau_set]
        if absent:
            discard = absent[0]
        else:
            discard = max(node.cycle, key=natural_key)
        kappa.update(c for c in node.cycle if c != discard)
        marked.add(path)
        marked_order.append(tree_states(node))
        # drop nodes nested inside a marked one from the maximal-marked view
        for p in list(marked):
            if p != path and len(p) > len(path) and p[:len(path)] == path:
                marked.discard(p)

    h_star = _quotient_tree(tree, marked, host.states)
    h_star_is_leaf = isinstance(h_star, HcgLeaf)
    core = core_cycle_actions(h_star)

    xi: set[str] = set()
    for path, node in paths.items():
        if inside_marked(path):
            continue
        cycle_set = frozenset(node.cycle)
        inside = cycle_set & tau_set
        if inside < cycle_set:
            xi |= inside
        else:
            droppable = ordered(cycle_set - core)
            if not droppable:
                raise InvariantViolationError(
                    "a fully contained node cycle has no non-core action to drop")
            c = droppable[-1]
            xi |= cycle_set - {c}

    tau_o = frozenset(kappa)
    tau_plus = frozenset(core & xi)
    tau_minus = frozenset(core - xi)
    maximal_blocks = tuple(tree_states(paths[p]) for p in sorted(marked))
    result = AcyclicDissection(
        tau_o=tau_o,
        tau_plus=tau_plus,
        tau_minus=tau_minus,
        xi=frozenset(xi),
        marked_nodes=tuple(marked_order),
        h_star=h_star,
        h_star_is_leaf=h_star_is_leaf,
        core=core,
    )
    _assert_dissection_invariants(result, tau_set, tree, host, maximal_blocks)
    return result


def _assert_dissection_invariants(d: AcyclicDissection, tau: frozenset[str],
                                  tree: HcgTree, host: Graph,
                                  maximal_blocks: tuple[frozenset[str], ...]):
    if not d.tau_plus <= d.xi:
        raise InvariantViolationError("tau_plus escapes xi")
    if not d.tau_minus <= tree_action_ids(tree):
        raise InvariantViolationError("tau_minus escapes the tree's actions")
    if not (d.tau_o | d.xi) <= tau:
        raise InvariantViolationError("tau_o ∪ xi escapes tau")
    if d.tau_o & d.xi:
        raise InvariantViolationError("tau_o meets xi")
    if d.tau_minus & tau:
        raise InvariantViolationError("tau_minus meets tau")
    if not classify_tau(d.tau_o | d.xi, tree).cycle_breaking:
        raise InvariantViolationError("tau_o ∪ xi is not cycle-breaking")
    n = len(tree_states(tree))
    m = len(d.tau_o | d.tau_plus | d.tau_minus)
    expected = n - 1 if d.h_star_is_leaf else n
    if m != expected:
        raise InvariantViolationError(f"dissection size {m} != {expected}")
    # Inside each maximal marked block the kept cycle actions number exactly
    # one less than the block's states.
    for block in maximal_blocks:
        inside = {
            a for a in d.tau_o
            if host.action(a).source in block and host.action(a).targets <= block
        }
        if len(inside) != len(block) - 1:
            raise InvariantViolationError("marked block kept-cycle size law violated")


# --- the release-sequence builder --------------------------------------------


@dataclass(frozen=True)
class MissingCycleRelease:
    """Provenance for one missing-cycle-action step of the builder."""

    missing: str                   # the cycle action absent from the strategy
    nonface: frozenset[str]        # minimal nonface closing over it
    projection: frozenset[str]     # forward projection of its targets
    candidates: frozenset[str]     # strategy actions leaving the projection
    released: str                  # the action actually released


@dataclass(frozen=True)
class NondetIarsAudit:
    """A built sequence together with everything needed to audit it."""

    sequence: tuple[str, ...]
    dissection: AcyclicDissection
    head: tuple[str, ...]
    steps: tuple[MissingCycleRelease, ...]

    def to_payload(self) -> dict:
        return {
            "sequence": list(self.sequence),
            "head": list(self.head),
            "tau_o": ordered(self.dissection.tau_o),
            "tau_plus": ordered(self.dissection.tau_plus),
            "tau_minus": ordered(self.dissection.tau_minus),
            "xi": ordered(self.dissection.xi),
            "h_star_is_leaf": self.dissection.h_star_is_leaf,
            "steps": [
                {
                    "missing": s.missing,
                    "nonface": ordered(s.nonface),
                    "projection": ordered(s.projection),
                    "candidates": ordered(s.candidates),
                    "released": s.released,
                }
                for s in self.steps
            ],
        }


def nondet_iars(
    sigma: Iterable[str],
    graph: Graph,
    tree: HcgTree,
    budget: Budget | None = None,
) -> tuple[str, ...]:
    """A verified informative release sequence inside a maximal strategy.

    Length is at least n-1 when the dissected quotient collapses to a leaf
    and at least n when it stays a node (n = number of states).
    """
    return nondet_iars_audit(sigma, graph, tree, budget).sequence


def nondet_iars_audit(
    sigma: Iterable[str],
    graph: Graph,
    tree: HcgTree,
    budget: Budget | None = None,
) -> NondetIarsAudit:
    """Like :func:`nondet_iars`, returning the full construction record."""
    sigma_set = frozenset(sigma)
    if not graph.purity.pure_nondeterministic:
        raise PreconditionError("the builder requires a pure nondeterministic graph")
    if len(graph.states) < 2:
        raise PreconditionError("need at least two states")
    strategies = enumerate_maximal_strategies(graph, budget)
    if sigma_set not in strategies:
        raise PreconditionError("sigma is not a maximal strategy of the graph")
    goals = {frozenset({v}) for v in graph.states}
    if not goals <= {frozenset(graph.states) - {graph.action(i).source for i in s}
                     for s in strategies}:
        raise PreconditionError("the graph is not fully controllable")
    ok, problems = validate_hcg(tree, graph)
    if not ok:
        raise PreconditionError("invalid tree decomposition: " + "; ".join(problems))
    if tree_states(tree) != frozenset(graph.states):
        raise PreconditionError("the tree must cover the full state space")

    relation = action_relation(graph, budget).relation
    tau = sigma_set & tree_action_ids(tree)
    dissection = acyclic_dissection(tau, tree, graph)
    eta = dissection.tau_o | dissection.tau_plus

    if not eta:
        raise InvariantViolationError("empty cycle-breaking head for a maximal strategy")
    head = order_cycle_breaking(eta, tree, graph, relation=relation)
    sequence = list(head)

    steps: list[MissingCycleRelease] = []
    projections: dict[str, frozenset[str]] = {}
    for c in ordered(dissection.tau_minus):
        action = graph.action(c)
        j_c = forward_projection(action.targets, eta, graph).result
        projections[c] = j_c
        sigma_c = frozenset(
            a for a in sigma_set
            if graph.action(a).source in j_c and not graph.action(a).targets <= j_c
        )
        kappa = shrink_to_minimal_nonface(sigma_set | {c}, c, graph, budget)
        inferable = closure(sequence, relation).closure
        eligible = ordered((kappa & sigma_c) - inferable)
        if not eligible:
            raise InvariantViolationError(
                f"no informative release exists for missing cycle action {c!r}")
        steps.append(MissingCycleRelease(
            missing=c, nonface=kappa, projection=j_c,
            candidates=sigma_c, released=eligible[0]))
        sequence.append(eligible[0])

    for a, ja in projections.items():
        for b, jb in projections.items():
            if a < b and ja & jb:
                raise InvariantViolationError("forward projections overlap")
        if graph.action(a).source in ja:
            raise InvariantViolationError("projection loops back to its own source")

    verdict = is_iars(sequence, relation)
    if not verdict:
        raise InvariantViolationError(
            f"constructed sequence failed verification at {verdict.failure_index}")
    n = len(graph.states)
    required = n - 1 if dissection.h_star_is_leaf else n
    if len(sequence) < required:
        raise InvariantViolationError(
            f"sequence of length {len(sequence)} shorter than required {required}")
    if not frozenset(sequence) <= sigma_set:
        raise InvariantViolationError("sequence escapes the strategy")
    return NondetIarsAudit(sequence=tuple(sequence), dissection=dissection,
                           head=head, steps=tuple(steps))
