"""Bundled fixture corpus: graphs and hand-authored relations.

Each graph fixture is a text document in the package data; each relation
fixture is a CSV.  Fixture ids are shared by the CLI and the HTTP service.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import PreconditionError
from .graphs import Graph, Purity, parse_graph
from .relations import Relation, read_relation_csv


@dataclass(frozen=True)
class FixtureInfo:
    fixture_id: str
    kind: str  # "graph" | "relation"
    title: str


GRAPH_FIXTURES: dict[str, str] = {
    "cycle4": "A four-state directed cycle",
    "ex202b": "Three-cycle with an exit and a nondeterministic return",
    "ex200": "Augmented four-cycle with two nondeterministic actions",
    "ex202": "Ex202b plus two more nondeterministic actions",
    "ex241": "Two three-cycles joined by a two-cycle",
    "ex249": "Disruptive-but-not-cycle-breaking showcase",
    "ex251": "Three-state pure stochastic graph",
    "exh5": "Pure stochastic graph sensitive to expansive-set order",
    "ex61": "Mixed counterexample with a large goal set",
    "ex62": "Mixed counterexample with a singleton-goal strategy",
    "ex63": "Mixed counterexample with nonequivalent inferences",
}

RELATION_FIXTURES: dict[str, str] = {
    "lake": "Island paths by their bridge transitions",
    "stream_fishing": "Fishing-area strategies by passage transitions",
    "narrow_river": "Two-passage strategies with destination attributes",
    "narrow_hidden": "Narrow river with the strong upstream transition hidden",
    "weak_motor": "Narrow river for a boat that cannot go up the strong current",
    "a1_truncated": "Singleton-goal rows of the ex202b action relation",
}


def _read_text(subdir: str, filename: str) -> str:
    return (resources.files("iarskit") / "data" / subdir / filename).read_text("utf-8")


def fixture_infos() -> tuple[FixtureInfo, ...]:
    infos = [FixtureInfo(fid, "graph", title) for fid, title in GRAPH_FIXTURES.items()]
    infos += [FixtureInfo(fid, "relation", title)
              for fid, title in RELATION_FIXTURES.items()]
    return tuple(infos)


def load_graph_fixture(fixture_id: str) -> tuple[Graph, Purity]:
    if fixture_id not in GRAPH_FIXTURES:
        raise PreconditionError(f"unknown graph fixture {fixture_id!r}")
    return parse_graph(_read_text("graphs", fixture_id + ".graph"))


def load_relation_fixture(fixture_id: str
                          ) -> tuple[Relation, dict[str, frozenset[str]] | None]:
    if fixture_id not in RELATION_FIXTURES:
        raise PreconditionError(f"unknown relation fixture {fixture_id!r}")
    return read_relation_csv(_read_text("relations", fixture_id + ".csv"))
