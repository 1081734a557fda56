from __future__ import annotations

import pathlib

import pytest

from iarskit.complexes import action_relation
from iarskit.fixtures import load_graph_fixture, load_relation_fixture

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def graphs():
    """All graph fixtures, parsed once."""
    return {fid: load_graph_fixture(fid)[0]
            for fid in ["cycle4", "ex202b", "ex200", "ex202", "ex241", "ex249",
                        "ex251", "exh5", "ex61", "ex62", "ex63"]}


@pytest.fixture(scope="session")
def relations(graphs):
    """Action relations of all graph fixtures, computed once."""
    return {fid: action_relation(g) for fid, g in graphs.items()}


@pytest.fixture(scope="session")
def hand_relations():
    return {fid: load_relation_fixture(fid)
            for fid in ["lake", "stream_fishing", "narrow_river", "narrow_hidden",
                        "weak_motor", "a1_truncated"]}


def expected_relation_csv(fixture_id: str) -> str:
    return (DATA / "expected_relations" / f"{fixture_id}.csv").read_text("utf-8")
