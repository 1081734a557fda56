from __future__ import annotations

import pytest

from iarskit.cli import main
from iarskit.graphs import serialize_graph
from iarskit.hcg import parse_hcg


@pytest.fixture()
def cycle4_file(tmp_path, graphs):
    path = tmp_path / "cycle4.graph"
    path.write_text(serialize_graph(graphs["cycle4"]))
    return str(path)


def test_parse_echoes_canonical_form(cycle4_file, capsys):
    assert main(["parse", cycle4_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("states: 1 2 3 4\n")
    assert "# purity: pure-nondeterministic+pure-stochastic" in out


def test_strategies_and_relation(capsys):
    assert main(["strategies", "fixture:cycle4"]) == 0
    out = capsys.readouterr().out
    assert "e1+e2+e3 | goal 4" in out
    assert main(["relation", "fixture:cycle4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "strategy,e1,e2,e3,e4,goal"


def test_cli_is_deterministic(capsys):
    main(["relation", "fixture:ex63"])
    first = capsys.readouterr().out
    main(["relation", "fixture:ex63"])
    assert capsys.readouterr().out == first


def test_nonfaces_and_controllable(capsys):
    assert main(["nonfaces", "fixture:ex202b"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["a2+b4", "e1+e2+e3"]
    assert main(["controllable", "fixture:ex202b"]) == 0
    assert capsys.readouterr().out.strip() == "fully-controllable"


def test_hcg_extract_and_validate(tmp_path, cycle4_file, capsys):
    assert main(["hcg", "extract", cycle4_file]) == 0
    tree_text = capsys.readouterr().out
    parse_hcg(tree_text)
    tree_file = tmp_path / "tree.hcg"
    tree_file.write_text(tree_text)
    assert main(["hcg", "validate", cycle4_file, str(tree_file)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "valid"


def test_dissect_and_iars_commands(tmp_path, capsys):
    graph_file = tmp_path / "g.graph"
    from iarskit.fixtures import load_graph_fixture
    g202, _ = load_graph_fixture("ex202")
    graph_file.write_text(serialize_graph(g202))
    tree_file = tmp_path / "t.hcg"
    tree_file.write_text(
        "node cycle=[a2,b4]\n"
        "  node cycle=[e1,e2,e3]\n"
        "    leaf 1\n    leaf 2\n    leaf 3\n"
        "  leaf 4\n")
    assert main(["dissect", str(graph_file), str(tree_file), "e1,a2"]) == 0
    out = capsys.readouterr().out
    assert '"tau_minus"' in out and '"e2"' in out

    assert main(["iars", "nondet", str(graph_file), "e1,a1,a2,a3",
                 "--tree", str(tree_file)]) == 0
    assert capsys.readouterr().out.strip() == "a2,e1,a3,a1"

    assert main(["iars", "stoch", "fixture:ex251", "a1,a2,d2"]) == 0
    assert capsys.readouterr().out.strip() == "a2,d2"

    assert main(["iars", "verify", str(graph_file), "a2,e1,a3,a1"]) == 0
    assert capsys.readouterr().out.strip() == "informative"
    assert main(["iars", "verify", str(graph_file), "a1,a2"]) == 1
    assert "not-informative" in capsys.readouterr().out

    assert main(["iars", "longest", "fixture:ex62", "a1,d2,d3,d4,c1"]) == 0
    assert capsys.readouterr().out.startswith("3:")


def test_fixtures_list_and_run(capsys):
    assert main(["fixtures", "list"]) == 0
    out = capsys.readouterr().out
    assert "cycle4\tgraph" in out and "lake\trelation" in out
    assert main(["fixtures", "run"]) == 0
    out = capsys.readouterr().out
    assert "ex63: 6 states, 14 actions, 32 maximal strategies" in out


def test_cli_reports_errors(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("states: 1 2\naction c1 stoch 1 -> { 2: 1/3 }\n")
    assert main(["parse", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_reveal_repl(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("reveal a2\nshow\nquit\n"))
    assert main(["reveal", "a1_truncated"]) == 0
    out = capsys.readouterr().out
    assert '"consistent": ["sigma4"]' in out
