from __future__ import annotations

import json
from pathlib import Path

import pytest

from veil.cli import main

LOOP_DOT = """\
digraph loop {
  1 -> 2; 2 -> 3; 3 -> 4; 4 -> 5; 5 -> 2; 2 -> 6;
}
"""


@pytest.fixture
def loop_dot(tmp_path: Path) -> Path:
    path = tmp_path / "loop.dot"
    path.write_text(LOOP_DOT, encoding="utf-8")
    return path


def test_layout_writes_valid_json(loop_dot, tmp_path, capsys):
    out = tmp_path / "loop.json"
    assert main(["layout", str(loop_dot), "--mode", "grouped", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"config", "bbox", "nodes", "edges"}
    assert doc["config"]["mode"] == "grouped"
    assert len(doc["nodes"]) == 6


def test_layout_malformed_dot_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.dot"
    bad.write_text("digraph g {\n a -> ;\n}", encoding="utf-8")
    assert main(["layout", str(bad)]) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1
    assert "line 2" in err


def test_layout_spacing_violation_exits_3(loop_dot, capsys):
    assert main(["layout", str(loop_dot), "--dx", "10"]) == 3
    assert "dx" in capsys.readouterr().err


def test_layout_missing_file_exits_4(capsys):
    assert main(["layout", "/nonexistent/x.dot"]) == 4


def test_render_from_layout_json(loop_dot, tmp_path):
    layout_path = tmp_path / "l.json"
    svg_path = tmp_path / "l.svg"
    assert main(["layout", str(loop_dot), "-o", str(layout_path)]) == 0
    assert main(["render", str(layout_path), "-o", str(svg_path)]) == 0
    svg = svg_path.read_text()
    assert svg.count('class="edge back"') == 1


def test_render_rejects_bad_schema(tmp_path, capsys):
    bad = tmp_path / "x.json"
    bad.write_text('{"config": {}}', encoding="utf-8")
    assert main(["render", str(bad)]) == 2


def test_metrics_json_and_table(loop_dot, tmp_path, capsys):
    layout_path = tmp_path / "l.json"
    main(["layout", str(loop_dot), "-o", str(layout_path)])
    assert main(["metrics", str(layout_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["happens_before"] == 1.0
    assert main(["metrics", str(layout_path), "--format", "metrics-table"]) == 0
    table = capsys.readouterr().out
    assert any(line.startswith("crossings") for line in table.splitlines())


def test_generate_single_and_count(tmp_path):
    out = tmp_path / "one.json"
    assert main(["generate", "--seed", "1", "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert "entry" in doc
    corpus = tmp_path / "corpus"
    assert main(["generate", "--seed", "1", "--count", "5", "-o", str(corpus)]) == 0
    files = sorted(corpus.glob("cfg-*.json"))
    assert len(files) == 5


def test_generate_depth_zero_usage_error(capsys):
    assert main(["generate", "--seed", "1", "--depth", "0"]) == 3


def test_generate_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["generate", "--seed", "9", "-o", str(a)])
    main(["generate", "--seed", "9", "-o", str(b)])
    assert a.read_text() == b.read_text()


def test_cli_layout_deterministic_bytes(loop_dot, tmp_path):
    one = tmp_path / "one.json"
    two = tmp_path / "two.json"
    main(["layout", str(loop_dot), "-o", str(one)])
    main(["layout", str(loop_dot), "-o", str(two)])
    assert one.read_bytes() == two.read_bytes()


def test_compare_identical_inputs_zero_delta(loop_dot, tmp_path, capsys):
    layout_path = tmp_path / "l.json"
    main(["layout", str(loop_dot), "-o", str(layout_path)])
    assert main(["compare", str(layout_path), str(layout_path)]) == 0
    table = capsys.readouterr().out
    lines = table.splitlines()
    assert lines[0].split()[:2] == ["metric", "better"]
    # Identical columns means every defined row marks both cells best.
    crossing_row = next(line for line in lines if line.startswith("crossings"))
    assert crossing_row.count("*") == 2


def test_compare_three_columns(loop_dot, tmp_path, capsys):
    paths = []
    for i in range(3):
        p = tmp_path / f"l{i}.json"
        main(["layout", str(loop_dot), "-o", str(p)])
        paths.append(str(p))
    assert main(["compare", *paths]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.split().count("l0.json") + header.split().count("l1.json") + header.split().count("l2.json") == 3


def test_compare_node_set_mismatch_exits_3(loop_dot, tmp_path, capsys):
    other = tmp_path / "other.dot"
    other.write_text("digraph g { a -> b; }", encoding="utf-8")
    l1 = tmp_path / "l1.json"
    l2 = tmp_path / "l2.json"
    main(["layout", str(loop_dot), "-o", str(l1)])
    main(["layout", str(other), "-o", str(l2)])
    assert main(["compare", str(l1), str(l2)]) == 3


def test_stdin_layout(loop_dot, capsys, monkeypatch):
    import io
    import sys as _sys

    monkeypatch.setattr(_sys, "stdin", io.StringIO(LOOP_DOT))
    assert main(["layout", "-", "--format", "dot"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["nodes"]) == 6


def test_env_spacing_override(loop_dot, tmp_path, monkeypatch):
    monkeypatch.setenv("VEIL_DX", "150")
    monkeypatch.setenv("VEIL_DY", "111")
    out = tmp_path / "l.json"
    assert main(["layout", str(loop_dot), "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["dx"] == 150.0
    assert doc["config"]["dy"] == 111.0


def test_unreachable_warning_on_stderr(tmp_path, capsys):
    dead = tmp_path / "dead.dot"
    dead.write_text("digraph g { a -> b; u -> b; u -> v; }", encoding="utf-8")
    assert main(["layout", str(dead), "--entry", "a"]) == 0
    err = capsys.readouterr().err
    assert "unreachable" in err
    assert "u" in err
