import dataclasses

import pytest

from instances import DIAMOND_COORDS, DIAMOND_EDGES, diamond
from planarvit import cli
from planarvit.checks import check_instance, first_violation
from planarvit.errors import NonPositiveCapacity, ParseError, SelfLoop, TerminalMissing
from planarvit.generate import grid_instance, random_planar_instance
from planarvit.graphio import emit_graph, emit_report, format_number, parse_graph, report_values
from planarvit.pipeline import analyze, vitality_report


def diamond_coord_text(caps=None):
    caps = caps or [c for *_, c in DIAMOND_EDGES]
    lines = ["vertices 4", "terminals 0 3"]
    lines += [f"edge {u} {v} {c}" for (u, v, _), c in zip(DIAMOND_EDGES, caps)]
    lines += [f"coord {i} {x} {y}" for i, (x, y) in enumerate(DIAMOND_COORDS)]
    return "\n".join(lines) + "\n"


@pytest.fixture
def diamond_file(tmp_path):
    p = tmp_path / "diamond.txt"
    p.write_text(diamond_coord_text())
    return p


def same_graph(a, b):
    return (a.n, a.s, a.t, list(a.edges), [list(r) for r in a.rotation]) == (
        b.n, b.s, b.t, list(b.edges), [list(r) for r in b.rotation]
    )


@pytest.mark.parametrize(
    "g", [diamond(), grid_instance(4, 1, 9, 2), random_planar_instance(25, 1, 9, 4, integer=False)]
)
def test_round_trip(g):
    assert same_graph(parse_graph(emit_graph(g)), g)


def test_coord_input_matches_rotations():
    g = parse_graph(diamond_coord_text())
    assert same_graph(g, diamond())
    assert "coord" not in emit_graph(g)


def test_format_number():
    assert format_number(5.0) == "5"
    assert format_number(2.5) == "2.5"
    assert format_number(1 / 3) == "0.333333333333"


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("vertices 2\nterminals 0 1\nedge 0 1 0\n", NonPositiveCapacity, 3),
        ("vertices 2\nterminals 0 1\n# c\nedge 1 1 2\n", SelfLoop, 4),
        ("vertices 2\nterminals 0 1\nedge 0 1 x\n", ParseError, 3),
        ("vertices 2\nbogus\n", ParseError, 2),
        ("vertices 2\nterminals 0 5\nedge 0 1 1\nrotation 0 0\nrotation 1 0\n", TerminalMissing, 2),
    ],
)
def test_errors_carry_line_numbers(text, exc, line):
    with pytest.raises(exc) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_gen_grid_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for p in (a, b):
        assert cli.main(["gen", "grid", "--size", "5", "--cap-min", "1", "--cap-max", "9", "--seed", "42", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_small_grid(tmp_path, capsys):
    p = tmp_path / "g.txt"
    assert cli.main(["gen", "grid", "--size", "2", "-o", str(p)]) == 0
    g = parse_graph(p.read_text())
    assert (g.n, g.m) == (4, 4)
    assert cli.main(["maxflow", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_gen_random_passes_euler(tmp_path):
    p = tmp_path / "r.txt"
    assert cli.main(["gen", "random", "--size", "50", "--cap-max", "20", "--seed", "7", "-o", str(p)]) == 0
    g = parse_graph(p.read_text())
    assert g.n - g.m + len(g.faces) == 2


def test_gen_bad_params(tmp_path, capsys):
    assert cli.main(["gen", "grid", "--size", "1", "-o", str(tmp_path / "x")]) == 1
    assert "BadParams" in capsys.readouterr().err


def test_cli_maxflow(diamond_file, tmp_path, capsys):
    assert cli.main(["maxflow", str(diamond_file)]) == 0
    assert capsys.readouterr().out == "5\n"
    bad = tmp_path / "bad.txt"
    bad.write_text(diamond_coord_text([3, 0, 2, 3, 1]))
    assert cli.main(["maxflow", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "NonPositiveCapacity" in err and "line 4" in err
    assert cli.main(["maxflow", str(tmp_path / "missing.txt")]) == 1


def test_cli_vitality_exact(diamond_file, capsys):
    assert cli.main(["vitality", str(diamond_file)]) == 0
    rows = {(k, i): v for k, i, _, _, v in report_values(capsys.readouterr().out)}
    assert rows == {
        ("edge", "0"): "3", ("edge", "1"): "2", ("edge", "2"): "2", ("edge", "3"): "3",
        ("edge", "4"): "1", ("vertex", "1"): "3", ("vertex", "2"): "3",
    }


def test_cli_vitality_approx_matches_exact(diamond_file, tmp_path):
    ex, ap = tmp_path / "ex.txt", tmp_path / "ap.txt"
    assert cli.main(["vitality", str(diamond_file), "--scope", "edges", "--c", "3", "-o", str(ex)]) == 0
    assert cli.main(
        ["vitality", str(diamond_file), "--mode", "approx", "--scope", "edges", "--c", "3", "--delta", "1", "-o", str(ap)]
    ) == 0
    assert report_values(ex.read_text()) == report_values(ap.read_text())
    assert "# mode approx c 3 delta 1 clamp off" in ap.read_text()


def test_cli_vitality_flag_errors(diamond_file, capsys):
    assert cli.main(["vitality", str(diamond_file), "--mode", "approx"]) == 1
    assert cli.main(["vitality", str(diamond_file), "--mode", "approx", "--c", "3", "--delta", "0"]) == 1
    assert "NonPositiveDelta" in capsys.readouterr().err


def test_report_is_deterministic():
    g = grid_instance(5, 1, 7, 3)
    a = emit_report(vitality_report(g, mode="approx", c=7, delta=0.5), g)
    b = emit_report(vitality_report(g, mode="approx", c=7, delta=0.5), g)
    assert a == b
    lines = a.splitlines()
    assert lines[0] == f"# mf {format_number(analyze(g).mf)}"
    qualifying = g.m + sum(1 for v in range(g.n) if v not in (g.s, g.t) and g.vertex_capacity(v) <= 7)
    assert len([x for x in lines if not x.startswith("#")]) == qualifying


def test_check_command(diamond_file, tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert cli.main(["check", str(diamond_file)]) == 0
    out = capsys.readouterr().out
    assert "\033[" not in out and "FAIL" not in out
    grid = tmp_path / "grid.txt"
    assert cli.main(["gen", "grid", "--size", "6", "--cap-max", "5", "--seed", "1", "-o", str(grid)]) == 0
    assert cli.main(["check", str(grid), "--samples", "20"]) == 0


def test_mutated_report_is_caught():
    g = grid_instance(5, 1, 5, 2)
    rep = vitality_report(g, mode="approx", c=5, delta=1)
    exact = vitality_report(g).values()
    assert first_violation(exact, rep.rows, 1) is None
    victim = rep.rows[7]
    rows = list(rep.rows)
    rows[7] = dataclasses.replace(victim, value=victim.value - 2)
    bad, ref = first_violation(exact, rows, 1)
    assert (bad.kind, bad.id) == (victim.kind, victim.id) and ref == exact[(victim.kind, victim.id)]


def test_check_instance_reports_all_checks():
    names = [r.name for r in check_instance(diamond())]
    assert names[:3] == ["max-flow", "exact-vitality", "approx-guarantee"]
    assert all(r.ok for r in check_instance(grid_instance(6, 1, 5, 9)))
