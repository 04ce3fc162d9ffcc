"""Plain-text graph files and vitality reports.

Graph file, one record per line (``#`` starts a comment)::

    vertices 4
    terminals 0 3
    edge 0 1 3          # edge ids follow the order of the edge lines
    rotation 0 0 1      # counterclockwise incident edge ids of vertex 0
    coord 1 1.0 1.0     # alternative to rotation lines: a straight-line drawing

Either every vertex has a ``rotation`` line or every vertex has a
``coord`` line.  Emitted files always use rotations.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import NonPositiveCapacity, ParseError, SelfLoop, TerminalMissing
from .exact import VitalityReport
from .planar import PlaneGraph, build_plane_graph, rotations_from_coords


def _at(cls, message: str, line: int):
    exc = cls(f"line {line}: {message}")
    exc.line = line
    return exc


def _num(tok: str, line: int, kind=float):
    try:
        return kind(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", line) from None


def parse_graph(text: str) -> PlaneGraph:
    n = None
    terminals = None
    edges: list[tuple[int, int, float]] = []
    rotations: dict[int, list[int]] = {}
    coords: dict[int, tuple[float, float]] = {}
    first_line: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        key, args = body[0], body[1:]
        first_line.setdefault(key, lineno)
        if key == "vertices":
            if len(args) != 1:
                raise ParseError("usage: vertices N", lineno)
            n = _num(args[0], lineno, int)
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
        elif key == "terminals":
            if len(args) != 2:
                raise ParseError("usage: terminals S T", lineno)
            terminals = (_num(args[0], lineno, int), _num(args[1], lineno, int))
        elif key == "edge":
            if len(args) != 3:
                raise ParseError("usage: edge U V CAPACITY", lineno)
            u, v = _num(args[0], lineno, int), _num(args[1], lineno, int)
            cap = _num(args[2], lineno)
            if u == v:
                raise _at(SelfLoop, f"edge {len(edges)} is a self-loop at vertex {u}", lineno)
            if not cap > 0 or math.isinf(cap):
                raise _at(NonPositiveCapacity, f"edge {len(edges)} has capacity {args[2]}, must be > 0", lineno)
            edges.append((u, v, cap))
        elif key == "rotation":
            if not args:
                raise ParseError("usage: rotation V E1 E2 ...", lineno)
            v = _num(args[0], lineno, int)
            if v in rotations:
                raise ParseError(f"second rotation line for vertex {v}", lineno)
            rotations[v] = [_num(a, lineno, int) for a in args[1:]]
        elif key == "coord":
            if len(args) != 3:
                raise ParseError("usage: coord V X Y", lineno)
            v = _num(args[0], lineno, int)
            coords[v] = (_num(args[1], lineno), _num(args[2], lineno))
        else:
            raise ParseError(f"unknown record {key!r}", lineno)
    if n is None:
        raise ParseError("missing 'vertices' line", None)
    if terminals is None:
        raise ParseError("missing 'terminals' line", None)
    for e, (u, v, _) in enumerate(edges):
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge {e} has an endpoint outside 0..{n - 1}", None)
    if rotations and coords:
        raise ParseError("use either rotation or coord lines, not both", first_line["coord"])
    pts = None
    if coords:
        missing = [v for v in range(n) if v not in coords]
        if missing:
            raise ParseError(f"no coord line for vertex {missing[0]}", first_line["coord"])
        pts = [coords[v] for v in range(n)]
        rot = rotations_from_coords(n, edges, pts)
    else:
        rot = [rotations.get(v, []) for v in range(n)]
    try:
        return build_plane_graph(edges, rot, terminals[0], terminals[1], coords=pts)
    except TerminalMissing as exc:
        raise _at(TerminalMissing, str(exc), first_line["terminals"]) from None


def read_graph(path) -> PlaneGraph:
    return parse_graph(Path(path).read_text())


def format_number(x: float) -> str:
    """Exact decimal for integral values, otherwise 12 significant digits."""
    if math.isinf(x):
        return "inf"
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.12g}"


def _exact_number(x: float) -> str:
    # graph files must round-trip, so no rounding here
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def emit_graph(g: PlaneGraph) -> str:
    lines = [f"vertices {g.n}", f"terminals {g.s} {g.t}"]
    for u, v, c in g.edges:
        lines.append(f"edge {u} {v} {_exact_number(c)}")
    for v, rot in enumerate(g.rotation):
        lines.append(" ".join(["rotation", str(v), *map(str, rot)]))
    return "\n".join(lines) + "\n"


def write_graph(g: PlaneGraph, path) -> None:
    Path(path).write_text(emit_graph(g))


def emit_report(report: VitalityReport, g: PlaneGraph) -> str:
    """Header lines then one row per element.

    Row columns: kind, id, endpoints (edges) or ``-``, capacity, value,
    mode marker, notes (``-`` when empty).
    """
    head = [
        f"# mf {format_number(report.mf)}",
        f"# n {report.n} m {report.m}",
        f"# mode {report.mode} c {format_number(report.c) if report.c is not None else '-'}"
        f" delta {format_number(report.delta) if report.delta is not None else '-'}"
        f" clamp {'on' if report.clamp else 'off'}",
        "# kind id ends capacity vitality marker notes",
    ]
    rows = []
    for r in sorted(report.rows, key=lambda r: (r.kind != "edge", r.id)):
        ends = f"{g.edges[r.id][0]}-{g.edges[r.id][1]}" if r.kind == "edge" else "-"
        marker = "exact" if r.mode == "exact" else f"approx({format_number(r.delta)})"
        notes = ",".join(r.notes) if r.notes else "-"
        rows.append(
            f"{r.kind} {r.id} {ends} {format_number(r.capacity)} {format_number(r.value)} {marker} {notes}"
        )
    return "\n".join(head + rows) + "\n"


def report_values(text: str) -> list[tuple[str, str, str, str, str]]:
    """The value-bearing columns (kind, id, ends, capacity, vitality) of a report."""
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        out.append(tuple(parts[:5]))
    return out
