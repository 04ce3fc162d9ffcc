"""Command line: max flow, vitality reports, self-checks and instance generation."""

from __future__ import annotations

import argparse
import os
import sys

from .errors import BadParams, PlanarVitError, ValidationError
from .graphio import emit_report, format_number, read_graph, write_graph
from .pipeline import analyze, vitality_report

EXIT_OK, EXIT_INVALID, EXIT_CHECK = 0, 1, 2


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not stream.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def cmd_maxflow(args) -> int:
    g = read_graph(args.file)
    print(format_number(analyze(g).mf))
    return EXIT_OK


def cmd_vitality(args) -> int:
    g = read_graph(args.file)
    rep = vitality_report(
        g, mode=args.mode, scope=args.scope, c=args.c, delta=args.delta, clamp=args.clamp
    )
    text = emit_report(rep, g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    from .checks import check_instance

    g = read_graph(args.file)
    results = check_instance(g, samples=args.samples, seed=args.seed)
    ok = True
    for r in results:
        tag = _color("PASS", "32", sys.stdout) if r.ok else _color("FAIL", "31", sys.stdout)
        print(f"{tag} {r.name}" + (f" ({r.detail})" if r.detail and not r.ok else ""))
        ok &= r.ok
    return EXIT_OK if ok else EXIT_CHECK


def cmd_gen(args) -> int:
    from .generate import grid_instance, random_planar_instance

    if args.kind == "grid":
        g = grid_instance(args.size, args.cap_min, args.cap_max, args.seed, terminals=args.terminals)
    else:
        g = random_planar_instance(args.size, args.cap_min, args.cap_max, args.seed)
    write_graph(g, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarvit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("maxflow", help="print the st max flow")
    m.add_argument("file")
    m.set_defaults(func=cmd_maxflow)

    v = sub.add_parser("vitality", help="edge/vertex vitality report")
    v.add_argument("file")
    v.add_argument("--mode", choices=["exact", "approx"], default="exact")
    v.add_argument("--scope", choices=["edges", "vertices", "both"], default="both")
    v.add_argument("--c", type=float, default=None, help="only elements with capacity <= c")
    v.add_argument("--delta", type=float, default=None, help="additive error (approx mode)")
    v.add_argument("--clamp", action="store_true", help="lower capacities above MF to MF first")
    v.add_argument("-o", "--output", default=None)
    v.set_defaults(func=cmd_vitality)

    c = sub.add_parser("check", help="compare against the oracle and check invariants")
    c.add_argument("file")
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    gen = sub.add_parser("gen", help="write a random instance")
    gen.add_argument("kind", choices=["grid", "random"])
    gen.add_argument("--size", type=int, required=True, help="grid side, or vertex count")
    gen.add_argument("--cap-min", type=float, default=1)
    gen.add_argument("--cap-max", type=float, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--terminals", choices=["corner", "random"], default="corner")
    gen.add_argument("-o", "--output", required=True)
    gen.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, BadParams, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, PlanarVitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
