"""Command line interface.

Exit codes: 0 ok, 1 input/parse error, 2 validation error, 3 atom is (not)
derived for the requested explanation, 4 negation unsupported for
polynomials, 5 unknown output format.
"""

import argparse
import json
import sys

from . import errors
from .datalog import Database, Program, parse_atom, parse_database, parse_program
from .explain import provenance_polynomial, why_not_report, why_report
from .export import render_tree, to_dot, to_json
from .game import GameGraph, provenance, solve
from .play import play
from .qgame import BuildVariant, NodeKind, atom_node, build_game, solve_typed
from .wellfounded import alternating_fixpoint

EXIT_PARSE, EXIT_INVALID, EXIT_DERIVATION, EXIT_NEGATION, EXIT_FORMAT = 1, 2, 3, 4, 5
FORMATS = ("dot", "json")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path):
    if path is None:
        return ""
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _load(args):
    prog = parse_program(_read(args.program)) if args.program else Program()
    db = parse_database(_read(args.db)) if args.db else Database()
    return prog, db


def _target(args, required=True):
    if not args.atom:
        if required:
            raise CliError(f"{args.command} needs a target atom", EXIT_INVALID)
        return None, True
    return parse_atom(args.atom)


def parse_raw_game(text):
    """Moves ``src dst`` one per line; a lone token declares a position."""
    positions, moves = set(), []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) > 2:
            raise errors.DatalogSyntaxError("expected 'src dst' or 'position'", lineno, 1)
        positions.update(parts)
        if len(parts) == 2:
            moves.append(tuple(parts))
    return GameGraph(positions, moves)


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_len(n):
    return "inf" if n == float("inf") else str(n)


def cmd_solve(args):
    if args.raw_game:
        g = parse_raw_game(_read(args.raw_game))
        sg = solve(g)
        rows = list(g.positions)
    else:
        prog, db = _load(args)
        tg = build_game(prog, db, args.variant)
        sg = solve_typed(tg)
        g = tg.graph
        rows = [x for x in g.positions if x.kind in (NodeKind.REL, NodeKind.NEG)]
    wf = alternating_fixpoint(g) if args.wf_oracle else None
    out = []
    for x in rows:
        line = f"{x} {sg.gamma[x].value} {_fmt_len(sg.length[x])}"
        if wf is not None:
            line += f" {wf[x].value}"
        out.append(line + "\n")
    _emit(args, "".join(out))


def _why_text(rep):
    lines = [f"{rep.atom} is derived."]
    for inst in rep.instantiations:
        lines.append(f"  r{inst.rule_index} with {inst.binding_text()} succeeds:")
        for g in inst.goals:
            pos = ",".join(f"g{j}" for j in g.position)
            parts = []
            if g.blocking:
                parts.append("uses " + ", ".join(sorted(map(str, g.blocking))))
            if g.missing:
                parts.append("relies on absent " + ", ".join(sorted(map(str, g.missing))))
            lines.append(f"    {pos}: {g.literal} holds: {'; '.join(parts)}")
    lines.append("present facts: " + (", ".join(sorted(map(str, rep.used))) or "none"))
    lines.append("absent facts: " + (", ".join(sorted(map(str, rep.absent))) or "none"))
    return "\n".join(lines) + "\n"


def _whynot_text(rep):
    lines = [f"{rep.atom} is not derived."]
    if not rep.instantiations:
        lines.append("  no rule instance has this head")
    for inst in rep.instantiations:
        lines.append(f"  r{inst.rule_index} with {inst.binding_text()} fails:")
        for g in inst.goals:
            pos = ",".join(f"g{j}" for j in g.position)
            parts = []
            if g.missing:
                parts.append("missing " + ", ".join(sorted(map(str, g.missing))))
            if g.blocking:
                parts.append("blocked by present " + ", ".join(sorted(map(str, g.blocking))))
            lines.append(f"    {pos}: {g.literal} fails: {'; '.join(parts)}")
    lines.append("missing facts: " + (", ".join(sorted(map(str, rep.missing))) or "none"))
    lines.append("blocking facts: " + (", ".join(sorted(map(str, rep.blocking))) or "none"))
    return "\n".join(lines) + "\n"


def _explain(args, why):
    prog, db = _load(args)
    atom, positive = _target(args)
    if not positive:
        raise CliError("give the positive atom; why/whynot pick the side themselves", EXIT_INVALID)
    fmt = args.format or "text"
    if fmt not in ("text", "json"):
        raise CliError(f"unknown format {fmt!r} for {args.command} (text or json)", EXIT_FORMAT)
    rep = why_report(prog, db, atom) if why else why_not_report(prog, db, atom)
    if fmt == "json":
        _emit(args, json.dumps(rep.to_dict(), indent=2, ensure_ascii=False) + "\n")
        return
    tg = build_game(prog, db, BuildVariant.FULL)
    sg = solve_typed(tg)
    root = atom_node(tg, atom, positive=why)
    text = _why_text(rep) if why else _whynot_text(rep)
    text += "\ngame provenance:\n" + render_tree(provenance(sg, root))
    _emit(args, text)


def cmd_why(args):
    _explain(args, why=True)


def cmd_whynot(args):
    _explain(args, why=False)


def cmd_poly(args):
    prog, db = _load(args)
    atom, positive = _target(args)
    if not positive:
        raise CliError("polynomials are defined for positive atoms only", EXIT_INVALID)
    _emit(args, f"{provenance_polynomial(prog, db, atom, args.semiring)}\n")


def cmd_export(args):
    fmt = args.format or "dot"
    if fmt not in FORMATS:
        raise CliError(f"unknown format {fmt!r} (dot or json)", EXIT_FORMAT)
    if args.raw_game:
        g = parse_raw_game(_read(args.raw_game))
        sg = solve(g)
        root = args.atom
        if root is not None and root not in g:
            raise CliError(f"unknown position {root}", EXIT_INVALID)
    else:
        prog, db = _load(args)
        tg = build_game(prog, db, args.variant)
        sg = solve_typed(tg)
        atom, positive = _target(args, required=args.scope == "gamma")
        root = atom_node(tg, atom, positive) if atom is not None else None
    gamma = None
    if args.scope == "gamma":
        if root is None:
            raise CliError("--scope gamma needs a target atom", EXIT_INVALID)
        gamma = provenance(sg, root)
    _emit(args, to_dot(sg, gamma) if fmt == "dot" else to_json(sg, gamma))


def cmd_play(args):
    prog, db = _load(args)
    atom, positive = _target(args)
    tg = build_game(prog, db, args.variant)
    sg = solve_typed(tg)
    start = atom_node(tg, atom, positive)

    def read(prompt):
        sys.stdout.write(prompt)
        sys.stdout.flush()
        line = sys.stdin.readline()
        if not line:
            raise EOFError
        return line

    play(tg, sg, start, human=args.as_player, read=read, write=print)


COMMANDS = {
    "solve": cmd_solve,
    "why": cmd_why,
    "whynot": cmd_whynot,
    "poly": cmd_poly,
    "export": cmd_export,
    "play": cmd_play,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="provgames", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--program", metavar="PATH", help="Datalog program file")
    common.add_argument("--db", metavar="PATH", help="database file")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument(
        "--variant", choices=[v.value for v in BuildVariant], default="full",
        help="goal node identifiers keep (full) or drop (trio) their body position",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", parents=[common], help="value and length of every relation node")
    p.add_argument("--raw-game", metavar="PATH", help=argparse.SUPPRESS)
    p.add_argument("--wf-oracle", action="store_true", help=argparse.SUPPRESS)

    for name, text in (("why", "explain a derived atom"), ("whynot", "explain a missing atom")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("atom", metavar="ATOM", help="e.g. 'A(a)'")
        p.add_argument("--format", help="text (default) or json")

    p = sub.add_parser("poly", parents=[common], help="provenance polynomial of a derived atom")
    p.add_argument("atom", metavar="ATOM")
    p.add_argument("--semiring", choices=["nx", "bx", "trio"], default="nx")

    p = sub.add_parser("export", parents=[common], help="write the solved game as DOT or JSON")
    p.add_argument("atom", metavar="ATOM", nargs="?", help="root for --scope gamma ('not A(b)' for the negated node)")
    p.add_argument("--format", help="dot (default) or json")
    p.add_argument("--scope", choices=["full", "gamma"], default="full")
    p.add_argument("--raw-game", metavar="PATH", help=argparse.SUPPRESS)

    p = sub.add_parser("play", parents=[common], help="argue about an atom against the engine")
    p.add_argument("atom", metavar="ATOM")
    p.add_argument("--as", dest="as_player", choices=["I", "II"], default="I")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except errors.DatalogSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except errors.NotDerivedError as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_DERIVATION
    except errors.DerivedError as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_DERIVATION
    except errors.NegationUnsupportedError as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_NEGATION
    return 0


if __name__ == "__main__":
    sys.exit(main())
