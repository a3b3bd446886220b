"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 documented divergence,
64 usage error, 65 parse or validation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence, TextIO

from .angulation import (
    Angulation,
    euler_characteristic,
    is_degenerate,
    parse_angulation,
    random_disc_angulation,
    serialize_angulation,
    surface_components,
    validate,
)
from .bridging import ag_invariant_formula, naive_per_component, remove_boundary_bridges
from .construct import build_quiver, inflate, validate_partial
from .dot import angulation_dot, quiver_dot
from .errors import AGError, InfeasibleParameters
from .quiver import BoundQuiver, parse_quiver, serialize_quiver, validate_gentle
from .threads import format_thread_report
from .verify import DOCUMENTED, MATCH, compare, fuzz
from .walk import ag_invariant_direct, format_trace

EX_OK, EX_MISMATCH, EX_DOCUMENTED = 0, 1, 2
EX_USAGE, EX_DATAERR = 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2, which we reserve
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _first_word(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    return ""


def _load(path: str) -> BoundQuiver | Angulation:
    text = _read(path)
    if _first_word(text) == "angulation":
        return parse_angulation(text)
    return parse_quiver(text)


def _quiver(path: str) -> BoundQuiver:
    return parse_quiver(_read(path))


def _angulation(path: str) -> Angulation:
    return parse_angulation(_read(path))


def _genus(a: Angulation) -> int:
    comps = len(surface_components(a))
    return (2 * comps - euler_characteristic(a) - len(a.boundaries)) // 2


# -- subcommands ---------------------------------------------------------------


def cmd_check(args, out: TextIO) -> int:
    obj = _load(args.file)
    if isinstance(obj, BoundQuiver):
        bad = validate_gentle(obj)
        for v in bad:
            out.write(f"{v}\n")
        if bad:
            return EX_DATAERR
        out.write(f"gentle: {len(obj.vertices)} vertices, {len(obj.arrows)} arrows, "
                  f"{len(obj.relations)} relations\n")
        return EX_OK
    warnings = validate(obj)
    kind = "partial triangulation" if obj.partial else f"{obj.m + 2}-angulation"
    out.write(f"valid {kind}: {len(obj.arcs)} arcs, {len(obj.faces)} faces, "
              f"{len(obj.boundaries)} boundary components, genus {_genus(obj)}\n")
    if obj.partial:
        bad = validate_partial(obj)
        for v in bad:
            out.write(f"{v}\n")
        if bad:
            return EX_DATAERR
    else:
        degenerate, faces = is_degenerate(obj)
        out.write(f"degenerate: {'yes (' + ', '.join(faces) + ')' if degenerate else 'no'}\n")
    for w in warnings:
        out.write(f"warning: {w}\n")
    return EX_OK


def cmd_threads(args, out: TextIO) -> int:
    out.write(format_thread_report(_quiver(args.file)))
    return EX_OK


def cmd_ag(args, out: TextIO) -> int:
    q = _quiver(args.file)
    if args.trace:
        out.write(format_trace(q))
        out.write("\n")
    out.write(ag_invariant_direct(q).serialize())
    return EX_OK


def cmd_build(args, out: TextIO) -> int:
    out.write(serialize_quiver(build_quiver(_angulation(args.file))))
    return EX_OK


def cmd_formula(args, out: TextIO) -> int:
    a = _angulation(args.file)
    f = naive_per_component(a) if args.naive else ag_invariant_formula(a)
    out.write(f.serialize())
    return EX_OK


def cmd_bridge(args, out: TextIO) -> int:
    out.write(serialize_angulation(remove_boundary_bridges(_angulation(args.file))))
    return EX_OK


def cmd_verify(args, out: TextIO) -> int:
    v = compare(_angulation(args.file))
    out.write("formula:\n" + v.formula.serialize())
    out.write("direct:\n" + v.direct.serialize())
    out.write(v.explain() + "\n")
    if v.status == MATCH:
        return EX_OK
    if v.status == DOCUMENTED:
        return EX_OK if args.allow_isolated else EX_DOCUMENTED
    return EX_MISMATCH


def cmd_inflate(args, out: TextIO) -> int:
    out.write(serialize_angulation(inflate(_angulation(args.file), args.m)))
    return EX_OK


def cmd_gen(args, out: TextIO) -> int:
    out.write(serialize_angulation(random_disc_angulation(args.m, args.arcs, args.seed), style="disc"))
    return EX_OK


def cmd_dot(args, out: TextIO) -> int:
    obj = _load(args.file)
    out.write(quiver_dot(obj) if isinstance(obj, BoundQuiver) else angulation_dot(obj))
    return EX_OK


def cmd_fuzz(args, out: TextIO) -> int:
    if args.count < 0 or args.m_min < 1 or args.m_max < args.m_min \
            or args.arcs_min < 1 or args.arcs_max < args.arcs_min:
        raise UsageError("need count >= 0, 1 <= m-min <= m-max, 1 <= arcs-min <= arcs-max")
    report = fuzz(args.count, (args.m_min, args.m_max), (args.arcs_min, args.arcs_max),
                  args.seed, mutations=not args.no_mutations, isolated=args.isolated)
    out.write(report.format())
    return EX_OK if report.ok else EX_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="aginv", description="AG-invariants of gentle algebras, "
                "directly from bound quivers and in closed form from angulations.")
    p.add_argument("-v", "--verbose", action="store_true", help="log warnings to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name: str, func, help: str, file_help: str | None = "input file, - for stdin"):
        sp = sub.add_parser(name, help=help)
        if file_help:
            sp.add_argument("file", help=file_help)
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "validate a quiver or angulation file")
    add("threads", cmd_threads, "list permitted and forbidden threads with signs")
    sp = add("ag", cmd_ag, "AG-invariant of a bound quiver by the thread walk")
    sp.add_argument("--trace", action="store_true", help="print the H/F walk tables")
    add("build", cmd_build, "bound quiver of an angulation")
    sp = add("formula", cmd_formula, "AG-invariant of an angulation in closed form")
    sp.add_argument("--naive", action="store_true",
                    help="skip boundary-bridge removal (wrong on degenerate inputs)")
    add("bridge", cmd_bridge, "remove boundary bridges")
    sp = add("verify", cmd_verify, "compare closed form and thread walk")
    sp.add_argument("--allow-isolated", action="store_true",
                    help="exit 0 on the known isolated-vertex divergence")
    sp = add("inflate", cmd_inflate, "realise a partial triangulation as an (m+2)-angulation")
    sp.add_argument("--m", type=int, required=True)
    sp = add("gen", cmd_gen, "random (m+2)-angulation of a disc", None)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--arcs", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    add("dot", cmd_dot, "Graphviz export of a quiver or angulation")
    sp = add("fuzz", cmd_fuzz, "randomised cross-check of both computations", None)
    sp.add_argument("--count", type=int, default=500)
    sp.add_argument("--m-min", type=int, default=1)
    sp.add_argument("--m-max", type=int, default=4)
    sp.add_argument("--arcs-min", type=int, default=2)
    sp.add_argument("--arcs-max", type=int, default=12)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--no-mutations", action="store_true")
    sp.add_argument("--isolated", action="store_true",
                    help="add a single-arc disc to every instance")
    return p


def main(argv: Sequence[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                            format="%(levelname)s: %(message)s", stream=err)
        return args.func(args, out)
    except UsageError as e:
        err.write(f"{e}\n")
        return EX_USAGE
    except InfeasibleParameters as e:
        err.write(f"error: {e}\n")
        return EX_USAGE
    except AGError as e:
        err.write(f"error: {e}\n")
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
