"""Command-line front end.

Exit codes: 0 success, 1 a check came out negative (``eq`` or
``verify-relations``), 2 a parse or validation error.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import re
import sys
from typing import List, Sequence, Tuple

from . import codes
from .codes import CodeError
from .endo import phi, psi
from .literals import (
    ParseError, parse_endo, parse_labeled, parse_rel, parse_root_system, parse_shrubbery,
    parse_term, parse_tot, relocate,
)
from .presentation import (
    AlphabetError, Budget, GenAlphabet, Relation, build_R0, standard_alphabet, verify_relations, word,
)
from .rel import (
    RelElement, RelError, gen_pi0, gen_pi_w, gen_U, gen_U_dim0, rel_deferment, rel_identity,
    rel_inverse, rel_product, render_arrow, render_matrix,
)
from .shrubbery import Params
from .terms import TermError, normalize
from .tot import TotError, compose, compose_all, deferment, reduce, tot_eq

USER_ERRORS = (ParseError, CodeError, TotError, RelError, TermError, AlphabetError)


class Output:
    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: List[str] = []

    def put(self, key: str, value: str):
        self.lines.append(f"{key}\t{value}" if self.machine else value)


def _params(args) -> Params:
    try:
        return Params(args.n, args.k, args.r)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _pieces(text: str) -> List[Tuple[int, str]]:
    """Split a product ``A * B * ...`` into (offset, piece) pairs."""
    out, start = [], 0
    for m in re.finditer(r"\*", text):
        out.append((start, text[start:m.start()]))
        start = m.end()
    out.append((start, text[start:]))
    return out


def _parse_piece(text: str, offset: int, whole: str, parse, p):
    lead = len(text) - len(text.lstrip())
    try:
        return parse(text.strip(), p)
    except ParseError as exc:
        raise relocate(exc, whole, offset + lead) from None


def _product(text: str, p: Params):
    """Evaluate a product; tot literals compose, arrows multiply in nRel."""
    pieces = _pieces(text)
    if all(piece.strip().startswith("{") for _, piece in pieces):
        return compose_all([_parse_piece(s, o, text, parse_tot, p) for o, s in pieces], p)
    elements = [_parse_piece(s, o, text, parse_rel, p) for o, s in pieces]
    return rel_product(elements, p)


def cmd_compose(args, p, out):
    f = parse_tot(args.a, p)
    g = parse_tot(args.b, p)
    out.put("result", str(compose(f, g)))
    return 0


def cmd_eq(args, p, out):
    a, b = _product(args.a, p), _product(args.b, p)
    if isinstance(a, RelElement) != isinstance(b, RelElement):
        a = a if isinstance(a, RelElement) else RelElement(reduce(a))
        b = b if isinstance(b, RelElement) else RelElement(reduce(b))
    same = a == b if isinstance(a, RelElement) else tot_eq(a, b)
    out.put("equal", "EQUAL" if same else "NOT EQUAL")
    return 0 if same else 1


def cmd_normalize_term(args, p, out):
    out.put("term", str(normalize(parse_term(args.term, p))))
    return 0


def cmd_phi(args, p, out):
    out.put("endo", str(phi(parse_tot(args.element, p))))
    return 0


def cmd_psi(args, p, out):
    out.put("result", str(psi(parse_endo(args.endo, p))))
    return 0


def cmd_render(args, p, out):
    if args.arrow:
        out.put("arrow", render_arrow(parse_rel(args.value, p)))
    else:
        out.put("matrix", render_matrix(parse_labeled(args.value, p)))
    return 0


def cmd_defer(args, p, out):
    f = parse_tot(args.element, p)
    w = parse_root_system(args.root_system, p)
    out.put("result", str(deferment(f, w)))
    return 0


def cmd_enumerate_codes(args, p, out):
    found = codes.enumerate_complete_codes(args.depth, p)
    if args.list:
        for code in sorted(sorted(c) for c in found):
            out.put("code", "{%s}" % "; ".join(map(str, code)))
    out.put("count", f"count {len(found)}" if not out.machine else str(len(found)))
    return 0


# --- alphabet files -------------------------------------------------------------

_ASSIGN = re.compile(r"^\s*([A-Za-z_][\w\[\]();,^\-]*)\s*=\s*")
_CALL = re.compile(r"^(\w+)\((.*)\)$", re.S)


def _constructor(expr: str, offset: int, text: str, A: GenAlphabet) -> RelElement:
    p = A.params
    stripped = expr.strip()
    lead = len(expr) - len(expr.lstrip())
    if stripped.startswith("{") or "→" in stripped or "->" in stripped:
        return _parse_piece(expr, offset, text, parse_rel, p)
    m = _CALL.match(stripped)
    if not m:
        raise ParseError(f"cannot read letter definition {stripped!r}", text, offset + lead)
    name, arg = m.group(1), m.group(2)
    arg_offset = offset + lead + len(name) + 1
    simple = {"identity": rel_identity, "U": gen_U, "U0": gen_U_dim0, "pi0": gen_pi0}
    if name in simple:
        if arg.strip():
            raise ParseError(f"{name}() takes no argument", text, arg_offset)
        return simple[name](p)
    if name == "pi":
        return gen_pi_w(_parse_piece(arg, arg_offset, text, parse_shrubbery, p), p)
    if name == "inverse":
        return rel_inverse(A[arg.strip()])
    if name == "defer":
        letter, _, rs = arg.partition(",")
        w = _parse_piece(rs, arg_offset + len(letter) + 1, text, parse_root_system, p)
        return rel_deferment(A[letter.strip()], w)
    raise ParseError(f"unknown constructor {name!r}", text, offset + lead)


def load_alphabet_file(text: str, p: Params, budget: Budget | None = None):
    """Read an alphabet file; returns the alphabet and the relations to check."""
    A = GenAlphabet(p)
    relations: List[Relation] = []
    offset = 0
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0]
        here = offset
        offset += len(raw) + 1
        if not line.strip():
            continue
        head = line.split()[0]
        try:
            if line.strip() == "standard":
                std = standard_alphabet(p)
                for name in std:
                    A.add(name, std[name])
                A.inverses.update(std.inverses)
                A.sdef_of.update(std.sdef_of)
            elif line.strip() == "build":
                relations.extend(build_R0(p, A, budget).relations)
            elif head in ("inverse", "sdef") and "=" not in line:
                parts = line.split()
                if len(parts) != 3:
                    raise ParseError(f"{head} needs two letter names", text, here)
                if head == "inverse":
                    A.add_inverse_pair(parts[1], parts[2])
                else:
                    A.set_sdef(parts[1], parts[2])
            elif head == "rel":
                m = re.match(r"^\s*rel\s+(\d+)\s*:(.*)=(.*)$", line)
                if not m:
                    raise ParseError("expected 'rel <family>: <word> = <word>'", text, here)
                left, right = word(m.group(2)), word(m.group(3))
                for name in left + right:
                    A[name]
                relations.append(Relation(left, right, int(m.group(1))))
            else:
                m = _ASSIGN.match(line)
                if not m:
                    raise ParseError("expected 'name = definition'", text, here)
                A.add(m.group(1), _constructor(line[m.end():], here + m.end(), text, A))
        except (AlphabetError, RelError, CodeError, TotError) as exc:
            raise ParseError(str(exc), text, here) from None
    return A, relations


def cmd_verify_relations(args, p, out):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    A, relations = load_alphabet_file(text, p)
    results = verify_relations(relations, A)
    failures = 0
    for res in results:
        failures += not res.ok
        if out.machine:
            out.put("PASS" if res.ok else "FAIL", str(res.relation))
        else:
            out.put("", res.line())
            if not res.ok:
                out.put("", f"  left  {res.left_value}")
                out.put("", f"  right {res.right_value}")
    out.put("relations", f"{len(results)} relations, {failures} failed" if not out.machine else str(len(results)))
    if out.machine:
        out.put("failures", str(failures))
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="dimension")
    common.add_argument("--k", type=int, default=2, help="arity")
    common.add_argument("--r", type=int, default=1, help="number of roots")
    common.add_argument("--format", choices=("text", "machine"), default="text")

    parser = argparse.ArgumentParser(prog="totmonoid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("compose", cmd_compose, "compose two tot elements, first A then B")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("eq", cmd_eq, "decide equality of two products (A * B * ...)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("normalize-term", cmd_normalize_term, "normal form of a term")
    sp.add_argument("term")
    sp = add("phi", cmd_phi, "the endomorphism of a tot element")
    sp.add_argument("element")
    sp = add("psi", cmd_psi, "the tot element of an endomorphism")
    sp.add_argument("endo")
    sp = add("render", cmd_render, "matrix text of a labeled set, or of an element with --arrow")
    sp.add_argument("value")
    sp.add_argument("--arrow", action="store_true")
    sp = add("defer", cmd_defer, "deferment of a tot element to a root system")
    sp.add_argument("element")
    sp.add_argument("root_system")
    sp = add("verify-relations", cmd_verify_relations, "check relations listed in an alphabet file")
    sp.add_argument("file")
    sp = add("enumerate-codes", cmd_enumerate_codes, "count complete prefix codes up to a depth")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--list", action="store_true")
    return parser


def run(argv: Sequence[str]) -> Tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    out_buf, err_buf = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out_buf), contextlib.redirect_stderr(err_buf):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), out_buf.getvalue(), err_buf.getvalue()
    out = Output(args.format == "machine")
    try:
        code = args.func(args, _params(args), out)
    except USER_ERRORS as exc:
        return 2, "", f"error: {exc}\n"
    except OSError as exc:
        return 2, "", f"error: {exc.strerror}: {exc.filename}\n"
    return code, "".join(line + "\n" for line in out.lines), ""


def main(argv: Sequence[str] | None = None) -> int:
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
