"""Text literals for every value type, with line/column error reporting.

Grammar (whitespace is free between tokens)::

    shrubbery   (root,(w0,...,w{n-1}))     word: digits, or e / ε for empty
    code        { s ; s ; ... }
    tot         { s -> s ; ... }
    labeled     { s : nat ; ... }
    root system [ s ; ... ]
    term        g0 | a0_1(t) | l0(t,...,t)
    endo        [ t ; ... ]
    arrow       L1→L2 in matrix text (``->`` also accepted)
"""
from __future__ import annotations

from typing import Callable, List

from . import codes
from .codes import CodeError
from .endo import Endo
from .rel import ARROW, LabeledGenSet, RelElement, RelError, from_pair, parse_matrix
from .shrubbery import Params, Shrubbery
from .terms import Alpha, Gen, Lam, Term, TermError, check_term
from .tot import TotElement, TotError, check_root_system


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.message, self.pos = line, column, message, pos
        super().__init__(f"line {line}, column {column}: {message}")


class Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str):
        if not self.at(token):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")
        self.pos += len(token)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing input {self.text[self.pos]!r}")


def _whole(parse: Callable[[Reader, Params], object]):
    def run(text: str, p: Params):
        rd = Reader(text)
        value = parse(rd, p)
        rd.end()
        return value
    run.__name__ = parse.__name__.lstrip("_")
    run.__doc__ = parse.__doc__
    return run


def _word(rd: Reader, p: Params) -> tuple:
    rd.skip()
    if rd.at("e") or rd.at("ε"):
        rd.pos += 1
        return ()
    start = rd.pos
    digits = []
    while rd.pos < len(rd.text) and rd.text[rd.pos].isdigit():
        digit = int(rd.text[rd.pos])
        if digit >= p.k:
            raise rd.error(f"digit {digit} out of range for k={p.k}")
        digits.append(digit)
        rd.pos += 1
    if rd.pos == start:
        raise rd.error("expected a word (digits or e)")
    return tuple(digits)


def _shrubbery(rd: Reader, p: Params) -> Shrubbery:
    rd.skip()
    start = rd.pos
    rd.expect("(")
    root = rd.integer()
    if root >= p.r:
        raise rd.error(f"root {root} out of range for r={p.r}", start)
    rd.expect(",")
    rd.expect("(")
    words = [_word(rd, p)]
    while rd.at(","):
        rd.expect(",")
        words.append(_word(rd, p))
    rd.expect(")")
    rd.expect(")")
    if len(words) != p.n:
        raise rd.error(f"shrubbery has {len(words)} words; n={p.n}", start)
    return Shrubbery(root, tuple(words))


def _braced(rd: Reader, item):
    rd.expect("{")
    items = []
    if not rd.at("}"):
        items.append(item())
        while rd.at(";"):
            rd.expect(";")
            if rd.at("}"):
                break
            items.append(item())
    rd.expect("}")
    return items


def _code(rd: Reader, p: Params) -> frozenset:
    start = rd.pos
    items = _braced(rd, lambda: _shrubbery(rd, p))
    if not codes.is_complete(items, p):
        raise rd.error("not a complete prefix code", start)
    return frozenset(items)


def _tot(rd: Reader, p: Params) -> TotElement:
    start = rd.pos

    def pair():
        a = _shrubbery(rd, p)
        rd.expect("->")
        return a, _shrubbery(rd, p)

    pairs = _braced(rd, pair)
    h = dict(pairs)
    if len(h) != len(pairs):
        raise rd.error("repeated domain element", start)
    try:
        return TotElement(p, h)
    except (CodeError, TotError) as exc:
        raise rd.error(str(exc), start) from None


def _labeled(rd: Reader, p: Params) -> LabeledGenSet:
    start = rd.pos

    def pair():
        a = _shrubbery(rd, p)
        rd.expect(":")
        return a, rd.integer()

    pairs = _braced(rd, pair)
    try:
        return LabeledGenSet(p, dict(pairs))
    except (CodeError, RelError) as exc:
        raise rd.error(str(exc), start) from None


def _root_system(rd: Reader, p: Params) -> tuple:
    start = rd.pos
    rd.expect("[")
    items = [_shrubbery(rd, p)]
    while rd.at(";"):
        rd.expect(";")
        items.append(_shrubbery(rd, p))
    rd.expect("]")
    try:
        return check_root_system(items, p)
    except TotError as exc:
        raise rd.error(str(exc), start) from None


def _term(rd: Reader, p: Params) -> Term:
    rd.skip()
    start = rd.pos
    head = rd.peek()
    if head == "g":
        rd.pos += 1
        t: Term = Gen(rd.integer())
    elif head == "a":
        rd.pos += 1
        d = rd.integer()
        rd.expect("_")
        j = rd.integer()
        rd.expect("(")
        t = Alpha(d, j, _term(rd, p))
        rd.expect(")")
    elif head == "l":
        rd.pos += 1
        d = rd.integer()
        rd.expect("(")
        children = [_term(rd, p)]
        while rd.at(","):
            rd.expect(",")
            children.append(_term(rd, p))
        rd.expect(")")
        t = Lam(d, tuple(children))
    else:
        raise rd.error("expected a term starting with g, a or l")
    try:
        return check_term(t, p)
    except TermError as exc:
        raise rd.error(str(exc), start) from None


def _endo(rd: Reader, p: Params) -> Endo:
    start = rd.pos
    rd.expect("[")
    images = [_term(rd, p)]
    while rd.at(";"):
        rd.expect(";")
        images.append(_term(rd, p))
    rd.expect("]")
    try:
        return Endo(p, tuple(images))
    except (ValueError, TermError) as exc:
        raise rd.error(str(exc), start) from None


parse_shrubbery = _whole(_shrubbery)
parse_code = _whole(_code)
parse_tot = _whole(_tot)
parse_labeled = _whole(_labeled)
parse_root_system = _whole(_root_system)
parse_term = _whole(_term)
parse_endo = _whole(_endo)


def parse_arrow(text: str, p: Params) -> RelElement:
    """``L1→L2`` in matrix text."""
    sep = ARROW if ARROW in text else "->"
    if sep not in text:
        raise ParseError("expected an arrow L1→L2", text, 0)
    left, right = text.split(sep, 1)
    sides: List[LabeledGenSet] = []
    for offset, side in ((0, left), (len(left) + len(sep), right)):
        try:
            sides.append(parse_matrix(side, p))
        except (RelError, CodeError, IndexError) as exc:
            msg = str(exc) if not isinstance(exc, IndexError) else "unexpected end of matrix"
            raise ParseError(msg, text, offset) from None
    try:
        return from_pair(*sides)
    except RelError as exc:
        raise ParseError(str(exc), text, 0) from None


def relocate(exc: ParseError, text: str, offset: int) -> ParseError:
    """The same error positioned inside a larger text."""
    return ParseError(exc.message, text, offset + exc.pos)


def parse_rel(text: str, p: Params) -> RelElement:
    """A relation-monoid element given as a tot literal or an arrow."""
    from .tot import reduce
    if text.lstrip().startswith("{"):
        return RelElement(reduce(parse_tot(text, p)))
    return parse_arrow(text, p)
