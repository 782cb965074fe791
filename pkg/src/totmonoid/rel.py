"""The relation monoid nRel_{k,r}, anti-isomorphic to totnM_{k,r}.

An element is stored by its canonical tot carrier.  Products reverse the
order: the carrier of ``a * b`` is "carrier of b, then carrier of a".  This is
the convention under which the baker's-map composite reproduces the displayed
``fg`` arrow.

Labeled free generating sets are complete prefix codes with natural-number
labels.  In an arrow ``L1 -> L2`` the left set is the injectively labeled one
(holding the images) and the right set labels the domain code.

Matrix text: for n = 1 a dimension-0 split is a column ``[a;b]``; for n = 2 a
dimension-0 split is a row ``[a b]``, a dimension-1 split is a column
``[a;b]`` and a split in both is a matrix whose rows follow dimension 1.
Entries in a row are separated by a space, except that adjacent bracketed
entries touch (``[[0 1][2 3]]``).  Several roots render as a tuple
``(A, B)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import codes
from .shrubbery import Params, Shrubbery, check, concat, joinable, leq, root_node, suffix
from .tot import (
    TotElement, compose, deferment, depth_of, images_joinless, inverse, is_invertible,
    prefix_replacement, reduce, standard_root_system, check_root_system,
)

ARROW = "→"


class RelError(ValueError):
    pass


class NotMatrixRepresentable(RelError):
    pass


class SearchBudgetExceeded(RelError):
    pass


class LabeledGenSet:
    __slots__ = ("params", "labels")

    def __init__(self, params: Params, labels: Mapping[Shrubbery, int]):
        self.params = params
        self.labels = dict(labels)
        for key, lab in self.labels.items():
            check(key, params)
            if not isinstance(lab, int) or lab < 0:
                raise RelError(f"label {lab!r} is not a natural number")
        codes.require_complete(self.labels, params)

    @property
    def injective(self) -> bool:
        return len(set(self.labels.values())) == len(self.labels)

    def __eq__(self, other):
        return isinstance(other, LabeledGenSet) and (self.params, self.labels) == (other.params, other.labels)

    def __hash__(self):
        return hash((self.params, frozenset(self.labels.items())))

    def __str__(self):
        return "{%s}" % "; ".join(f"{k}:{v}" for k, v in sorted(self.labels.items()))

    __repr__ = __str__


@dataclass(frozen=True)
class RelElement:
    carrier: TotElement
    pair: Optional[tuple] = field(default=None, compare=False, hash=False)

    @property
    def params(self) -> Params:
        return self.carrier.params

    def __mul__(self, other: "RelElement") -> "RelElement":
        return rel_mul(self, other)

    def __str__(self):
        return str(self.carrier)


def rel_of(f: TotElement) -> RelElement:
    return RelElement(reduce(f))


def rel_identity(p: Params) -> RelElement:
    return RelElement(TotElement.identity(p))


def rel_mul(a: RelElement, b: RelElement) -> RelElement:
    return RelElement(compose(b.carrier, a.carrier))


def rel_product(elements: Sequence[RelElement], p: Params) -> RelElement:
    out = rel_identity(p)
    for e in elements:
        out = rel_mul(out, e)
    return out


def rel_inverse(a: RelElement) -> RelElement:
    return RelElement(inverse(a.carrier))


def rel_is_invertible(a: RelElement) -> bool:
    return is_invertible(a.carrier)


def rel_deferment(a: RelElement, w: Sequence[Shrubbery]) -> RelElement:
    return RelElement(deferment(a.carrier, w))


def depth_rel(a: RelElement) -> int:
    return depth_of(a.carrier)


def sigma_contains(a: RelElement, L1: LabeledGenSet, L2: LabeledGenSet) -> bool:
    """Whether ``(L1, L2)`` belongs to the relation of ``a``."""
    if not (a.params == L1.params == L2.params):
        raise RelError("parameter mismatch")
    for key, lab in L2.labels.items():
        v = prefix_replacement(a.carrier, key)
        if v is None or L1.labels.get(v) != lab:
            return False
    return True


def from_pair(L1: LabeledGenSet, L2: LabeledGenSet) -> RelElement:
    """The unique element whose relation contains ``(L1, L2)``."""
    if L1.params != L2.params:
        raise RelError("parameter mismatch")
    if not L1.injective:
        raise RelError("the left labeled set must be injectively labeled")
    by_label = {lab: key for key, lab in L1.labels.items()}
    h = {}
    for key, lab in L2.labels.items():
        if lab not in by_label:
            raise RelError(f"label {lab} of the right set is missing on the left")
        h[key] = by_label[lab]
    return RelElement(reduce(TotElement(L1.params, h, validate=False)), pair=(L1, L2))


# --- matrix rendering -------------------------------------------------------

def _layout(c: Shrubbery, keys: frozenset, p: Params):
    """Recursive uniform splitting of the keys inside the cone of ``c``."""
    if c in keys:
        return c
    inside = [x for x in keys if leq(c, x)]
    if not inside or any(joinable(c, x) and not leq(c, x) for x in keys):
        raise NotMatrixRepresentable(f"block {c} is not a union of whole cells")
    dims = [i for i in range(p.n) if all(len(x.words[i]) > len(c.words[i]) for x in inside)]
    if not dims:
        raise NotMatrixRepresentable(f"block {c} splits in no single dimension")
    if p.n == 1:
        return ("col", [[_layout(c.child(0, l), keys, p)] for l in range(p.k)])
    if dims == [0, 1]:
        return ("grid", [[_layout(c.child(0, col).child(1, row), keys, p) for col in range(p.k)]
                         for row in range(p.k)])
    if dims == [0]:
        return ("row", [[_layout(c.child(0, l), keys, p) for l in range(p.k)]])
    return ("col", [[_layout(c.child(1, l), keys, p)] for l in range(p.k)])


def _order(node, out):
    if isinstance(node, Shrubbery):
        out.append(node)
    else:
        for row in node[1]:
            for x in row:
                _order(x, out)
    return out


def _text(node, labels) -> str:
    if isinstance(node, Shrubbery):
        return str(labels[node])
    rows = []
    for row in node[1]:
        s = ""
        for x in row:
            piece = _text(x, labels)
            if s and not (s.endswith("]") and piece.startswith("[")):
                s += " "
            s += piece
        rows.append(s)
    return "[" + ";".join(rows) + "]"


def _layouts(keys, p: Params):
    if p.n > 2:
        raise NotMatrixRepresentable("matrix text is only defined for n <= 2")
    keys = frozenset(keys)
    return [_layout(root_node(i, p.n), keys, p) for i in range(p.r)]


def _join_roots(parts) -> str:
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def render_matrix(L: LabeledGenSet) -> str:
    return _join_roots([_text(node, L.labels) for node in _layouts(L.labels, L.params)])


def render_pair(L1: LabeledGenSet, L2: LabeledGenSet) -> str:
    return render_matrix(L1) + ARROW + render_matrix(L2)


def _refine_domain(f: TotElement) -> TotElement:
    """Split the domain so that each block splits in every dimension some leaf does."""
    p = f.params
    h = {}

    def descend(c):
        d = f.leaf_above(c)
        if d is not None:
            h[c] = concat(f.h[d], suffix(d, c))
            return
        near = [d for d in f.h if joinable(c, d)]
        dims = [i for i in range(p.n) if any(len(d.words[i]) > len(c.words[i]) for d in near)]
        blocks = [c]
        for i in dims:
            blocks = [b.child(i, l) for b in blocks for l in range(p.k)]
        for b in blocks:
            descend(b)

    for i in range(p.r):
        descend(root_node(i, p.n))
    return TotElement(p, h, validate=False)


def arrow_pair(a: RelElement) -> tuple:
    """A labeled pair ``(L1, L2)`` in the relation of ``a`` chosen for display."""
    p = a.params
    f = images_joinless(_refine_domain(a.carrier))
    images = frozenset(f.h.values())
    code = images | codes.complement(images, p)
    order = []
    for node in _layouts(code, p):
        _order(node, order)
    L1 = LabeledGenSet(p, {key: i for i, key in enumerate(order)})
    L2 = LabeledGenSet(p, {d: L1.labels[v] for d, v in f.h.items()})
    return L1, L2


def render_arrow(a: RelElement) -> str:
    return render_pair(*arrow_pair(a))


_TOKEN = re.compile(r"\s*(\d+|[\[\];(),])")


def _tokens(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise RelError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_matrix(text: str, p: Params) -> LabeledGenSet:
    """Inverse of ``render_matrix``."""
    toks = _tokens(text)
    pos = 0

    def item():
        nonlocal pos
        tok = toks[pos]
        if tok.isdigit():
            pos += 1
            return int(tok)
        if tok != "[":
            raise RelError(f"unexpected token {tok!r}")
        pos += 1
        rows, row = [], []
        while toks[pos] != "]":
            if toks[pos] == ";":
                rows.append(row)
                row = []
                pos += 1
            else:
                row.append(item())
        pos += 1
        rows.append(row)
        return rows

    roots = []
    if p.r > 1:
        if toks[pos] != "(":
            raise RelError("several roots need a tuple")
        pos += 1
        while True:
            roots.append(item())
            tok = toks[pos]
            pos += 1
            if tok == ")":
                break
            if tok != ",":
                raise RelError(f"expected ',' or ')', got {tok!r}")
    else:
        roots.append(item())
    if pos != len(toks) or len(roots) != p.r:
        raise RelError("trailing input or wrong number of roots")

    labels = {}

    def place(c, node):
        if isinstance(node, int):
            labels[c] = node
            return
        R, C = len(node), len(node[0])
        if any(len(row) != C for row in node):
            raise RelError("ragged matrix")
        if p.n == 1 and (R, C) == (p.k, 1):
            for l in range(p.k):
                place(c.child(0, l), node[l][0])
        elif p.n == 2 and (R, C) == (1, p.k):
            for l in range(p.k):
                place(c.child(0, l), node[0][l])
        elif p.n == 2 and (R, C) == (p.k, 1):
            for l in range(p.k):
                place(c.child(1, l), node[l][0])
        elif p.n == 2 and (R, C) == (p.k, p.k):
            for row in range(p.k):
                for col in range(p.k):
                    place(c.child(0, col).child(1, row), node[row][col])
        else:
            raise RelError(f"a {R}x{C} block does not match n={p.n}, k={p.k}")

    for i, node in enumerate(roots):
        place(root_node(i, p.n), node)
    return LabeledGenSet(p, labels)


# --- named generators -------------------------------------------------------

def _roots(p):
    return [root_node(i, p.n) for i in range(p.r)]


def gen_U(p: Params) -> RelElement:
    """Every root split into its k^n flat depth-1 cells, each carrying the root's label."""
    from .shrubbery import flat_shrubs
    L1 = {root_node(l, p.n): l for l in range(p.r)}
    L2 = {Shrubbery(l, s): l for l in range(p.r) for s in flat_shrubs(1, p)}
    return from_pair(LabeledGenSet(p, L1), LabeledGenSet(p, L2))


def gen_U_dim0(p: Params) -> RelElement:
    """Root 0 split in dimension 0, all children labeled 0."""
    L1 = {root_node(l, p.n): l for l in range(p.r)}
    L2 = {root_node(0, p.n).child(0, i): 0 for i in range(p.k)}
    L2.update({root_node(l, p.n): l for l in range(1, p.r)})
    return from_pair(LabeledGenSet(p, L1), LabeledGenSet(p, L2))


def _single_dim_split(w: Shrubbery, p: Params):
    nonempty = [i for i, word in enumerate(w.words) if word]
    if len(nonempty) != 1 or len(w.words[nonempty[0]]) != 1:
        raise RelError(f"{w} is not a depth-1 shrubbery with exactly one nonempty word")
    return nonempty[0], w.words[nonempty[0]][0]


def gen_pi_w(w: Shrubbery, p: Params) -> RelElement:
    """Merge the k dimension-d children of the root of ``w`` onto the child named by ``w``."""
    check(w, p)
    d, digit = _single_dim_split(w, p)
    rho = root_node(w.root, p.n)
    L1 = {rho.child(d, i): i for i in range(p.k)}
    L2 = {rho: digit}
    for l in range(p.r):
        if l != w.root:
            L1[root_node(l, p.n)] = p.k + l
            L2[root_node(l, p.n)] = p.k + l
    return from_pair(LabeledGenSet(p, L1), LabeledGenSet(p, L2))


def gen_pi0(p: Params) -> RelElement:
    return gen_pi_w(root_node(0, p.n).child(0, 0), p)


def gen_pi_s(s: Shrubbery, p: Params) -> RelElement:
    """The element of P inserting the shrub of ``s`` at the root of ``s``."""
    check(s, p)
    h = {rho: rho for rho in _roots(p)}
    h[root_node(s.root, p.n)] = s
    return RelElement(reduce(TotElement(p, h, validate=False)))


def single_dim_shrubberies(p: Params) -> list:
    """The depth-1 shrubberies with one nonempty (length-1) word."""
    out = []
    for root in range(p.r):
        for d in range(p.n):
            for j in range(p.k):
                out.append(root_node(root, p.n).child(d, j))
    return out


# --- root-system transport ---------------------------------------------------

def _balance(pieces: list, target: int, p: Params) -> list:
    pieces = sorted(pieces)
    while len(pieces) < target:
        x = min(pieces, key=lambda c: (c.depth, min(len(w) for w in c.words), c))
        i = min(range(p.n), key=lambda i: (len(x.words[i]), i))
        pieces.remove(x)
        pieces = sorted(pieces + x.children(i, p.k))
    return pieces


def transport(w: Sequence[Shrubbery], z: Sequence[Shrubbery], p: Params) -> TotElement:
    """An invertible element sending ``w_i x`` to ``z_i x`` for each i."""
    w = check_root_system(w, p)
    z = check_root_system(z, p)
    cw, cz = list(codes.complement(w, p)), list(codes.complement(z, p))
    if (len(cw) == 0) != (len(cz) == 0):
        raise RelError("one root system is complete and the other is not")
    size = max(len(cw), len(cz))
    if (size - len(cw)) % (p.k - 1) or (size - len(cz)) % (p.k - 1):
        raise RelError("complement sizes cannot be matched")
    cw, cz = _balance(cw, size, p), _balance(cz, size, p)
    h = dict(zip(w, z))
    h.update(zip(cw, cz))
    return reduce(TotElement(p, h, validate=False))


def is_standard_root_system(w: Sequence[Shrubbery], p: Params) -> bool:
    w = tuple(w)
    return any(w == standard_root_system(j, p) for j in range(w[0].depth + 1))


def p_w_word(w: Sequence[Shrubbery], p: Params, max_depth: int = 3) -> list:
    """Invertible letters whose product carries the root system ``w`` onto ``r_1``.

    The transport element is built directly; when it is deeper than
    ``max_depth`` no word is produced.
    """
    w = check_root_system(w, p)
    if is_standard_root_system(w, p):
        raise RelError("root systems of the form r_j are excluded")
    if max(x.depth for x in w) > 2:
        raise RelError("only root systems of depth <= 2 are supported")
    P = transport(w, standard_root_system(1, p), p)
    if depth_of(P) > max_depth:
        raise SearchBudgetExceeded(f"transport element has depth {depth_of(P)} > {max_depth}")
    return [RelElement(P)]


# --- right-heavy labelings ---------------------------------------------------

def right_heavy_code(i: int, p: Params) -> list:
    """Keys of the right-heavy code with ``i`` expansions, shallow to deep, leftmost first."""
    keys = [root_node(l, p.n) for l in range(p.r - 1)]
    spine = root_node(p.r - 1, p.n)
    for _ in range(i):
        keys.extend(spine.child(0, l) for l in range(p.k - 1))
        spine = spine.child(0, p.k - 1)
    keys.append(spine)
    return sorted(keys, key=lambda c: (c.depth, c))


def right_heavy(labels: Sequence[int], p: Params) -> LabeledGenSet:
    extra = len(labels) - p.r
    if extra < 0 or extra % (p.k - 1):
        raise RelError(f"tuple length must be r + i(k-1); got {len(labels)}")
    keys = right_heavy_code(extra // (p.k - 1), p)
    return LabeledGenSet(p, dict(zip(keys, labels)))


def right_heavy_tuple(L: LabeledGenSet) -> tuple:
    p = L.params
    i = (len(L.labels) - p.r) // (p.k - 1)
    keys = right_heavy_code(i, p)
    if set(keys) != set(L.labels):
        raise RelError("labeled set is not right-heavy")
    return tuple(L.labels[k] for k in keys)
