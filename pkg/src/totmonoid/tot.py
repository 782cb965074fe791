"""Elements of totnM_{k,r}: a complete prefix code with a map from its leaves to shrubberies.

Points of Cantor space are never materialized.  Composition is written in
reading order: ``compose(f, g)`` is ``x -> ((x)f)g``.

Canonical form
--------------
For a shrubbery ``c`` let ``rep(c)`` be the shrubbery ``v`` with
``(c x)f = v x`` for all ``x`` (when one exists).  ``rep`` depends only on the
map, not on the chosen pair.  The canonical pair is built by descending from
the roots: a block becomes a leaf as soon as ``rep`` is defined on it, and
otherwise is split in the dimension minimizing (max depth of leaves and
images, number of leaves), with splits confined to words shorter than the
least N for which every flat depth-N cell is a leaf.  Structural equality of
canonical pairs is equality of maps.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from . import codes
from .shrubbery import (
    Params, Shrubbery, check, concat, flat_shrubberies, joinable, leq, root_node, suffix,
)


class TotError(ValueError):
    pass


class InsufficientDepth(TotError):
    pass


class TotElement:
    __slots__ = ("params", "h", "_leaves_by_root", "_hash")

    def __init__(self, params: Params, h: Mapping[Shrubbery, Shrubbery], validate: bool = True):
        self.params = params
        self.h = dict(h)
        if validate:
            for a, b in self.h.items():
                check(a, params)
                check(b, params)
            codes.require_complete(self.h, params)
        by_root: dict = {}
        for d in self.h:
            by_root.setdefault(d.root, []).append(d)
        self._leaves_by_root = by_root
        self._hash = None

    @classmethod
    def identity(cls, p: Params) -> "TotElement":
        return cls(p, {root_node(i, p.n): root_node(i, p.n) for i in range(p.r)}, validate=False)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.h)

    def items(self):
        return sorted(self.h.items())

    def __eq__(self, other):
        # structural: use tot_eq for equality of maps
        return isinstance(other, TotElement) and self.params == other.params and self.h == other.h

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.h.items())))
        return self._hash

    def __str__(self):
        return "{%s}" % "; ".join(f"{a} -> {b}" for a, b in self.items())

    __repr__ = __str__

    def leaf_above(self, w: Shrubbery):
        candidates = self._leaves_by_root.get(w.root, ())
        prefixes = 1
        for word in w.words:
            prefixes *= len(word) + 1
        if prefixes < len(candidates):
            h = self.h
            for cut in itertools.product(*[range(len(word) + 1) for word in w.words]):
                d = Shrubbery(w.root, tuple(word[:m] for word, m in zip(w.words, cut)))
                if d in h:
                    return d
            return None
        for d in candidates:
            if leq(d, w):
                return d
        return None

    def expand(self, leaf: Shrubbery, i: int) -> "TotElement":
        """Elementary expansion of one leaf; the map is unchanged."""
        h = dict(self.h)
        image = h.pop(leaf)
        for l in range(self.params.k):
            h[leaf.child(i, l)] = image.child(i, l)
        return TotElement(self.params, h, validate=False)


def eval_prefix(f: TotElement, w: Shrubbery) -> Shrubbery:
    d = f.leaf_above(w)
    if d is None:
        raise InsufficientDepth(f"{w} is not below any leaf; expand it first")
    return concat(f.h[d], suffix(d, w))


def _same_params(f: TotElement, g: TotElement):
    if f.params != g.params:
        raise TotError(f"parameter mismatch: {f.params} vs {g.params}")


def compose(f: TotElement, g: TotElement, canonical: bool = True) -> TotElement:
    """``x -> ((x)f)g``.

    Only the leaves of ``f`` are expanded, each until its image lies inside a
    leaf cone of ``g``, splitting a dimension in which some overlapping leaf
    of ``g`` is longer.
    """
    _same_params(f, g)
    out = {}
    work = list(f.h.items())
    while work:
        d, v = work.pop()
        leaf = g.leaf_above(v)
        if leaf is not None:
            out[d] = concat(g.h[leaf], suffix(leaf, v))
            continue
        near = [x for x in g._leaves_by_root.get(v.root, ()) if joinable(x, v)]
        i = next(i for i in range(f.params.n) if any(len(x.words[i]) > len(v.words[i]) for x in near))
        work.extend((d.child(i, l), v.child(i, l)) for l in range(f.params.k))
    result = TotElement(f.params, out, validate=False)
    return reduce(result) if canonical else result


def compose_all(elements: Sequence[TotElement], p: Params) -> TotElement:
    out = TotElement.identity(p)
    for e in elements:
        out = compose(out, e)
    return out


class _Rep:
    """Memoized ``rep`` for one element."""

    def __init__(self, f: TotElement):
        self.f = f
        self.D = codes.code_depth(f.h)
        self.memo: dict = {}

    def __call__(self, c: Shrubbery):
        if c in self.memo:
            return self.memo[c]
        f = self.f
        d = f.leaf_above(c)
        if d is not None:
            v = concat(f.h[d], suffix(d, c))
        else:
            near = [x for x in f._leaves_by_root.get(c.root, ()) if joinable(x, c)]
            i = next(i for i in range(f.params.n)
                     if any(len(x.words[i]) > len(c.words[i]) for x in near))
            v = None
            kids = [self(ch) for ch in c.children(i, f.params.k)]
            if all(x is not None for x in kids):
                parents = set()
                for l, x in enumerate(kids):
                    if not x.words[i] or x.words[i][-1] != l:
                        break
                    parents.add(x.parent(i))
                else:
                    if len(parents) == 1:
                        v = parents.pop()
        self.memo[c] = v
        return v


def prefix_replacement(f: TotElement, c: Shrubbery):
    """The shrubbery ``v`` with ``(c x)f = v x`` for every ``x``, or None."""
    return _Rep(f)(c)


def min_flat_depth(f: TotElement, rep: _Rep | None = None) -> int:
    """Least N such that ``rep`` is defined on every flat cell of depth N."""
    rep = rep or _Rep(f)
    p = f.params

    def needed(c: Shrubbery) -> int:
        if rep(c) is not None:
            return c.depth
        i = min(range(p.n), key=lambda i: (len(c.words[i]), i))
        return max(needed(ch) for ch in c.children(i, p.k))

    return max(needed(root_node(i, p.n)) for i in range(p.r))


def reduce(f: TotElement) -> TotElement:
    """The canonical pair representing ``f``."""
    p = f.params
    rep = _Rep(f)
    N0 = min_flat_depth(f, rep)
    best: dict = {}

    def solve(c: Shrubbery):
        if c in best:
            return best[c]
        v = rep(c)
        if v is not None:
            out = (max(c.depth, v.depth), 1, None)
        else:
            out = None
            for i in range(p.n):
                if len(c.words[i]) >= N0:
                    continue
                kids = [solve(ch) for ch in c.children(i, p.k)]
                cand = (max(x[0] for x in kids), sum(x[1] for x in kids), i)
                if out is None or cand < out:
                    out = cand
        best[c] = out
        return out

    h = {}

    def collect(c: Shrubbery):
        _, _, i = solve(c)
        if i is None:
            h[c] = rep(c)
        else:
            for ch in c.children(i, p.k):
                collect(ch)

    for root in range(p.r):
        collect(root_node(root, p.n))
    return TotElement(p, h, validate=False)


def flat_expansion(f: TotElement, N: int) -> dict:
    """Images of every flat depth-N cell; requires N >= depth of the domain code."""
    return {cell: eval_prefix(f, cell) for cell in flat_shrubberies(N, f.params)}


def tot_eq_flat(f: TotElement, g: TotElement) -> bool:
    _same_params(f, g)
    N = max(codes.code_depth(f.h), codes.code_depth(g.h))
    return flat_expansion(f, N) == flat_expansion(g, N)


def tot_eq(f: TotElement, g: TotElement) -> bool:
    _same_params(f, g)
    return reduce(f) == reduce(g)


def depth_of(f: TotElement) -> int:
    c = reduce(f)
    return max(max(a.depth, b.depth) for a, b in c.h.items())


def is_invertible(f: TotElement) -> bool:
    f = reduce(f)
    images = list(f.h.values())
    if len(set(images)) != len(images):
        return False
    return codes.is_complete(images, f.params)


def inverse(f: TotElement) -> TotElement:
    if not is_invertible(f):
        raise TotError("element is not invertible")
    f = reduce(f)
    return reduce(TotElement(f.params, {b: a for a, b in f.h.items()}, validate=False))


def check_root_system(w: Sequence[Shrubbery], p: Params) -> tuple:
    w = tuple(w)
    if len(w) != p.r:
        raise TotError(f"a root system needs exactly r={p.r} shrubberies")
    for x in w:
        check(x, p)
    if not codes.is_prefix_code(w):
        raise TotError("root system is not a prefix code")
    return w


def trivial_root_system(p: Params) -> tuple:
    return tuple(root_node(i, p.n) for i in range(p.r))


def standard_root_system(j: int, p: Params) -> tuple:
    """``r_j``: root 0 deferred to the dimension-0 word 0^j, other roots untouched."""
    first = Shrubbery(0, ((0,) * j,) + ((),) * (p.n - 1))
    return (first,) + tuple(root_node(i, p.n) for i in range(1, p.r))


def root_system_depth(w: Sequence[Shrubbery]) -> int:
    return max(x.depth for x in w)


def deferment(f: TotElement, w: Sequence[Shrubbery], canonical: bool = True) -> TotElement:
    """``f`` acting inside the cones of the root system ``w``, identity elsewhere."""
    p = f.params
    w = check_root_system(w, p)
    f = reduce(f)
    h = {}
    for d, v in f.h.items():
        h[concat(w[d.root], d.words)] = concat(w[v.root], v.words)
    for c in codes.complement(w, p):
        h[c] = c
    out = TotElement(p, h, validate=False)
    return reduce(out) if canonical else out


def from_pairs(p: Params, pairs: Iterable) -> TotElement:
    return TotElement(p, dict(pairs))


def images_joinless(f: TotElement) -> TotElement:
    """Expand leaves until distinct images have disjoint cones."""
    p = f.params
    h = dict(f.h)
    while True:
        imgs = sorted(set(h.values()))
        clash = None
        for a in imgs:
            for b in imgs:
                if a < b and joinable(a, b):
                    clash = (a, b)
                    break
            if clash:
                break
        if clash is None:
            return TotElement(p, h, validate=False)
        a, b = clash
        # expand whichever image is shorter in the first differing dimension
        for i in range(p.n):
            la, lb = len(a.words[i]), len(b.words[i])
            if la != lb:
                short = a if la < lb else b
                break
        for d in [d for d, v in h.items() if v == short]:
            v = h.pop(d)
            for l in range(p.k):
                h[d.child(i, l)] = v.child(i, l)
