"""Endomorphisms of the free algebra and the translations phi / psi to totnM_{k,r}.

An endomorphism is fixed by the images of the r free generators.  Composition
is in reading order: ``endo_compose(e1, e2)`` sends ``g_i`` to ``(g_i)e1`` and
then applies ``e2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import codes
from .shrubbery import Params, Shrubbery, concat, flat_shrubberies, joinable, root_node, suffix
from .terms import Alpha, Gen, Lam, Term, check_term, lambda_depth, normalize, resolve, term_eq, tree_encode
from .tot import TotElement, reduce


@dataclass(frozen=True)
class Endo:
    params: Params
    images: Tuple[Term, ...]

    def __post_init__(self):
        if len(self.images) != self.params.r:
            raise ValueError(f"an endomorphism needs r={self.params.r} generator images")
        for t in self.images:
            check_term(t, self.params)

    @classmethod
    def identity(cls, p: Params) -> "Endo":
        return cls(p, tuple(Gen(i) for i in range(p.r)))

    def __str__(self):
        return "[%s]" % "; ".join(map(str, self.images))


def substitute(t: Term, images) -> Term:
    if isinstance(t, Gen):
        return images[t.index]
    if isinstance(t, Alpha):
        return Alpha(t.d, t.j, substitute(t.child, images))
    return Lam(t.d, tuple(substitute(c, images) for c in t.children))


def endo_apply(e: Endo, t: Term) -> Term:
    return normalize(substitute(t, e.images))


def endo_compose(e1: Endo, e2: Endo) -> Endo:
    if e1.params != e2.params:
        raise ValueError("parameter mismatch")
    return Endo(e1.params, tuple(endo_apply(e2, t) for t in e1.images))


def endo_eq(e1: Endo, e2: Endo) -> bool:
    return e1.params == e2.params and all(
        term_eq(a, b, e1.params) for a, b in zip(e1.images, e2.images))


def phi(f: TotElement) -> Endo:
    """Send each leaf generator to the encoded image of the leaf.

    A generator is rebuilt over the leaves by descending the pseudotree:
    at a block ``c`` that is not inside a leaf, ``c = (c a_{i,0}, ..., c a_{i,k-1}) l_i``
    for a dimension ``i`` in which some overlapping leaf is longer.
    """
    p = f.params

    def term_for(c: Shrubbery) -> Term:
        d = f.leaf_above(c)
        if d is not None:
            return tree_encode(concat(f.h[d], suffix(d, c)))
        for i in range(p.n):
            if any(joinable(c, d) and len(d.words[i]) > len(c.words[i]) for d in f.h):
                return Lam(i, tuple(term_for(ch) for ch in c.children(i, p.k)))
        raise codes.CodeError("domain is not a complete prefix code")

    return Endo(p, tuple(normalize(term_for(root_node(i, p.n))) for i in range(p.r)))


def psi(e: Endo) -> TotElement:
    """Resolve every generator image on the full flat code of depth N."""
    p = e.params
    N = max(lambda_depth(t) for t in e.images)
    h = {cell: resolve(e.images[cell.root], cell.words) for cell in flat_shrubberies(N, p)}
    return reduce(TotElement(p, h, validate=False))
