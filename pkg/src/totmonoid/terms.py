"""Terms of the absolutely free algebra over r generators with n k-ary operations
``lambda_d`` and nk unary operations ``alpha_{d,j}``, plus equality in the
free Jonsson-Tarski algebra.

Equality is decided by flattening: resolve both terms at every flat address of
depth N (N at least the lambda depth of either term) and compare the resulting
shrubberies.  ``normalize`` produces a preferred representative with no alpha
applied directly to a lambda and with alpha chains sorted by dimension; it is
not claimed to be unique.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Tuple, Union

from .shrubbery import Params, Shrubbery, flat_shrubs


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    index: int

    def __str__(self):
        return f"g{self.index}"


@dataclass(frozen=True)
class Lam:
    d: int
    children: Tuple["Term", ...]

    def __str__(self):
        return f"l{self.d}({','.join(map(str, self.children))})"


@dataclass(frozen=True)
class Alpha:
    d: int
    j: int
    child: "Term"

    def __str__(self):
        return f"a{self.d}_{self.j}({self.child})"


Term = Union[Gen, Lam, Alpha]


def check_term(t: Term, p: Params) -> Term:
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Gen):
            if not 0 <= s.index < p.r:
                raise TermError(f"generator g{s.index} out of range for r={p.r}")
        elif isinstance(s, Lam):
            if not 0 <= s.d < p.n or len(s.children) != p.k:
                raise TermError(f"bad lambda node l{s.d} with {len(s.children)} children")
            stack.extend(s.children)
        else:
            if not (0 <= s.d < p.n and 0 <= s.j < p.k):
                raise TermError(f"bad alpha a{s.d}_{s.j}")
            stack.append(s.child)
    return t


def lambda_count(t: Term) -> int:
    if isinstance(t, Gen):
        return 0
    if isinstance(t, Alpha):
        return lambda_count(t.child)
    return 1 + sum(lambda_count(c) for c in t.children)


def lambda_depth(t: Term) -> int:
    """Most lambda nodes of one dimension on any root-to-leaf path.

    Resolving at a flat address of this depth never runs out of digits.
    """
    def walk(t, counts):
        if isinstance(t, Gen):
            return max(counts)
        if isinstance(t, Alpha):
            return walk(t.child, counts)
        bumped = counts[:t.d] + (counts[t.d] + 1,) + counts[t.d + 1:]
        return max(walk(c, bumped) for c in t.children)

    dims = 1 + max((node.d for node in _nodes(t) if not isinstance(node, Gen)), default=0)
    return walk(t, (0,) * dims)


def _nodes(t: Term):
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Lam):
            stack.extend(s.children)
        elif isinstance(s, Alpha):
            stack.append(s.child)


def _chain(t: Term):
    """Split an alpha chain over a generator into (generator, [(d, j), ...]) innermost first."""
    steps = []
    while isinstance(t, Alpha):
        steps.append((t.d, t.j))
        t = t.child
    if not isinstance(t, Gen):
        return None, None
    steps.reverse()
    return t, steps


def _build_chain(g: Gen, steps) -> Term:
    t: Term = g
    for d, j in steps:
        t = Alpha(d, j, t)
    return t


def apply_alpha(t: Term, d: int, j: int) -> Term:
    """``t`` followed by ``alpha_{d,j}``, keeping normal terms normal."""
    if isinstance(t, Lam):
        if t.d == d:
            return t.children[j]
        return Lam(t.d, tuple(apply_alpha(c, d, j) for c in t.children))
    g, steps = _chain(t)
    if g is None:
        # alpha over a non-normal subterm; leave it wrapped
        return Alpha(d, j, t)
    pos = len(steps)
    while pos > 0 and steps[pos - 1][0] > d:
        pos -= 1
    return _build_chain(g, steps[:pos] + [(d, j)] + steps[pos:])


def _strip_last(t: Term, d: int, j: int):
    """Inverse of ``apply_alpha`` on a sorted chain, or None."""
    g, steps = _chain(t)
    if g is None:
        return None
    for pos in range(len(steps) - 1, -1, -1):
        if steps[pos][0] == d:
            if steps[pos][1] != j:
                return None
            return _build_chain(g, steps[:pos] + steps[pos + 1:])
        if steps[pos][0] < d:
            return None
    return None


def make_lambda(d: int, children) -> Term:
    """Build ``(children) lambda_d`` collapsing ``(x a_{d,0}, ..., x a_{d,k-1}) lambda_d = x``."""
    children = tuple(children)
    base = _strip_last(children[0], d, 0)
    if base is not None and all(_strip_last(c, d, j) == base for j, c in enumerate(children)):
        return base
    return Lam(d, children)


def normalize(t: Term) -> Term:
    """Innermost (bottom-up) normalization."""
    if isinstance(t, Gen):
        return t
    if isinstance(t, Alpha):
        return apply_alpha(normalize(t.child), t.d, t.j)
    return make_lambda(t.d, (normalize(c) for c in t.children))


def _step(t: Term):
    """One outermost rewrite step, or None when no rule applies."""
    if isinstance(t, Alpha):
        c = t.child
        if isinstance(c, Lam):
            if c.d == t.d:
                return c.children[t.j]
            return Lam(c.d, tuple(Alpha(t.d, t.j, x) for x in c.children))
        if isinstance(c, Alpha) and c.d > t.d:
            return Alpha(c.d, c.j, Alpha(t.d, t.j, c.child))
        inner = _step(c)
        return None if inner is None else Alpha(t.d, t.j, inner)
    if isinstance(t, Lam):
        collapsed = make_lambda(t.d, t.children)
        if collapsed != t:
            return collapsed
        for i, c in enumerate(t.children):
            inner = _step(c)
            if inner is not None:
                return Lam(t.d, t.children[:i] + (inner,) + t.children[i + 1:])
    return None


def normalize_outermost(t: Term, max_steps: int = 100000) -> Term:
    """Normalization by repeated outermost single steps; an independent strategy."""
    for _ in range(max_steps):
        nxt = _step(t)
        if nxt is None:
            return t
        t = nxt
    raise TermError("outermost normalization did not terminate")


def is_normal(t: Term) -> bool:
    if isinstance(t, Gen):
        return True
    if isinstance(t, Lam):
        return all(is_normal(c) for c in t.children)
    g, steps = _chain(t)
    if g is None:
        return False
    return all(a[0] <= b[0] for a, b in zip(steps, steps[1:]))


def resolve(t: Term, address) -> Shrubbery:
    """Apply the alpha string of a shrub (a tuple of words) to ``t`` and decode.

    Raises TermError if a lambda is reached whose dimension has no digits left.
    """
    pending = [deque(w) for w in address]
    while True:
        if isinstance(t, Alpha):
            # an inner alpha acts before everything already pending
            pending[t.d].appendleft(t.j)
            t = t.child
        elif isinstance(t, Lam):
            if not pending[t.d]:
                raise TermError(f"residual lambda l{t.d}: address too shallow")
            t = t.children[pending[t.d].popleft()]
        else:
            return Shrubbery(t.index, tuple(tuple(w) for w in pending))


def flatten(t: Term, N: int, p: Params) -> dict:
    if N < 0:
        raise TermError("N must be non-negative")
    return {s: resolve(t, s) for s in flat_shrubs(N, p)}


def term_eq(t1: Term, t2: Term, p: Params) -> bool:
    N = max(lambda_depth(t1), lambda_depth(t2))
    for s in flat_shrubs(N, p):
        if resolve(t1, s) != resolve(t2, s):
            return False
    return True


def tree_encode(w: Shrubbery) -> Term:
    t: Term = Gen(w.root)
    for i, word in enumerate(w.words):
        for digit in word:
            t = Alpha(i, digit, t)
    return t


def tree_decode(t: Term, n: int) -> Shrubbery:
    """Read an alpha chain over a generator back as a shrubbery."""
    words = [[] for _ in range(n)]
    while isinstance(t, Alpha):
        words[t.d].append(t.j)
        t = t.child
    if not isinstance(t, Gen):
        raise TermError("term contains a lambda; not in the image of the tree map")
    return Shrubbery(t.index, tuple(tuple(reversed(w)) for w in words))
