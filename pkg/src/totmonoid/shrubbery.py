"""Words and shrubberies: the nodes of the r-rooted n-dimensional k-ary tree.

A shrubbery is a root index together with an n-tuple of digit words.  Words
are stored as tuples of ints; the textual form is ``(root,(w0,w1,...))`` with
``e`` standing for the empty word, e.g. ``(0,(01,e))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

Word = Tuple[int, ...]
Shrub = Tuple[Word, ...]


@dataclass(frozen=True)
class Params:
    n: int
    k: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.k < 2 or self.r < 1:
            raise ValueError(f"need n >= 1, k >= 2, r >= 1; got {self}")

    def __str__(self):
        return f"(n={self.n}, k={self.k}, r={self.r})"


@dataclass(frozen=True, order=True)
class Shrubbery:
    root: int
    words: Shrub

    def __str__(self):
        return "(%d,(%s))" % (self.root, ",".join(word_str(w) for w in self.words))

    __repr__ = __str__

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.words), default=0)

    @property
    def is_flat(self) -> bool:
        d = self.depth
        return all(len(w) == d for w in self.words)

    def child(self, i: int, digit: int) -> "Shrubbery":
        """Extend the dimension-``i`` word by one digit."""
        words = list(self.words)
        words[i] = words[i] + (digit,)
        return Shrubbery(self.root, tuple(words))

    def children(self, i: int, k: int) -> list:
        return [self.child(i, l) for l in range(k)]

    def parent(self, i: int) -> "Shrubbery":
        words = list(self.words)
        words[i] = words[i][:-1]
        return Shrubbery(self.root, tuple(words))

    def with_root(self, root: int) -> "Shrubbery":
        return Shrubbery(root, self.words)


def word_str(w: Word) -> str:
    return "".join(str(d) for d in w) if w else "e"


def check(w: Shrubbery, p: Params) -> Shrubbery:
    """Validate ``w`` against ``p``, returning it unchanged."""
    if not 0 <= w.root < p.r:
        raise ValueError(f"root {w.root} out of range for r={p.r}")
    if len(w.words) != p.n:
        raise ValueError(f"{w} has {len(w.words)} coordinates, expected n={p.n}")
    for word in w.words:
        if any(not 0 <= d < p.k for d in word):
            raise ValueError(f"{w} has a digit outside 0..{p.k - 1}")
    return w


def shrubbery(root: int, *words: Sequence[int] | str) -> Shrubbery:
    """Convenience constructor: ``shrubbery(0, "01", "")`` or ``shrubbery(0, (0, 1), ())``."""
    out = []
    for w in words:
        if isinstance(w, str):
            w = () if w in ("", "e") else tuple(int(c) for c in w)
        out.append(tuple(w))
    return Shrubbery(root, tuple(out))


def root_node(root: int, n: int) -> Shrubbery:
    return Shrubbery(root, ((),) * n)


def concat(u: Shrubbery, v: Shrub) -> Shrubbery:
    if len(v) != len(u.words):
        raise ValueError(f"dimension mismatch: {u} has {len(u.words)} words, shrub has {len(v)}")
    return Shrubbery(u.root, tuple(a + tuple(b) for a, b in zip(u.words, v)))


def leq(u: Shrubbery, v: Shrubbery) -> bool:
    if u.root != v.root or len(u.words) != len(v.words):
        return False
    return all(b[:len(a)] == a for a, b in zip(u.words, v.words))


def suffix(u: Shrubbery, v: Shrubbery) -> Shrub:
    """The shrub ``x`` with ``u x == v``; requires ``leq(u, v)``."""
    if not leq(u, v):
        raise ValueError(f"{u} is not a prefix of {v}")
    return tuple(b[len(a):] for a, b in zip(u.words, v.words))


def joinable(u: Shrubbery, v: Shrubbery) -> bool:
    """True iff the cones of ``u`` and ``v`` intersect."""
    if u.root != v.root:
        return False
    for a, b in zip(u.words, v.words):
        m = min(len(a), len(b))
        if a[:m] != b[:m]:
            return False
    return True


def join(u: Shrubbery, v: Shrubbery) -> Shrubbery:
    """Least common upper bound of joinable shrubberies."""
    if not joinable(u, v):
        raise ValueError(f"{u} and {v} have disjoint cones")
    return Shrubbery(u.root, tuple(a if len(a) >= len(b) else b for a, b in zip(u.words, v.words)))


def depth(w: Shrubbery) -> int:
    return w.depth


def is_flat(w: Shrubbery) -> bool:
    return w.is_flat


def words_of_length(length: int, k: int) -> Iterator[Word]:
    return itertools.product(range(k), repeat=length)


def flat_shrubs(depth: int, p: Params) -> list:
    """All flat shrubs of the given depth, in lexicographic order."""
    words = list(words_of_length(depth, p.k))
    return list(itertools.product(words, repeat=p.n))


def flat_shrubberies(depth: int, p: Params) -> list:
    return [Shrubbery(root, s) for root in range(p.r) for s in flat_shrubs(depth, p)]


def all_shrubberies(max_len: int, p: Params, root: int | None = None) -> list:
    """Every shrubbery whose words all have length <= ``max_len``."""
    words = [w for length in range(max_len + 1) for w in words_of_length(length, p.k)]
    roots = range(p.r) if root is None else [root]
    return [Shrubbery(rt, s) for rt in roots for s in itertools.product(words, repeat=p.n)]
