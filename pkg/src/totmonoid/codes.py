"""Complete prefix codes and their elementary expansions.

Completeness is decided by the flat-address criterion: a finite set ``C`` is a
complete prefix code iff every flat shrubbery of depth ``d(C)`` lies above
exactly one element of ``C``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from typing import Iterable

from .shrubbery import (
    Params, Shrubbery, check, flat_shrubberies, joinable, leq, root_node,
)

ENUMERATION_LIMIT = 2 ** 20


class CodeError(ValueError):
    pass


def code_depth(code: Iterable[Shrubbery]) -> int:
    return max((c.depth for c in code), default=0)


def is_prefix_code(code: Iterable[Shrubbery]) -> bool:
    code = list(code)
    for u, v in itertools.combinations(code, 2):
        if joinable(u, v):
            return False
    return len(set(code)) == len(code)


def is_complete(code: Iterable[Shrubbery], p: Params) -> bool:
    code = list(code)
    if len(set(code)) != len(code):
        return False
    by_root: dict = {}
    for c in code:
        check(c, p)
        by_root.setdefault(c.root, []).append(c)
    d = code_depth(code)
    for cell in flat_shrubberies(d, p):
        hits = sum(1 for c in by_root.get(cell.root, ()) if leq(c, cell))
        if hits != 1:
            return False
    return True


def require_complete(code: Iterable[Shrubbery], p: Params) -> frozenset:
    code = frozenset(code)
    if not is_complete(code, p):
        raise CodeError("not a complete prefix code: {%s}" % "; ".join(map(str, sorted(code))))
    return code


def elementary_expansion(multiset: Counter, a: Shrubbery, i: int, p: Params) -> Counter:
    if multiset.get(a, 0) < 1:
        raise CodeError(f"{a} is not in the multiset")
    if not 0 <= i < p.n:
        raise CodeError(f"dimension {i} out of range for n={p.n}")
    out = Counter(multiset)
    out[a] -= 1
    if out[a] == 0:
        del out[a]
    for child in a.children(i, p.k):
        out[child] += 1
    return out


def expand_code(code: Iterable[Shrubbery], a: Shrubbery, i: int, p: Params) -> frozenset:
    """Elementary expansion of a set; raises if the result has duplicates."""
    out = elementary_expansion(Counter(code), a, i, p)
    if any(m > 1 for m in out.values()):
        raise CodeError("expansion produced repeated elements")
    return frozenset(out)


def downward_closure(code: Iterable[Shrubbery]) -> frozenset:
    nodes = set()
    for c in code:
        for prefix in itertools.product(*[range(len(w) + 1) for w in c.words]):
            nodes.add(Shrubbery(c.root, tuple(w[:m] for w, m in zip(c.words, prefix))))
    return frozenset(nodes)


def leaves(nodes: Iterable[Shrubbery]) -> frozenset:
    nodes = list(nodes)
    return frozenset(u for u in nodes if not any(u != v and leq(u, v) for v in nodes))


def pst(code: Iterable[Shrubbery], p: Params) -> frozenset:
    """The pseudotree whose leaves are ``code``."""
    return downward_closure(require_complete(code, p))


def expand_to_flat(code: Iterable[Shrubbery], N: int, p: Params) -> dict:
    code = require_complete(code, p)
    if N < code_depth(code):
        raise CodeError(f"N={N} is below the code depth {code_depth(code)}")
    out = {c: [] for c in code}
    for cell in flat_shrubberies(N, p):
        owner = next(c for c in code if leq(c, cell))
        out[owner].append(cell)
    return out


def enumerate_complete_codes(max_depth: int, p: Params) -> list:
    """All complete prefix codes of depth <= ``max_depth``, by recursive splitting.

    Codes are generated by recursive splitting of blocks, which reaches every
    complete code when n <= 2.
    """
    if max_depth > 3 or p.k ** (p.n * max_depth) * p.r > ENUMERATION_LIMIT:
        raise CodeError("enumeration size guard exceeded")

    @lru_cache(maxsize=None)
    def local(lengths: tuple) -> frozenset:
        # codes of the cone of a block, as sets of relative shrubs
        base = tuple(() for _ in lengths)
        found = {frozenset([base])}
        for i, used in enumerate(lengths):
            if used >= max_depth:
                continue
            sub = local(lengths[:i] + (used + 1,) + lengths[i + 1:])
            for combo in itertools.product(sub, repeat=p.k):
                code = set()
                for digit, piece in enumerate(combo):
                    for shrub in piece:
                        words = list(shrub)
                        words[i] = (digit,) + words[i]
                        code.add(tuple(words))
                found.add(frozenset(code))
        return frozenset(found)

    per_root = sorted(local((0,) * p.n), key=lambda c: sorted(c))
    out = []
    for combo in itertools.product(per_root, repeat=p.r):
        out.append(frozenset(Shrubbery(root, s) for root, piece in enumerate(combo) for s in piece))
    return out


def collapse_siblings(pieces: Iterable[Shrubbery], p: Params) -> frozenset:
    """Greedily merge complete sibling families; deterministic order."""
    pieces = set(pieces)
    changed = True
    while changed:
        changed = False
        for c in sorted(pieces):
            for i in range(p.n):
                if not c.words[i]:
                    continue
                parent = c.parent(i)
                family = parent.children(i, p.k)
                if all(f in pieces for f in family):
                    pieces.difference_update(family)
                    pieces.add(parent)
                    changed = True
                    break
            if changed:
                break
    return frozenset(pieces)


def complement(prefix_code: Iterable[Shrubbery], p: Params) -> frozenset:
    """A finite prefix code covering exactly the points outside the given cones."""
    given = frozenset(prefix_code)
    if not is_prefix_code(given):
        raise CodeError("not a prefix code")
    pieces = set()

    def descend(c: Shrubbery) -> bool:
        if c in given:
            return True
        near = [w for w in given if joinable(w, c)]
        if not near:
            pieces.add(c)
            return True
        if any(leq(w, c) for w in near):
            return False
        split = [i for i in range(p.n) if all(len(w.words[i]) > len(c.words[i]) for w in near)]
        if not split:
            return False
        blocks = [c]
        for i in split:
            blocks = [b.child(i, l) for b in blocks for l in range(p.k)]
        return all(descend(b) for b in blocks)

    if all(descend(root_node(root, p.n)) for root in range(p.r)):
        return frozenset(pieces)
    # fall back to flat cells outside every cone, merged where possible
    d = code_depth(given)
    cells = [c for c in flat_shrubberies(d, p) if not any(leq(w, c) for w in given)]
    return collapse_siblings(cells, p)
