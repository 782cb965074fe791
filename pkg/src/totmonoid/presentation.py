"""Words over a finite generating alphabet of nRel_{k,r} and the relation families R_0.

The alphabet is a finite sub-alphabet of the depth-at-most-3 elements: enough
letters to instantiate each relation family, never the full set.  ``SDef`` is
letterwise: each letter may be registered with a letter holding its
deferment to ``r_1``.  ``Def_w`` for a root system ``w`` not of the form
``r_j`` is ``(p^w)^{-1} (x)SDef p^w``; ``Def_{r_m}`` is ``SDef`` applied m times.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .rel import (
    RelElement, SearchBudgetExceeded, depth_rel, gen_pi_w, gen_U, gen_U_dim0,
    is_standard_root_system, rel_deferment, rel_identity, rel_inverse, rel_mul,
    single_dim_shrubberies, transport,
)
from .shrubbery import Params, Shrubbery, flat_shrubs, root_node
from .tot import standard_root_system

log = logging.getLogger(__name__)

Word = Tuple[str, ...]
MAX_LETTER_DEPTH = 3


class AlphabetError(ValueError):
    pass


class MissingDeferment(AlphabetError):
    pass


class GenAlphabet:
    """Named letters with registered inverses and ``SDef`` images."""

    def __init__(self, params: Params):
        self.params = params
        self.letters: Dict[str, RelElement] = {}
        self.inverses: Dict[str, str] = {}
        self.sdef_of: Dict[str, str] = {}

    def add(self, name: str, element: RelElement) -> str:
        if element.params != self.params:
            raise AlphabetError(f"letter {name} has parameters {element.params}")
        if depth_rel(element) > MAX_LETTER_DEPTH:
            raise AlphabetError(f"letter {name} has depth {depth_rel(element)} > {MAX_LETTER_DEPTH}")
        if name in self.letters and self.letters[name] != element:
            raise AlphabetError(f"letter {name} is already registered with another element")
        self.letters[name] = element
        return name

    def add_inverse_pair(self, a: str, b: str):
        e = rel_identity(self.params)
        if rel_mul(self[a], self[b]) != e or rel_mul(self[b], self[a]) != e:
            raise AlphabetError(f"{a} and {b} are not inverse")
        self.inverses[a] = b
        self.inverses[b] = a

    def add_invertible(self, name: str, element: RelElement) -> str:
        """Register an invertible letter together with ``name^-1``."""
        self.add(name, element)
        inv = name + "^-1"
        self.add(inv, rel_inverse(element))
        self.add_inverse_pair(name, inv)
        return name

    def set_sdef(self, name: str, deferred: str):
        if rel_deferment(self[name], standard_root_system(1, self.params)) != self[deferred]:
            raise AlphabetError(f"{deferred} is not the deferment of {name} to r_1")
        self.sdef_of[name] = deferred

    def __getitem__(self, name: str) -> RelElement:
        try:
            return self.letters[name]
        except KeyError:
            raise AlphabetError(f"unknown letter {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self.letters

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def name_of(self, element: RelElement) -> Optional[str]:
        return next((n for n, e in self.letters.items() if e == element), None)


def word(text: str) -> Word:
    """Parse a space-separated word; ``ε`` or an empty string is the empty word."""
    parts = text.split()
    return () if parts in ([], ["ε"], ["eps"]) else tuple(parts)


def word_text(w: Sequence[str]) -> str:
    return " ".join(w) if w else "ε"


@dataclass(frozen=True)
class Relation:
    left: Word
    right: Word
    family: int

    def __str__(self):
        return f"family {self.family}: {word_text(self.left)} =? {word_text(self.right)}"


def Phi(w: Sequence[str], A: GenAlphabet) -> RelElement:
    out = rel_identity(A.params)
    for name in w:
        out = rel_mul(out, A[name])
    return out


def sdef(w: Sequence[str], A: GenAlphabet) -> Word:
    out = []
    for name in w:
        if name not in A.sdef_of:
            A[name]
            raise MissingDeferment(f"no deferment letter registered for {name}")
        out.append(A.sdef_of[name])
    return tuple(out)


def inverse_word(w: Sequence[str], A: GenAlphabet) -> Word:
    out = []
    for name in reversed(w):
        if name not in A.inverses:
            raise AlphabetError(f"letter {name} has no registered inverse")
        out.append(A.inverses[name])
    return tuple(out)


def root_system_text(w: Sequence[Shrubbery]) -> str:
    return "[" + "; ".join(map(str, w)) + "]"


def transport_name(w: Sequence[Shrubbery]) -> str:
    return "p[" + ";".join(map(str, w)) + "]"


def def_w(x: Sequence[str], w: Sequence[Shrubbery], A: GenAlphabet) -> Word:
    p = A.params
    w = tuple(w)
    for j in range(1, w[0].depth + 2):
        if w == standard_root_system(j, p):
            out = tuple(x)
            for _ in range(j):
                out = sdef(out, A)
            return out
    if is_standard_root_system(w, p):
        return tuple(x)
    name = transport_name(w)
    if name not in A:
        raise MissingDeferment(f"no transport letter {name} registered")
    return inverse_word((name,), A) + sdef(x, A) + (name,)


# --- the standard alphabet ---------------------------------------------------

def pi_name(s: Shrubbery) -> str:
    return f"pi{s}"


def single_dim_set(p: Params) -> List[Shrubbery]:
    """F: depth-1 shrubberies with exactly one nonempty word."""
    return single_dim_shrubberies(p)


def B_set(p: Params) -> List[Tuple[Shrubbery, ...]]:
    """Root systems with the same flat depth-1 shrub at every root, lexicographic."""
    return [tuple(Shrubbery(l, s) for l in range(p.r)) for s in flat_shrubs(1, p)]


def pis_word(s: Shrubbery, p: Params) -> Word:
    """Product of pi letters equal to the element inserting the shrub of ``s`` at its root."""
    out = []
    for d, w in enumerate(s.words):
        for digit in w:
            out.append(pi_name(root_node(s.root, p.n).child(d, digit)))
    return tuple(out)


def p_element_word(images: Sequence[Shrubbery], p: Params) -> Word:
    """A pi word for the element of P sending root l to ``images[l]``."""
    out = []
    for s in images:
        out.extend(pis_word(s, p))
    return tuple(out)


def _register_deferments(A: GenAlphabet, names: Sequence[str], prefix: str):
    r1 = standard_root_system(1, A.params)
    for name in names:
        deferred = rel_deferment(A[name], r1)
        if depth_rel(deferred) > MAX_LETTER_DEPTH:
            log.debug("deferment of %s has depth %d; not registered", name, depth_rel(deferred))
            continue
        dname = f"{prefix}({name})"
        A.add(dname, deferred)
        A.sdef_of[name] = dname


def standard_alphabet(p: Params) -> GenAlphabet:
    """Letters needed by every relation family.

    Base letters: ``e``, ``U``, ``U0``, ``pi(s)`` for every s in F, the
    transport letters ``p[...]`` for each element of B and for ``r_2`` (with
    inverses).  Each base letter gets a deferment letter ``D(name)``; each
    deferment letter of depth at most 3 after a second deferment gets
    ``D(D(name))``.
    """
    A = GenAlphabet(p)
    A.add("e", rel_identity(p))
    A.add("U", gen_U(p))
    A.add("U0", gen_U_dim0(p))
    for s in single_dim_set(p):
        A.add(pi_name(s), gen_pi_w(s, p))
    r1 = standard_root_system(1, p)
    systems = [s for s in B_set(p) if not is_standard_root_system(s, p)]
    systems.append(standard_root_system(2, p))
    for w in systems:
        A.add_invertible(transport_name(w), RelElement(transport(w, r1, p)))
    base = list(A)
    _register_deferments(A, base, "D")
    _register_deferments(A, [A.sdef_of[n] for n in base if n in A.sdef_of], "D")
    for a, b in list(A.inverses.items()):
        da, db = A.sdef_of.get(a), A.sdef_of.get(b)
        if da and db:
            A.add_inverse_pair(da, db)
    return A


def base_letters(A: GenAlphabet) -> List[str]:
    """Letters that are not themselves deferment letters."""
    return [n for n in A if not n.startswith("D(")]


# --- relation families ---------------------------------------------------------

@dataclass
class Budget:
    max_pi_word: int = 2
    family4_candidates: int = 20000
    family5_pairs: int = 60
    seed: int = 0


@dataclass
class R0Build:
    relations: List[Relation] = field(default_factory=list)
    truncated: List[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def family(self, n: int) -> List[Relation]:
        return [r for r in self.relations if r.family == n]


def _in_P(a: RelElement, p: Params) -> Optional[Tuple[Shrubbery, ...]]:
    """The images of the roots when ``a`` lies in P, otherwise None."""
    h = a.carrier.h
    images = []
    for l in range(p.r):
        v = h.get(root_node(l, p.n))
        if v is None or v.root != l:
            return None
        images.append(v)
    return tuple(images) if len(h) == p.r else None


def _family6_right(x: Word, A: GenAlphabet) -> Word:
    p = A.params
    out: Word = ("U",)
    for s in B_set(p):
        out += def_w(tuple(x) + p_element_word(s, p), s, A)
    return out


def _family7_right(x: Word, A: GenAlphabet) -> Word:
    out: Word = ("U",)
    for s in B_set(A.params):
        out += def_w(x, s, A)
    return out


def build_R0(p: Params, A: GenAlphabet, budget: Budget | None = None) -> R0Build:
    budget = budget or Budget()
    if A.params != p:
        raise AlphabetError("alphabet parameters differ")
    out = R0Build()
    rels = out.relations
    base = base_letters(A)
    F = single_dim_set(p)
    pis = [pi_name(s) for s in F]

    # 1: the identity letter
    for name in A:
        if A[name] == rel_identity(p):
            rels.append(Relation((name,), (), 1))

    # 2: inverse pairs
    for a, b in sorted(A.inverses.items()):
        rels.append(Relation((a, b), (), 2))

    # 3: commuting pi letters
    for v, w in itertools.combinations(pis, 2):
        if Phi((v, w), A) == Phi((w, v), A):
            rels.append(Relation((v, w), (w, v), 3))

    # 4: x times a short pi word landing in P
    limit = 6 * p.r
    examined = 0
    for x in A:
        for j in range(budget.max_pi_word + 1):
            for tail in itertools.product(pis, repeat=j):
                examined += 1
                if examined > budget.family4_candidates:
                    out.truncated.append(f"family 4: stopped after {budget.family4_candidates} candidates")
                    break
                left = (x,) + tail
                images = _in_P(Phi(left, A), p)
                if images is None:
                    continue
                right = p_element_word(images, p)
                if len(right) <= limit:
                    rels.append(Relation(left, right, 4))
            else:
                continue
            break
        if out.truncated:
            break

    B = B_set(p)
    usable = [x for x in base if x in A.sdef_of]
    skipped = [x for x in base if x not in A.sdef_of]
    if skipped:
        out.truncated.append("families 5-7 skip letters without deferments: " + ", ".join(skipped))

    # 5: deferments to disjoint cones commute
    items: List[Word] = [(x,) for x in usable]
    items += [(x,) + p_element_word(s, p) for x in usable for s in B]
    pairs = [(x, y, v, w) for x in items for y in items for v in B for w in B if v != w]
    rng = random.Random(budget.seed)
    if len(pairs) > budget.family5_pairs:
        out.truncated.append(f"family 5: sampled {budget.family5_pairs} of {len(pairs)} instances")
        pairs = rng.sample(pairs, budget.family5_pairs)
    for x, y, v, w in pairs:
        dx, dy = def_w(x, v, A), def_w(y, w, A)
        rels.append(Relation(dx + dy, dy + dx, 5))

    # 6 and 7
    for x in usable:
        rels.append(Relation((x,), _family6_right((x,), A), 6))
    for x in usable:
        rels.append(Relation((x, "U"), _family7_right((x,), A), 7))

    # 8: second deferments through the r_2 transport
    r2 = transport_name(standard_root_system(2, p))
    if r2 in A:
        for x in usable:
            dx = A.sdef_of[x]
            if dx in A.sdef_of:
                rels.append(Relation((A.sdef_of[dx],), inverse_word((r2,), A) + (dx, r2), 8))
    return out


@dataclass(frozen=True)
class RelationResult:
    relation: Relation
    ok: bool
    left_value: RelElement
    right_value: RelElement

    def line(self) -> str:
        return f"{self.relation} : {'PASS' if self.ok else 'FAIL'}"


def verify_relations(rels: Sequence[Relation], A: GenAlphabet) -> List[RelationResult]:
    out = []
    for rel in rels:
        a, b = Phi(rel.left, A), Phi(rel.right, A)
        out.append(RelationResult(rel, a == b, a, b))
    return out


def mutate(rel: Relation, A: GenAlphabet, rng: random.Random) -> Relation:
    """The relation with one letter replaced by a letter of ``A`` with a different image.

    Letters with the same image (``e`` and ``D(e)``, say) are synonyms; trading
    one for another would not change the relation at all.
    """
    sides = [rel.left, rel.right]
    side = rng.choice([i for i in (0, 1) if sides[i]])
    word_ = list(sides[side])
    pos = rng.randrange(len(word_))
    old = A[word_[pos]]
    word_[pos] = rng.choice([n for n in sorted(A) if A[n] != old])
    sides[side] = tuple(word_)
    return Relation(sides[0], sides[1], rel.family)


def failures_report(results: Sequence[RelationResult]) -> str:
    lines = []
    for res in results:
        if not res.ok:
            lines.append(res.line())
            lines.append(f"  left  {res.left_value}")
            lines.append(f"  right {res.right_value}")
    return "\n".join(lines)


# --- P_d and the claims ---------------------------------------------------------

P_LIMIT = 4096


def P_d(d: int, p: Params, A: GenAlphabet | None = None) -> List[RelElement]:
    """Elements of P whose root images are r-tuples of flat depth-d shrubs."""
    count = p.k ** (p.n * d * p.r)
    if count > P_LIMIT:
        raise SearchBudgetExceeded(f"|P_{d}| = {count} exceeds {P_LIMIT}")
    A = A or _pi_alphabet(p)
    out = []
    for shrubs in itertools.product(flat_shrubs(d, p), repeat=p.r):
        images = tuple(Shrubbery(l, s) for l, s in enumerate(shrubs))
        out.append(Phi(p_element_word(images, p), A))
    return out


def _pi_alphabet(p: Params) -> GenAlphabet:
    A = GenAlphabet(p)
    for s in single_dim_set(p):
        A.add(pi_name(s), gen_pi_w(s, p))
    return A


def claim2_check(x: Sequence[str], A: GenAlphabet) -> bool:
    """Phi-level form of ``x = U prod_{s in B} (x pi^{(0)s} ... pi^{(r-1)s}) Def_s``."""
    return Phi(x, A) == Phi(_family6_right(tuple(x), A), A)


def claim3_check(g: RelElement, h: RelElement, d: int) -> bool:
    """Whether "g pi = h pi for every pi in P_d" holds exactly when g = h."""
    same_everywhere = all(rel_mul(g, pi) == rel_mul(h, pi) for pi in P_d(d, g.params))
    return same_everywhere == (g == h)
