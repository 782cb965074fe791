"""Random instances for property tests and experiments.  Every function takes an
explicit ``random.Random`` so runs are reproducible."""
from __future__ import annotations

import random
from typing import List

from .endo import Endo
from .rel import RelElement
from .shrubbery import Params, Shrubbery, root_node
from .terms import Alpha, Gen, Lam, Term
from .tot import TotElement, reduce


def random_code(rng: random.Random, p: Params, max_depth: int = 2, split: float = 0.5) -> List[Shrubbery]:
    """A complete prefix code grown by random splits, word lengths capped at ``max_depth``."""
    out = []
    work = [root_node(i, p.n) for i in range(p.r)]
    while work:
        c = work.pop()
        dims = [i for i, w in enumerate(c.words) if len(w) < max_depth]
        if dims and rng.random() < split:
            work.extend(c.children(rng.choice(dims), p.k))
        else:
            out.append(c)
    return sorted(out)


def random_shrubbery(rng: random.Random, p: Params, max_len: int = 2) -> Shrubbery:
    words = tuple(tuple(rng.randrange(p.k) for _ in range(rng.randint(0, max_len))) for _ in range(p.n))
    return Shrubbery(rng.randrange(p.r), words)


def random_tot(rng: random.Random, p: Params, max_depth: int = 2, split: float = 0.5) -> TotElement:
    domain = random_code(rng, p, max_depth, split)
    return TotElement(p, {d: random_shrubbery(rng, p, max_depth) for d in domain}, validate=False)


def _grow(rng: random.Random, code: List[Shrubbery], size: int, p: Params) -> List[Shrubbery]:
    code = list(code)
    while len(code) < size:
        c = code.pop(rng.randrange(len(code)))
        code.extend(c.children(rng.randrange(p.n), p.k))
    return code


def random_invertible(rng: random.Random, p: Params, max_depth: int = 2) -> TotElement:
    a, b = random_code(rng, p, max_depth), random_code(rng, p, max_depth)
    size = max(len(a), len(b))
    a, b = _grow(rng, a, size, p), _grow(rng, b, size, p)
    rng.shuffle(b)
    return TotElement(p, dict(zip(a, b)), validate=False)


def random_rel(rng: random.Random, p: Params, max_depth: int = 2) -> RelElement:
    return RelElement(reduce(random_tot(rng, p, max_depth)))


def re_presented(rng: random.Random, f: TotElement, steps: int = 3) -> TotElement:
    """The same map after random elementary expansions of its leaves."""
    for _ in range(steps):
        leaf = rng.choice(sorted(f.h))
        f = f.expand(leaf, rng.randrange(f.params.n))
    return f


def random_term(rng: random.Random, p: Params, lambdas: int = 3, alphas: float = 0.4) -> Term:
    """A random term with exactly ``lambdas`` lambda nodes."""
    if lambdas == 0:
        t: Term = Gen(rng.randrange(p.r))
    else:
        budget = lambdas - 1
        cuts = sorted(rng.randint(0, budget) for _ in range(p.k - 1))
        shares = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        t = Lam(rng.randrange(p.n), tuple(random_term(rng, p, s, alphas) for s in shares))
    while rng.random() < alphas:
        t = Alpha(rng.randrange(p.n), rng.randrange(p.k), t)
    return t


def random_endo(rng: random.Random, p: Params, max_lambdas: int = 4) -> Endo:
    return Endo(p, tuple(random_term(rng, p, rng.randint(0, max_lambdas)) for _ in range(p.r)))


def random_root_system(rng: random.Random, p: Params, max_depth: int = 2) -> tuple:
    """r pairwise disjoint cones, in random order."""
    while True:
        code = random_code(rng, p, max_depth, split=0.7)
        if len(code) >= p.r:
            chosen = rng.sample(code, p.r)
            return tuple(chosen)


# --- instances of the defining identities ----------------------------------------

def _other_dim(rng: random.Random, p: Params, i: int) -> int:
    return rng.choice([d for d in range(p.n) if d != i])


def _def_i(rng, p, x, xs, i):
    return Lam(i, tuple(Alpha(i, j, x) for j in range(p.k))), x


def _def_ii(rng, p, x, xs, i):
    j = rng.randrange(p.k)
    return Alpha(i, j, Lam(i, xs)), xs[j]


def _def_iii(rng, p, x, xs, i):
    i2, j, l = _other_dim(rng, p, i), rng.randrange(p.k), rng.randrange(p.k)
    return Alpha(i2, l, Alpha(i, j, x)), Alpha(i, j, Alpha(i2, l, x))


def _prop_i(rng, p, x, xs, i):
    i2, l, m = _other_dim(rng, p, i), rng.randrange(p.k), rng.randrange(p.k)
    return Alpha(i, m, Alpha(i2, l, Lam(i, xs))), Alpha(i2, l, xs[m])


def _prop_ii(rng, p, x, xs, i):
    i2, l = _other_dim(rng, p, i), rng.randrange(p.k)
    return Lam(i, tuple(Alpha(i2, l, y) for y in xs)), Alpha(i2, l, Lam(i, xs))


def _prop_iii(rng, p, x, xs, i):
    i2 = _other_dim(rng, p, i)
    grid = [[random_term(rng, p, rng.randint(0, 1)) for _ in range(p.k)] for _ in range(p.k)]
    rows = Lam(i, tuple(Lam(i2, tuple(grid[a][b] for b in range(p.k))) for a in range(p.k)))
    cols = Lam(i2, tuple(Lam(i, tuple(grid[a][b] for a in range(p.k))) for b in range(p.k)))
    return rows, cols


# name -> (builder, needs two distinct dimensions)
IDENTITIES = {
    "lambda of projections": (_def_i, False),
    "projection of lambda": (_def_ii, False),
    "projections commute": (_def_iii, True),
    "projection through lambda": (_prop_i, True),
    "lambda absorbs projection": (_prop_ii, True),
    "lambda interchange": (_prop_iii, True),
}


def identity_instance(name: str, rng: random.Random, p: Params, max_lambdas: int = 2):
    """Both sides of one random substitution instance of the named identity."""
    build, two_dims = IDENTITIES[name]
    if two_dims and p.n < 2:
        raise ValueError(f"{name!r} needs n >= 2")
    x = random_term(rng, p, rng.randint(0, max_lambdas))
    xs = tuple(random_term(rng, p, rng.randint(0, max_lambdas)) for _ in range(p.k))
    return build(rng, p, x, xs, rng.randrange(p.n))
