import pytest
from hypothesis import given, strategies as st

from totmonoid.endo import phi, psi
from totmonoid.sampling import random_invertible, random_root_system, random_tot, re_presented
from totmonoid.shrubbery import Params, concat, flat_shrubberies, shrubbery
from totmonoid.tot import (
    InsufficientDepth, TotElement, TotError, compose, deferment, depth_of, eval_prefix,
    inverse, is_invertible, reduce, root_system_depth, tot_eq, tot_eq_flat, trivial_root_system,
)

from conftest import SMALL_PARAMS, rng_for, seeds

FAST_PARAMS = SMALL_PARAMS[:4]


def test_eval_prefix_examples(bakers, p221):
    f, g = bakers["f"].carrier, bakers["g"].carrier
    w = shrubbery(0, "01", "1")
    assert eval_prefix(TotElement.identity(p221), w) == w
    assert eval_prefix(g, w) == shrubbery(0, "001", "1")
    with pytest.raises(InsufficientDepth):
        eval_prefix(f, shrubbery(0, "", ""))


def test_bakers_composite(bakers, p221):
    f, g = bakers["f"].carrier, bakers["g"].carrier
    gf = compose(g, f)
    assert gf.h == {shrubbery(0, "", "0"): shrubbery(0, "00", ""),
                    shrubbery(0, "", "1"): shrubbery(0, "10", "")}
    assert depth_of(f) == 1 and depth_of(gf) == 2
    assert depth_of(TotElement.identity(p221)) == 0


def test_reduce_examples(bakers):
    p = Params(1, 2, 1)
    f = TotElement(p, {shrubbery(0, "0"): shrubbery(0, "10"), shrubbery(0, "1"): shrubbery(0, "11")})
    assert reduce(f).h == {shrubbery(0, ""): shrubbery(0, "1")}
    assert reduce(bakers["f"].carrier) == bakers["f"].carrier


def test_equality_and_inverse_examples(bakers, p221):
    f, g = bakers["f"].carrier, bakers["g"].carrier
    assert tot_eq(f, f) and not tot_eq(f, g)
    assert is_invertible(TotElement.identity(p221))
    assert is_invertible(f) and not is_invertible(g)
    assert set(inverse(f).domain) == set(f.h.values())
    with pytest.raises(TotError):
        inverse(g)


def test_invalid_domain_rejected():
    p = Params(1, 2, 1)
    with pytest.raises(ValueError):
        TotElement(p, {shrubbery(0, "0"): shrubbery(0, "")})


def test_deferment_examples(bakers, p221):
    f = bakers["f"].carrier
    assert deferment(f, trivial_root_system(p221)) == f
    fw = deferment(f, [shrubbery(0, "0", "01")])
    assert depth_of(fw) == 3
    assert fw.h[shrubbery(0, "1", "")] == shrubbery(0, "1", "")


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_identity_and_associativity(seed, p):
    rng = rng_for(seed)
    f, g, h = (random_tot(rng, p) for _ in range(3))
    e = TotElement.identity(p)
    assert compose(f, e) == reduce(f) == compose(e, f)
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_composition_matches_two_step_evaluation(seed, p):
    rng = rng_for(seed)
    f, g = random_tot(rng, p), random_tot(rng, p)
    fg = compose(f, g, canonical=False)
    N = 4
    for w in flat_shrubberies(N, p)[:64]:
        try:
            direct = eval_prefix(fg, w)
        except InsufficientDepth:
            continue
        assert direct == eval_prefix(g, eval_prefix(f, w))


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_composition_through_phi_psi(seed, p):
    rng = rng_for(seed)
    f, g = random_tot(rng, p), random_tot(rng, p)
    assert tot_eq(compose(f, psi(phi(g))), compose(f, g))


def _collapse_randomly(rng, f):
    """Collapse sibling families in a random order until none remains."""
    p = f.params
    h = dict(f.h)
    while True:
        options = []
        for d in h:
            for i in range(p.n):
                if not d.words[i]:
                    continue
                parent = d.parent(i)
                kids = parent.children(i, p.k)
                if not all(c in h for c in kids):
                    continue
                imgs = [h[c] for c in kids]
                base = imgs[0].parent(i) if imgs[0].words[i] else None
                if base is not None and all(imgs[l] == base.child(i, l) for l in range(p.k)):
                    options.append((parent, i, kids, base))
        if not options:
            return TotElement(p, h, validate=False)
        parent, i, kids, base = rng.choice(sorted(options, key=str))
        for c in kids:
            del h[c]
        h[parent] = base


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_reduce_is_a_canonical_form(seed, p):
    rng = rng_for(seed)
    f = random_tot(rng, p)
    g = re_presented(rng, f, steps=4)
    assert reduce(g) == reduce(f)
    assert tot_eq_flat(f, g)
    assert reduce(_collapse_randomly(rng, g)) == reduce(f)
    assert reduce(reduce(f)) == reduce(f)


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_equality_methods_agree(seed, p):
    rng = rng_for(seed)
    f, g = random_tot(rng, p, split=0.3), random_tot(rng, p, split=0.3)
    assert tot_eq(f, g) == tot_eq_flat(f, g)


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_inverse_laws(seed, p):
    f = random_invertible(rng_for(seed), p)
    assert is_invertible(f)
    assert tot_eq(compose(inverse(f), f), TotElement.identity(p))
    assert tot_eq(compose(f, inverse(f)), TotElement.identity(p))


@given(seeds, st.sampled_from(FAST_PARAMS))
def test_deferment_laws(seed, p):
    rng = rng_for(seed)
    f, g = random_tot(rng, p, split=0.4), random_tot(rng, p, split=0.4)
    w = random_root_system(rng, p)
    fw = deferment(f, w)
    assert depth_of(fw) <= depth_of(f) + root_system_depth(w)
    assert tot_eq(deferment(compose(f, g), w), compose(fw, deferment(g, w)))
    assert (fw == deferment(g, w)) == tot_eq(f, g)
    for d, v in reduce(f).h.items():
        assert eval_prefix(fw, concat(w[d.root], d.words)) == concat(w[v.root], v.words)
