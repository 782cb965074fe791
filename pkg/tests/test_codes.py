import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from totmonoid import codes
from totmonoid.codes import CodeError
from totmonoid.sampling import random_code
from totmonoid.shrubbery import Params, all_shrubberies, joinable, shrubbery

from conftest import SMALL_PARAMS, rng_for, seeds

P121 = Params(1, 2, 1)
P221 = Params(2, 2, 1)
MIXED = {shrubbery(0, "0", ""), shrubbery(0, "1", "0"), shrubbery(0, "1", "1")}


def brute_force_codes(max_depth, p):
    """Every subset of the nodes of depth <= max_depth that is a complete code."""
    nodes = all_shrubberies(max_depth, p)
    found = []
    for bits in itertools.product([False, True], repeat=len(nodes)):
        chosen = [x for x, b in zip(nodes, bits) if b]
        if chosen and codes.is_complete(chosen, p):
            found.append(frozenset(chosen))
    return found


@pytest.mark.parametrize("p, code, expected", [
    (P121, {shrubbery(0, "0"), shrubbery(0, "1")}, True),
    (P221, MIXED, True),
    (P121, {shrubbery(0, "0")}, False),
    (P121, {shrubbery(0, "0"), shrubbery(0, "1"), shrubbery(0, "10")}, False),
])
def test_is_complete_examples(p, code, expected):
    assert codes.is_complete(code, p) is expected


def test_elementary_expansion_examples():
    root = Counter({shrubbery(0, "", ""): 1})
    once = codes.elementary_expansion(root, shrubbery(0, "", ""), 0, P221)
    assert set(once) == {shrubbery(0, "0", ""), shrubbery(0, "1", "")}
    twice = codes.elementary_expansion(once, shrubbery(0, "1", ""), 1, P221)
    assert set(twice) == MIXED
    with pytest.raises(CodeError):
        codes.elementary_expansion(once, shrubbery(0, "", "1"), 0, P221)
    with pytest.raises(CodeError):
        codes.elementary_expansion(once, shrubbery(0, "1", ""), 2, P221)


def test_multiset_duplicates_are_not_codes():
    m = Counter({shrubbery(0, "0"): 2})
    out = codes.elementary_expansion(m, shrubbery(0, "0"), 0, P121)
    assert out[shrubbery(0, "0")] == 1
    assert not codes.is_complete(list(out.elements()), P121)


def test_pseudotree_examples():
    assert codes.pst({shrubbery(0, "")}, P121) == {shrubbery(0, "")}
    t = codes.pst({shrubbery(0, "0"), shrubbery(0, "10"), shrubbery(0, "11")}, P121)
    assert {shrubbery(0, ""), shrubbery(0, "1")} <= t
    t2 = codes.pst(MIXED, P221)
    assert {shrubbery(0, "", ""), shrubbery(0, "1", "")} <= t2
    assert codes.leaves(t2) == MIXED


def test_expand_to_flat_examples():
    out = codes.expand_to_flat({shrubbery(0, "")}, 1, P121)
    assert sorted(out[shrubbery(0, "")]) == [shrubbery(0, "0"), shrubbery(0, "1")]
    out = codes.expand_to_flat(MIXED, 2, P221)
    assert sorted(len(v) for v in out.values()) == [4, 4, 8]
    with pytest.raises(CodeError):
        codes.expand_to_flat(MIXED, 0, P221)


def recurrence(d, k):
    t = 1
    for _ in range(d):
        t = 1 + t ** k
    return t


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_enumeration_matches_recurrence(d):
    assert len(codes.enumerate_complete_codes(d, P121)) == recurrence(d, 2) == [1, 2, 5, 26][d]


def test_enumeration_k3():
    assert len(codes.enumerate_complete_codes(2, Params(1, 3, 1))) == recurrence(2, 3) == 9


@pytest.mark.parametrize("d, p", [(2, P121), (3, P121), (1, P221), (1, Params(1, 3, 2))])
def test_enumeration_agrees_with_subset_search(d, p):
    fast = set(codes.enumerate_complete_codes(d, p))
    assert len(fast) == len(codes.enumerate_complete_codes(d, p))
    assert fast == set(brute_force_codes(d, p))


def test_enumeration_guard():
    with pytest.raises(CodeError):
        codes.enumerate_complete_codes(4, P121)


def test_leaf_counts_are_congruent_to_r():
    p = Params(1, 3, 2)
    for code in codes.enumerate_complete_codes(2, p):
        assert len(code) % (p.k - 1) == p.r % (p.k - 1)


@given(seeds, st.sampled_from(SMALL_PARAMS))
def test_expansion_preserves_completeness(seed, p):
    rng = rng_for(seed)
    code = random_code(rng, p, 2)
    assert codes.is_complete(code, p)
    a = rng.choice(code)
    expanded = codes.expand_code(code, a, rng.randrange(p.n), p)
    assert codes.is_complete(expanded, p)
    assert codes.pst(codes.leaves(codes.pst(code, p)), p) == codes.pst(code, p)


@given(seeds, st.sampled_from(SMALL_PARAMS))
def test_dropping_an_element_breaks_completeness(seed, p):
    rng = rng_for(seed)
    code = random_code(rng, p, 2)
    if len(code) > 1:
        code.remove(rng.choice(code))
        assert not codes.is_complete(code, p)


@given(seeds, st.sampled_from(SMALL_PARAMS))
def test_complement_fills_the_gap(seed, p):
    rng = rng_for(seed)
    code = random_code(rng, p, 2, split=0.7)
    part = rng.sample(code, rng.randint(0, len(code)))
    rest = codes.complement(part, p)
    assert codes.is_complete(list(part) + list(rest), p)
    assert not any(joinable(a, b) for a in part for b in rest)
