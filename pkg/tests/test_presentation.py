import functools
import random

import pytest
from hypothesis import given, settings

from totmonoid.presentation import (
    AlphabetError, B_set, Budget, MissingDeferment, P_d, Phi, Relation, base_letters, build_R0,
    claim2_check, claim3_check, def_w, inverse_word, mutate, sdef, standard_alphabet, verify_relations,
    word, word_text,
)
from totmonoid.rel import (
    SearchBudgetExceeded, depth_rel, rel_deferment, rel_identity, rel_inverse, rel_mul,
)
from totmonoid.sampling import random_rel
from totmonoid.shrubbery import Params
from totmonoid.tot import standard_root_system

from conftest import rng_for, seeds

P121 = Params(1, 2, 1)


cached_alphabet = functools.lru_cache(maxsize=None)(standard_alphabet)


@pytest.fixture(scope="module")
def alphabet():
    return standard_alphabet(P121)


@pytest.fixture(scope="module")
def relations(alphabet):
    return build_R0(P121, alphabet)


def test_alphabet_shape(alphabet):
    assert len(alphabet) == 25
    for name in ("e", "U", "U0", "D(U)", "D(D(U))"):
        assert name in alphabet
    assert all(depth_rel(alphabet[n]) <= 3 for n in alphabet)
    assert len(standard_alphabet(Params(2, 2, 1))) == 43
    assert len(standard_alphabet(Params(1, 2, 2))) == 33


def test_words():
    assert word("ε") == () == word("  ")
    assert word("U pi(0,(0)) e") == ("U", "pi(0,(0))", "e")
    assert word_text(()) == "ε"
    assert str(Relation(("a",), (), 1)) == "family 1: a =? ε"


def test_phi_of_words(alphabet):
    assert Phi((), alphabet) == rel_identity(P121)
    assert Phi(("e",), alphabet) == rel_identity(P121)
    for a, b in alphabet.inverses.items():
        assert Phi((a, b), alphabet) == rel_identity(P121)
        assert inverse_word((a,), alphabet) == (b,)
    with pytest.raises(AlphabetError):
        Phi(("nope",), alphabet)


def test_alphabet_rejects_bad_registrations(alphabet):
    with pytest.raises(AlphabetError):
        alphabet.add("U", alphabet["pi(0,(0))"])
    with pytest.raises(AlphabetError):
        # U pi(0,(0)) is the identity, but only on one side
        alphabet.add_inverse_pair("U", "pi(0,(0))")
    with pytest.raises(AlphabetError):
        alphabet.set_sdef("U", "pi(0,(0))")
    with pytest.raises(AlphabetError):
        alphabet.add("wrong", rel_identity(Params(2, 2, 1)))


@given(seeds)
def test_phi_is_a_homomorphism(seed):
    A = cached_alphabet(P121)
    rng = rng_for(seed)
    names = sorted(A)
    u = tuple(rng.choice(names) for _ in range(rng.randint(0, 4)))
    v = tuple(rng.choice(names) for _ in range(rng.randint(0, 4)))
    assert Phi(u + v, A) == rel_mul(Phi(u, A), Phi(v, A))


@given(seeds)
def test_sdef_follows_deferment(seed):
    A = cached_alphabet(P121)
    rng = rng_for(seed)
    usable = [n for n in A if n in A.sdef_of]
    x = tuple(rng.choice(usable) for _ in range(rng.randint(0, 4)))
    r1 = standard_root_system(1, P121)
    assert Phi(sdef(x, A), A) == rel_deferment(Phi(x, A), r1)
    for w in [r1] + B_set(P121):
        assert Phi(def_w(x, w, A), A) == rel_deferment(Phi(x, A), w)


def test_missing_deferment(alphabet):
    with pytest.raises(MissingDeferment):
        sdef(("D(D(U))",), alphabet)


def test_families_hold(relations, alphabet):
    assert len(relations) == 231
    # two pi letters at n = 1, r = 1 never commute, so family 3 is empty here
    assert {r.family for r in relations} == set(range(1, 9)) - {3}
    assert all(res.ok for res in verify_relations(relations.relations, alphabet))
    assert verify_relations([], alphabet) == []


@pytest.mark.parametrize("p", [Params(1, 2, 2), Params(2, 2, 1)])
def test_families_hold_elsewhere(p):
    A = standard_alphabet(p)
    rels = build_R0(p, A, Budget(family5_pairs=20))
    assert {r.family for r in rels} == set(range(1, 9))
    assert all(res.ok for res in verify_relations(rels.relations, A))


def test_mutated_relations_fail(relations, alphabet):
    rng = random.Random(0)
    mutants = [mutate(r, alphabet, rng) for r in rng.sample(relations.relations, 20)]
    assert all(len(m.left) + len(m.right) > 0 for m in mutants)
    caught = sum(not res.ok for res in verify_relations(mutants, alphabet))
    assert caught >= 18


def test_budget_truncation_is_reported():
    A = standard_alphabet(P121)
    built = build_R0(P121, A, Budget(family4_candidates=10, family5_pairs=5))
    assert any("family 4" in t for t in built.truncated)
    assert any("family 5" in t for t in built.truncated)
    assert len(built.family(5)) == 5


def test_P_d_sizes():
    assert P_d(0, P121) == [rel_identity(P121)]
    assert len(P_d(1, P121)) == 2
    assert len(set(P_d(2, P121))) == 4
    assert len(P_d(1, Params(2, 2, 2))) == 16
    with pytest.raises(SearchBudgetExceeded):
        P_d(4, Params(2, 3, 2))


def test_claim2_for_base_letters(alphabet):
    for x in base_letters(alphabet):
        if x in alphabet.sdef_of:
            assert claim2_check((x,), alphabet)


@settings(max_examples=25)
@given(seeds)
def test_claim3_separates(seed):
    rng = rng_for(seed)
    g = random_rel(rng, P121)
    h = random_rel(rng, P121)
    assert claim3_check(g, h, 2)
    assert claim3_check(g, g, 2)


def test_transport_letters_are_invertible(alphabet):
    for name in alphabet:
        if name.startswith("p["):
            assert rel_mul(alphabet[name], rel_inverse(alphabet[name])) == rel_identity(P121)
