import pytest
from hypothesis import given, strategies as st

from totmonoid.literals import (
    ParseError, parse_arrow, parse_code, parse_endo, parse_labeled, parse_rel, parse_root_system,
    parse_shrubbery, parse_term, parse_tot, relocate,
)
from totmonoid.rel import RelElement, arrow_pair, render_arrow
from totmonoid.sampling import (
    random_code, random_endo, random_rel, random_root_system, random_shrubbery, random_term,
    random_tot,
)
from totmonoid.shrubbery import Params, shrubbery
from totmonoid.tot import reduce

from conftest import SMALL_PARAMS, rng_for, seeds

params = st.sampled_from(SMALL_PARAMS)


@given(seeds, params)
def test_round_trips(seed, p):
    rng = rng_for(seed)
    s = random_shrubbery(rng, p)
    assert parse_shrubbery(str(s), p) == s
    code = random_code(rng, p)
    assert parse_code("{" + "; ".join(map(str, code)) + "}", p) == frozenset(code)
    f = random_tot(rng, p)
    assert parse_tot(str(f), p) == f
    t = random_term(rng, p)
    assert parse_term(str(t), p) == t
    e = random_endo(rng, p)
    assert parse_endo(str(e), p) == e
    w = random_root_system(rng, p)
    assert parse_root_system("[" + "; ".join(map(str, w)) + "]", p) == w


@given(seeds, st.sampled_from([Params(1, 2, 1), Params(2, 2, 1), Params(1, 3, 2)]))
def test_arrow_round_trip(seed, p):
    a = random_rel(rng_for(seed), p)
    assert parse_arrow(render_arrow(a), p) == a
    assert parse_arrow(render_arrow(a).replace("→", "->"), p) == a
    L1, _ = arrow_pair(a)
    assert parse_labeled(str(L1), p) == L1


def test_literal_forms():
    p = Params(2, 2, 1)
    assert parse_shrubbery(" ( 0 , ( 01 , ε ) ) ", p) == shrubbery(0, "01", "")
    assert parse_tot("{(0,(e,e)) -> (0,(1,e));}", p).h == {shrubbery(0, "", ""): shrubbery(0, "1", "")}
    rel = parse_rel("{(0,(e,0)) -> (0,(0,e)); (0,(e,1)) -> (0,(1,e))}", p)
    assert rel == parse_rel("[0 1]→[0;1]", p)
    assert rel == RelElement(reduce(parse_tot(str(rel.carrier), p)))


@pytest.mark.parametrize("text, parse, line, column, fragment", [
    ("(0,(0,2))", parse_shrubbery, 1, 7, "digit 2"),
    ("(1,(0,0))", parse_shrubbery, 1, 1, "root 1"),
    ("(0,(0))", parse_shrubbery, 1, 1, "n=2"),
    ("(0,(0,0)) x", parse_shrubbery, 1, 11, "trailing"),
    ("{(0,(0,e)) -> (0,(e,e))}", parse_tot, 1, 1, "complete prefix code"),
    ("{(0,(0,e)):1;\n (0,(1,e)) 2}", parse_labeled, 2, 12, "expected ':'"),
    ("l0(g0,g1)", parse_term, 1, 7, "out of range"),
    ("q", parse_term, 1, 1, "expected a term"),
    ("[0 1]->[0;1;2]", parse_arrow, 1, 8, "3x1"),
    ("[0 1]", parse_arrow, 1, 1, "arrow"),
    ("[(0,(0,e)); (0,(00,e))]", parse_root_system, 1, 1, ""),
])
def test_error_positions(text, parse, line, column, fragment):
    p = Params(2, 2, 1)
    with pytest.raises(ParseError) as info:
        parse(text, p)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in info.value.message
    assert str(info.value).startswith(f"line {line}, column {column}: ")


def test_relocate():
    p = Params(1, 2, 1)
    with pytest.raises(ParseError) as info:
        parse_shrubbery("(0,(2))", p)
    moved = relocate(info.value, "ab\ncd (0,(2))", 6)
    assert (moved.line, moved.column) == (2, 8)
