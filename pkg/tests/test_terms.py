import random

import pytest
from hypothesis import given, settings, strategies as st

from lamsub.generators import random_term
from lamsub.terms import (
    App,
    B_TERM,
    C_TERM,
    Free,
    OMEGA,
    ParseError,
    THETA,
    Var,
    app,
    beta_contract,
    free_name_multiset,
    from_json_tree,
    lam,
    parse,
    parse_named,
    pretty,
    substitute,
    theta_n,
    to_json_tree,
    well_scoped,
)


def closed_terms(max_size=12):
    return st.integers(min_value=0, max_value=2**32).map(
        lambda s: random_term(random.Random(s), max_size)
    )


def test_alpha_equality_ignores_hints():
    assert parse(r"\x.x") == parse(r"\y.y")
    assert parse(r"\x.\y.x") != parse(r"\x.\y.y")
    assert hash(parse(r"\x.x")) == hash(parse(r"\y.y"))


def test_theta_is_application_of_components():
    assert THETA == App(B_TERM, C_TERM)
    assert pretty(OMEGA) == "(λx.x x) (λx.x x)"


def test_omega_reduces_to_itself():
    assert beta_contract(OMEGA.fn, OMEGA.arg) == OMEGA


def test_theta_family_distinct():
    members = [theta_n(n) for n in range(6)]
    assert len(set(members)) == 6


def test_parse_errors():
    for bad in ("", "(", r"\.", "λx", ")x"):
        with pytest.raises(ParseError):
            parse(bad)


def test_parse_named_catalog():
    assert parse_named("Theta") == THETA
    assert parse_named("Theta2") == theta_n(2)
    assert parse_named("Omega Omega") == App(OMEGA, OMEGA)


def test_substitute_free_variable():
    t = app(Free("f"), Free("g"))
    assert substitute(t, "f", OMEGA) == app(OMEGA, Free("g"))
    # capture-free: the binder renames nothing since terms are nameless
    u = lam("x", Free("f"))
    assert substitute(u, "f", Var(0)) != u  # index adjusted under the binder


def test_free_name_multiset():
    t = app(Free("f"), Free("f"), Free("g"))
    assert free_name_multiset(t) == {"f": 2, "g": 1}


@settings(max_examples=150, deadline=None)
@given(closed_terms())
def test_parse_pretty_round_trip(t):
    assert parse(pretty(t)) == t


@settings(max_examples=150, deadline=None)
@given(closed_terms())
def test_json_round_trip(t):
    assert from_json_tree(to_json_tree(t)) == t


@settings(max_examples=150, deadline=None)
@given(closed_terms())
def test_generated_terms_are_well_scoped(t):
    assert well_scoped(t)
