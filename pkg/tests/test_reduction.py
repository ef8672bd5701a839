import itertools
import random

from hypothesis import given, settings, strategies as st

from lamsub.generators import random_term
from lamsub.reduction import (
    BETA,
    Budget,
    ETA,
    contract,
    head_status,
    is_zero_term_bounded,
    joinable,
    normalize,
    redexes,
    reduction_graph,
    step,
)
from lamsub.terms import (
    FLS,
    Free,
    IDENT,
    OMEGA,
    THETA,
    TRU,
    app,
    parse,
)
from lamsub.verdict import PROVED, REFUTED


def test_beta_redex_detection():
    t = app(IDENT, IDENT)
    assert redexes(t) == [((), BETA)]
    assert contract(t, (), BETA) == IDENT


def test_eta_redex():
    t = parse(r"\x.f x")
    assert ((), ETA) in redexes(t)
    assert contract(t, (), ETA) == Free("f")


def test_eta_blocked_when_bound_occurs():
    t = parse(r"\x.x x")
    assert redexes(t, frozenset((ETA,))) == []


def test_normalize_statuses():
    assert normalize(app(IDENT, IDENT)).status == "normal-form"
    assert normalize(OMEGA).status == "cycle-detected"
    grower = parse(r"(\x.x x x)(\x.x x x)")
    assert normalize(grower, Budget(50, 50, 100)).status == "exhausted"


def test_theta_beta_graph_is_three_cycle():
    g = reduction_graph(THETA, frozenset((BETA,)))
    assert g.complete
    assert len(g.nodes) == 3
    assert len(g.edges) == 3
    assert all(rule == BETA for _, _, rule in g.edges)


def test_graph_exports():
    g = reduction_graph(THETA, frozenset((BETA,)))
    assert "digraph" in g.to_dot()
    d = g.to_json()
    assert d["complete"] and len(d["nodes"]) == 3


def test_head_status():
    assert head_status(IDENT) is PROVED
    assert head_status(OMEGA) is REFUTED
    assert head_status(app(THETA, IDENT, IDENT)) is REFUTED  # head cycles


def test_zero_term_classification():
    assert is_zero_term_bounded(OMEGA) is PROVED
    assert is_zero_term_bounded(THETA) is PROVED
    assert is_zero_term_bounded(IDENT) is REFUTED


def test_joinable_basic():
    assert joinable(app(IDENT, TRU), TRU) is PROVED
    assert joinable(TRU, FLS) is REFUTED
    assert joinable(OMEGA, IDENT) is REFUTED


def closed_terms(max_size=12):
    return st.integers(min_value=0, max_value=2**32).map(
        lambda s: random_term(random.Random(s), max_size)
    )


@settings(max_examples=100, deadline=None)
@given(closed_terms())
def test_sampled_church_rosser(t):
    # one-step beta/eta peaks must never be provably un-joinable
    reducts = sorted(step(t), key=str)[:4]
    for a, b in itertools.combinations(reducts, 2):
        assert joinable(a, b, budget=Budget(60, 60, 2000)) is not REFUTED


@settings(max_examples=100, deadline=None)
@given(closed_terms())
def test_normal_forms_have_no_redexes(t):
    r = normalize(t, Budget(100, 100, 2000))
    if r.status == "normal-form":
        assert redexes(r.term) == []
