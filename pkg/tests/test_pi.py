import pytest
from hypothesis import given, settings, strategies as st

from lamsub.generators import random_traces
from lamsub.pi import (
    FactorizationError,
    PiOracle,
    THETA_GRAPH,
    TraceStep,
    factorize,
    is_theta_reduct,
    lambda_pi_eq,
    mu,
    plotkin_simpson_terms,
    cross_check_pi_axiom,
    validate_trace,
)
from lamsub.reduction import BETA, Budget, ETA, PI, contract, joinable, replace_at
from lamsub.terms import (
    App,
    CURRY_Y,
    FLS,
    Free,
    IDENT,
    OMEGA,
    THETA,
    TRU,
    app,
    lam,
)
from lamsub.verdict import PROVED, REFUTED, UNKNOWN


def test_theta_graph_members():
    assert len(THETA_GRAPH) == 3
    assert all(is_theta_reduct(t) for t in THETA_GRAPH)
    assert THETA in THETA_GRAPH
    assert not is_theta_reduct(OMEGA)


def test_oracle_proves_diagonal():
    o = PiOracle(fuel=2)
    assert o.eq(app(THETA, IDENT, IDENT), OMEGA) is PROVED
    assert o.eq(app(THETA, TRU, TRU), OMEGA) is PROVED


def test_oracle_refutes_zero_vs_looping():
    o = PiOracle(fuel=2)
    assert lambda_pi_eq(THETA, OMEGA, o) is REFUTED
    assert o.eq(app(THETA, TRU, FLS), OMEGA) is REFUTED


def test_pi_positions_and_fuel():
    o = PiOracle(fuel=2)
    t = app(THETA, IDENT, IDENT)
    [(pos, v)] = o.pi_positions(t)
    assert pos == () and v is PROVED
    # zero fuel cannot decide nested equalities
    assert o.pi_positions(t, fuel=0)[0][1] is UNKNOWN


def test_nested_pi():
    # the inner diagonal must be collapsed before the outer becomes provable
    o = PiOracle(fuel=3, budget=Budget(120, 120, 4000))
    inner = app(THETA, IDENT, IDENT)
    outer = app(THETA, inner, OMEGA)
    assert o.eq(outer, OMEGA) is PROVED


def test_axiom_cross_check():
    o = PiOracle(fuel=2)
    assert cross_check_pi_axiom(IDENT, IDENT, o) == "consistent"
    assert cross_check_pi_axiom(TRU, FLS, o) == "consistent"


def test_successors_report_unresolved():
    o = PiOracle(fuel=0)
    succ, unresolved = o.successors(app(THETA, IDENT, IDENT))
    assert unresolved  # no fuel to decide the guard


def _pi_trace_step(t, pos):
    return TraceStep(t, replace_at(t, pos, OMEGA), PI, pos)


def test_factorize_duplication_case():
    # contracting under a duplicating binder: one pi step becomes two
    dup = lam("x", app(Free("f"), Free("x"), Free("x")))
    t0 = App(dup, app(THETA, IDENT, IDENT))
    s1 = _pi_trace_step(t0, ("R",))
    t1 = s1.after
    s2 = TraceStep(t1, contract(t1, (), BETA), BETA, ())
    prefix, suffix = factorize([s1, s2])
    assert [s.rule for s in prefix] == [BETA]
    assert [s.rule for s in suffix] == [PI, PI]
    assert prefix[0].before == t0
    assert suffix[-1].after == s2.after


def test_factorize_disjoint_case():
    t0 = app(Free("f"), app(THETA, IDENT, IDENT), app(IDENT, TRU))
    s1 = _pi_trace_step(t0, ("L", "R"))
    t1 = s1.after
    s2 = TraceStep(t1, contract(t1, ("R",), BETA), BETA, ("R",))
    prefix, suffix = factorize([s1, s2])
    assert [s.rule for s in prefix] == [BETA]
    assert [s.rule for s in suffix] == [PI]
    assert suffix[-1].after == s2.after


def test_factorize_eta_capture_blocked():
    t0 = lam("x", app(Free("y"), app(THETA, Free("x"), Free("x")), Free("x")))
    s1 = _pi_trace_step(t0, ("B", "L", "R"))
    t1 = s1.after
    s2 = TraceStep(t1, contract(t1, (), ETA), ETA, ())
    with pytest.raises(FactorizationError):
        factorize([s1, s2])


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_factorize_random_traces(seed):
    oracle = PiOracle(fuel=2, budget=Budget(40, 40, 1500))
    for trace in random_traces(seed, 3, oracle=oracle, max_len=10):
        prefix, suffix = factorize(trace)
        whole = prefix + suffix
        validate_trace(whole)
        assert all(s.rule != PI for s in prefix)
        assert all(s.rule == PI for s in suffix)
        assert whole[0].before == trace[0].before
        assert whole[-1].after == trace[-1].after


def test_mu_shape():
    t = mu("x", Free("x"))
    assert t == App(CURRY_Y, lam("x", Free("x")))


def test_plotkin_simpson_joins():
    terms = plotkin_simpson_terms(CURRY_Y)
    budget = Budget(150, 150, 2000)
    assert joinable(terms["D"], terms["ThetaDD"], frozenset((BETA,)), budget) is PROVED
    assert joinable(terms["YI"], OMEGA, frozenset((BETA,)), budget) is PROVED
