import pytest

from lamsub.algebra import AlgTerm, find_subtractive_witnesses, z2_xor, z_mod
from lamsub.topology import (
    FiniteSpace,
    T0,
    T1,
    T2,
    T2HALF,
    check_top_algebra,
    closure,
    coconnected,
    discrete,
    enumerate_topologies,
    gamma_iteration,
    indiscrete,
    is_separated,
    term_separation_check,
    n_step_hausdorff_in,
    operations_monotone,
    product_space,
    separated,
    sierpinski,
    specialization,
    specialization_dot,
    subspace,
    subtractive_separation_suite,
    t0_quotient,
    unary_polynomials,
    validate_space,
)


def test_validate_space():
    assert validate_space(sierpinski()) == (True, None)
    bad = FiniteSpace(2, frozenset({0b10, 0b11}))  # missing empty set
    ok, err = validate_space(bad)
    assert not ok and "empty" in err
    not_closed = FiniteSpace(3, frozenset({0, 0b001, 0b010, 0b111}))
    ok, err = validate_space(not_closed)
    assert not ok and "union" in err


def test_space_json_round_trip():
    s = sierpinski()
    assert FiniteSpace.from_json(s.to_json()) == s


def test_sierpinski_facts():
    s = sierpinski()
    spec = specialization(s)
    assert spec[0][1] and not spec[1][0]  # 0 below 1, strictly
    assert closure(s, 0b10) == 0b11
    assert separated(s, 0, 1, T0)
    assert not separated(s, 0, 1, T1)
    assert is_separated(s, T0) and not is_separated(s, T1)


def test_separation_hierarchy():
    d = discrete(3)
    for level in (T0, T1, T2, T2HALF):
        assert is_separated(d, level)
    assert not is_separated(indiscrete(2), T0)


def test_topology_counts():
    assert len(enumerate_topologies(1)) == 1
    assert len(enumerate_topologies(2)) == 4
    assert len(enumerate_topologies(3)) == 29
    with pytest.raises(ValueError):
        enumerate_topologies(4)


def test_t0_iff_specialization_antisymmetric():
    for s in enumerate_topologies(3):
        spec = specialization(s)
        anti = all(
            not (spec[a][b] and spec[b][a])
            for a in range(3)
            for b in range(3)
            if a != b
        )
        assert is_separated(s, T0) == anti


def test_t1_iff_discrete_specialization():
    for s in enumerate_topologies(3):
        spec = specialization(s)
        disc = all(spec[a][b] == (a == b) for a in range(3) for b in range(3))
        assert is_separated(s, T1) == disc


def test_gamma_iteration():
    d = discrete(3)
    assert gamma_iteration(d, 0) == [0, 0b110]
    assert n_step_hausdorff_in(d, 0, 1)
    assert gamma_iteration(sierpinski(), 0) == [0]


def test_gamma_monotone():
    for s in enumerate_topologies(3):
        for a in range(3):
            gs = gamma_iteration(s, a)
            assert all(gs[i] & ~gs[i + 1] == 0 for i in range(len(gs) - 1))
            assert all(not (g >> a) & 1 for g in gs)


def test_product_space():
    assert product_space(discrete(2), 2) == discrete(4)
    p = product_space(sierpinski(), 2)
    ok, err = validate_space(p)
    assert ok and p.size == 4


def test_continuity_checks():
    z2 = z2_xor()
    assert check_top_algebra(z2, discrete(2), "topological") == (True, None)
    cont, witness = check_top_algebra(z2, sierpinski(), "topological")
    assert not cont and witness[0] == "add"
    semi, _ = check_top_algebra(z2, sierpinski(), "semitopological")
    assert not semi
    mono, counter = operations_monotone(z2, sierpinski())
    assert not mono and counter[0] == "add"


def test_unary_polynomials():
    fns = unary_polynomials(z2_xor())
    # xor generates identity, negation and both constants
    assert fns == {(0, 1), (1, 0), (0, 0), (1, 1)}


def test_t0_quotient():
    q, classes = t0_quotient(indiscrete(3))
    assert q.size == 1 and classes == [[0, 1, 2]]
    for s in enumerate_topologies(3):
        q, _ = t0_quotient(s)
        assert validate_space(q)[0]
        assert is_separated(q, T0)


def test_subspace():
    s = sierpinski()
    sub, remap = subspace(s, 0b10)
    assert sub.size == 1 and validate_space(sub)[0]


def test_coconnected():
    assert coconnected(indiscrete(3))
    assert not coconnected(discrete(2))


def test_separation_suite_on_cyclic_group():
    z3 = z_mod(3)
    ws = find_subtractive_witnesses(z3, 0, 2, 3)
    rep = subtractive_separation_suite(z3, discrete(3), 0, ws)
    assert rep["mode"]["topological"] and rep["mode"]["T0"]
    for key in (
        "zero_singleton_closed",
        "diagonals_closed",
        "t1_separated_in_zero",
        "r_sets_open",
        "sigma_open",
        "r_below_sigma",
        "rank_in_sigma",
        "t2half_from_zero",
        "n_minus_1_step_hausdorff_in_zero",
    ):
        assert rep[key] is True, key


def test_separation_suite_not_applicable():
    z2 = z2_xor()
    ws = find_subtractive_witnesses(z2, 0, 2, 2)
    rep = subtractive_separation_suite(z2, sierpinski(), 0, ws)
    assert rep["mode"]["semitopological"] is False
    assert rep["zero_singleton_closed"] == "not-applicable"


def test_term_separation_check():
    z3 = z_mod(3)
    t = AlgTerm("add", (AlgTerm("add", (AlgTerm("x"), AlgTerm("y"))), AlgTerm("y")))
    assert term_separation_check(z3, discrete(3), t, 1, 2) == "holds"
    assert term_separation_check(z3, discrete(3), t, 1, 1) == "not-applicable"


def test_specialization_dot():
    assert "digraph" in specialization_dot(sierpinski())
