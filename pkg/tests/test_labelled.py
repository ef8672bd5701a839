import pytest

from lamsub.labelled import (
    Leaf,
    LinkRefuted,
    LAbs,
    LApp,
    LFree,
    OMEGA_LEAF,
    PSI2,
    PSI2_APP,
    PSI2_OMEGA,
    PSI_APP,
    PSI_ETA,
    ProofSkeleton,
    SuperposeError,
    check_op_definiteness_instance,
    erase,
    lab_step,
    lift,
    superpose,
    transform_proof,
)
from lamsub.pi import PiOracle
from lamsub.reduction import Budget, step
from lamsub.terms import (
    Abs,
    App,
    FLS,
    Free,
    IDENT,
    OMEGA,
    THETA,
    TRU,
    Var,
    app,
    lam,
)
from lamsub.verdict import PROVED


def oracle():
    return PiOracle(fuel=2, budget=Budget(60, 60, 2000))


def test_lift_erase_round_trip():
    for t in (IDENT, THETA, OMEGA, lam("x", app(Free("x"), Free("f")))):
        assert erase(lift(t)) == t


def test_leaf_erasures():
    assert erase(Leaf(OMEGA_LEAF, 3)) == OMEGA
    assert erase(Leaf(PSI_APP, 1, (lift(IDENT),))) == app(THETA, IDENT, OMEGA)
    assert erase(Leaf(PSI_ETA, 2)) == Abs(app(THETA, Var(0), OMEGA))
    assert erase(Leaf(PSI2_OMEGA, 5)) == App(PSI2, OMEGA)
    assert erase(Leaf(PSI2_APP, 2, (lift(IDENT), lift(TRU)))) == App(
        PSI2, app(THETA, IDENT, TRU)
    )


def test_leaf_validation():
    with pytest.raises(ValueError):
        Leaf("bogus", 1)
    with pytest.raises(ValueError):
        Leaf(OMEGA_LEAF, 0)
    with pytest.raises(ValueError):
        Leaf(PSI_APP, 1)  # missing component


def test_superpose_sum_copy_none():
    both = superpose(Leaf(OMEGA_LEAF, 1), Leaf(OMEGA_LEAF, 2))
    assert both == Leaf(OMEGA_LEAF, 3)
    one = superpose(Leaf(OMEGA_LEAF, 1), lift(OMEGA))
    assert one == Leaf(OMEGA_LEAF, 1)
    none = superpose(lift(IDENT), lift(IDENT))
    assert none == lift(IDENT)


def test_superpose_decomposes_unlabelled_regions():
    labelled = Leaf(PSI_APP, 2, (Leaf(OMEGA_LEAF, 1),))
    plain = lift(erase(labelled))
    merged = superpose(labelled, plain)
    assert merged.label == 2 and merged.parts[0] == Leaf(OMEGA_LEAF, 1)


def test_superpose_mismatch_reports_position():
    a = LApp(LFree("f"), Leaf(OMEGA_LEAF, 1))
    b = LApp(LFree("f"), lift(IDENT))
    with pytest.raises(SuperposeError) as e:
        superpose(a, b)
    assert e.value.pos == ("R",)


def test_superpose_commutes():
    a = LApp(Leaf(OMEGA_LEAF, 2), Leaf(PSI_ETA, 1))
    b = LApp(Leaf(OMEGA_LEAF, 5), lift(erase(Leaf(PSI_ETA, 1))))
    assert superpose(a, b) == superpose(b, a)


def test_labelled_application_step():
    l = LApp(Leaf(PSI_ETA, 4), lift(IDENT))
    succ = lab_step(l, oracle())
    assert Leaf(PSI_APP, 4, (lift(IDENT),)) in succ


def test_labelled_collapse_steps():
    o = oracle()
    l = Leaf(PSI_APP, 2, (lift(OMEGA),))
    assert Leaf(OMEGA_LEAF, 2) in lab_step(l, o)
    l2 = Leaf(PSI2_APP, 3, (lift(IDENT), lift(IDENT)))
    assert Leaf(PSI2_OMEGA, 3) in lab_step(l2, o)


def test_simulation_property():
    # every labelled step erases to a valid beta/eta/pi move or to equality
    o = oracle()
    l = LApp(LAbs(LApp(LFree("f"), Leaf(OMEGA_LEAF, 1))), lift(IDENT))
    plain = erase(l)
    plain_succ = step(plain) | {plain}
    for s in lab_step(l, o):
        assert erase(s) in plain_succ or erase(s) == OMEGA


def _const(body):
    return lam("a", lam("b", body))


def test_skeleton_json_round_trip():
    sk = ProofSkeleton(
        left=IDENT, right=IDENT, fs=[_const(IDENT)], ps=[TRU], qs=[FLS]
    )
    assert ProofSkeleton.from_json(sk.to_json()) == sk


def test_skeleton_links_shape():
    f1, f2 = _const(IDENT), _const(IDENT)
    sk = ProofSkeleton(left=IDENT, right=IDENT, fs=[f1, f2], ps=[TRU], qs=[FLS])
    links = sk.links()
    assert len(links) == 3  # left link, one internal link, right link


def test_transform_shortens_by_one():
    f = _const(IDENT)
    sk = ProofSkeleton(
        left=app(IDENT, IDENT),
        right=IDENT,
        fs=[f, f, f],
        ps=[TRU],
        qs=[FLS],
    )
    res = transform_proof(sk, [f, f], oracle())
    assert res.skeleton is not None
    assert len(res.skeleton.fs) == 2
    assert res.skeleton.left == sk.left and res.skeleton.right == sk.right
    assert not res.assumptions


def test_transform_single_link_eliminates():
    f = _const(IDENT)
    sk = ProofSkeleton(left=IDENT, right=IDENT, fs=[f], ps=[TRU], qs=[FLS])
    res = transform_proof(sk, [], oracle())
    assert res.skeleton is None
    assert "eliminated_chain" in res.audit


def test_transform_refuted_witness_aborts():
    f = _const(IDENT)
    bad = _const(TRU)  # bad P~ Q~ normalizes to T, but F1 Q~ Q~ is I
    sk = ProofSkeleton(left=IDENT, right=IDENT, fs=[f, f], ps=[TRU], qs=[FLS])
    with pytest.raises(LinkRefuted) as e:
        transform_proof(sk, [bad], oracle())
    assert e.value.index == 0


def test_transform_witness_count_checked():
    f = _const(IDENT)
    sk = ProofSkeleton(left=IDENT, right=IDENT, fs=[f, f, f], ps=[TRU], qs=[FLS])
    with pytest.raises(ValueError):
        transform_proof(sk, [f], oracle())


def test_op_definiteness_instance():
    o = oracle()
    f = lam("a", IDENT)
    assert check_op_definiteness_instance(f, [TRU], [FLS], IDENT, o) is PROVED
    with pytest.raises(ValueError):
        check_op_definiteness_instance(f, [TRU], [FLS], app(IDENT, IDENT), o)
