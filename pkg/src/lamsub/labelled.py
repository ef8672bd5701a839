"""Labelled terms, superposition, labelled reduction, and the chain-shortening
transformation of equational proofs through an interpolating term sequence.

A labelled term is a lambda term in which certain closed-shape subterms carry
a positive integer label: (lambda x. Psi x Omega)^n, (Psi M Omega)^n, (Omega)^n,
and the two-level variants (Psi2 Omega)^n and (Psi2 (Theta M N))^n.  Erasing
labels yields a plain term; superposition adds labels of coinciding occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    Abs,
    App,
    OMEGA,
    THETA,
    Term,
    Var,
    Free,
    app,
    lam,
    pretty,
    theta_n,
    to_json_tree,
)
from .pi import PiOracle, THETA_GRAPH
from .verdict import PROVED, REFUTED, UNKNOWN, Verdict

PSI2 = theta_n(2)

# leaf shape tags
PSI_ETA = "psi_eta"    # (lambda x. Psi x Omega)^n
PSI_APP = "psi_app"    # (Psi M Omega)^n
OMEGA_LEAF = "omega"   # (Omega)^n
PSI2_OMEGA = "psi2_omega"  # (Psi2 Omega)^n
PSI2_APP = "psi2_app"      # (Psi2 (Theta M N))^n

_LEAF_ARITY = {PSI_ETA: 0, PSI_APP: 1, OMEGA_LEAF: 0, PSI2_OMEGA: 0, PSI2_APP: 2}


class LTerm:
    __slots__ = ()


@dataclass(frozen=True)
class LVar(LTerm):
    index: int


@dataclass(frozen=True)
class LFree(LTerm):
    name: str


@dataclass(frozen=True)
class LAbs(LTerm):
    body: LTerm
    hint: str = "x"

    def __eq__(self, other):
        return isinstance(other, LAbs) and self.body == other.body

    def __hash__(self):
        return hash(("labs", self.body))


@dataclass(frozen=True)
class LApp(LTerm):
    fn: LTerm
    arg: LTerm


@dataclass(frozen=True)
class Leaf(LTerm):
    kind: str
    label: int
    parts: tuple = ()
    psi: int = 0  # index into the reduction cycle of Theta

    def __post_init__(self):
        if self.kind not in _LEAF_ARITY:
            raise ValueError(f"unknown leaf kind {self.kind}")
        if len(self.parts) != _LEAF_ARITY[self.kind]:
            raise ValueError(f"leaf {self.kind} takes {_LEAF_ARITY[self.kind]} parts")
        if self.label < 1:
            raise ValueError("labels are positive integers")
        if not 0 <= self.psi < len(THETA_GRAPH):
            raise ValueError("psi index out of range")


def lift(t: Term) -> LTerm:
    """A plain term viewed as a labelled term with no labels."""
    if isinstance(t, Var):
        return LVar(t.index)
    if isinstance(t, Free):
        return LFree(t.name)
    if isinstance(t, Abs):
        return LAbs(lift(t.body), t.hint)
    return LApp(lift(t.fn), lift(t.arg))


def erase(l: LTerm) -> Term:
    if isinstance(l, LVar):
        return Var(l.index)
    if isinstance(l, LFree):
        return Free(l.name)
    if isinstance(l, LAbs):
        return Abs(erase(l.body), l.hint)
    if isinstance(l, LApp):
        return App(erase(l.fn), erase(l.arg))
    psi = THETA_GRAPH[l.psi]
    if l.kind == PSI_ETA:
        return Abs(app(psi, Var(0), OMEGA))
    if l.kind == PSI_APP:
        return app(psi, erase(l.parts[0]), OMEGA)
    if l.kind == OMEGA_LEAF:
        return OMEGA
    if l.kind == PSI2_OMEGA:
        return App(PSI2, OMEGA)
    return App(PSI2, app(THETA, erase(l.parts[0]), erase(l.parts[1])))


class SuperposeError(ValueError):
    def __init__(self, pos, a, b):
        self.pos = pos
        super().__init__(f"erasures differ at position {pos}: {pretty(a)} vs {pretty(b)}")


def _decompose(l: LTerm, kind: str, psi: int):
    """Split an unlabelled region matching the erasure of a leaf of the given
    kind into the leaf's component slots; None when the shapes disagree."""
    e = erase(l)
    if kind == PSI_APP:
        want = THETA_GRAPH[psi]
        if (
            isinstance(l, LApp)
            and isinstance(l.fn, LApp)
            and erase(l.fn.fn) == want
            and erase(l.arg) == OMEGA
        ):
            return (l.fn.arg,)
        return None
    if kind == PSI2_APP:
        if (
            isinstance(l, LApp)
            and erase(l.fn) == PSI2
            and isinstance(l.arg, LApp)
            and isinstance(l.arg.fn, LApp)
            and erase(l.arg.fn.fn) == THETA
        ):
            return (l.arg.fn.arg, l.arg.arg)
        return None
    # component-free leaves: any unlabelled region with the right erasure
    probe = Leaf(kind, 1, (), psi)
    return () if e == erase(probe) else None


def superpose(a: LTerm, b: LTerm, pos=()) -> LTerm:
    """Combine two labelled terms with identical erasures: labels add where
    both sides are labelled, carry over where only one side is."""
    if isinstance(a, Leaf) and isinstance(b, Leaf):
        if a.kind == b.kind and a.psi == b.psi:
            parts = tuple(
                superpose(x, y, pos + (i,)) for i, (x, y) in enumerate(zip(a.parts, b.parts))
            )
            return Leaf(a.kind, a.label + b.label, parts, a.psi)
        raise SuperposeError(pos, erase(a), erase(b))
    if isinstance(a, Leaf) or isinstance(b, Leaf):
        leaf, other = (a, b) if isinstance(a, Leaf) else (b, a)
        counterpart = _decompose(other, leaf.kind, leaf.psi)
        if counterpart is None:
            raise SuperposeError(pos, erase(a), erase(b))
        parts = tuple(
            superpose(x, y, pos + (i,)) for i, (x, y) in enumerate(zip(leaf.parts, counterpart))
        )
        return Leaf(leaf.kind, leaf.label, parts, leaf.psi)
    if isinstance(a, LVar) and isinstance(b, LVar) and a.index == b.index:
        return a
    if isinstance(a, LFree) and isinstance(b, LFree) and a.name == b.name:
        return a
    if isinstance(a, LAbs) and isinstance(b, LAbs):
        return LAbs(superpose(a.body, b.body, pos + ("B",)), a.hint)
    if isinstance(a, LApp) and isinstance(b, LApp):
        return LApp(
            superpose(a.fn, b.fn, pos + ("L",)),
            superpose(a.arg, b.arg, pos + ("R",)),
        )
    raise SuperposeError(pos, erase(a), erase(b))


# ---------------------------------------------------------------------------
# Labelled reduction


def _lshift(l: LTerm, d: int, cutoff: int = 0) -> LTerm:
    if isinstance(l, LVar):
        return LVar(l.index + d) if l.index >= cutoff else l
    if isinstance(l, LFree):
        return l
    if isinstance(l, LAbs):
        return LAbs(_lshift(l.body, d, cutoff + 1), l.hint)
    if isinstance(l, LApp):
        return LApp(_lshift(l.fn, d, cutoff), _lshift(l.arg, d, cutoff))
    return Leaf(l.kind, l.label, tuple(_lshift(p, d, cutoff) for p in l.parts), l.psi)


def _lsubst(l: LTerm, j: int, s: LTerm) -> LTerm:
    if isinstance(l, LVar):
        if l.index == j:
            return s
        return LVar(l.index - 1) if l.index > j else l
    if isinstance(l, LFree):
        return l
    if isinstance(l, LAbs):
        return LAbs(_lsubst(l.body, j + 1, _lshift(s, 1)), l.hint)
    if isinstance(l, LApp):
        return LApp(_lsubst(l.fn, j, s), _lsubst(l.arg, j, s))
    # substitution passes through labels: (Psi M Omega)^n[N/x] = (Psi M[N/x] Omega)^n
    return Leaf(l.kind, l.label, tuple(_lsubst(p, j, s) for p in l.parts), l.psi)


def _index_free(l: LTerm, j: int) -> bool:
    if isinstance(l, LVar):
        return l.index == j
    if isinstance(l, LFree):
        return False
    if isinstance(l, LAbs):
        return _index_free(l.body, j + 1)
    if isinstance(l, LApp):
        return _index_free(l.fn, j) or _index_free(l.arg, j)
    return any(_index_free(p, j) for p in l.parts)


def lab_step(l: LTerm, oracle: PiOracle) -> set:
    """All one-step successors of a labelled term: beta, eta, pi on erasures,
    labelled application, labelled collapse, and reduction under labels."""
    out = set()

    # labelled application: (lambda x. Psi x Omega)^n M -> (Psi M Omega)^n
    if isinstance(l, LApp) and isinstance(l.fn, Leaf) and l.fn.kind == PSI_ETA:
        out.add(Leaf(PSI_APP, l.fn.label, (l.arg,), l.fn.psi))

    # beta
    if isinstance(l, LApp) and isinstance(l.fn, LAbs):
        out.add(_lsubst(l.fn.body, 0, _lshift(l.arg, 1)))

    # eta
    if (
        isinstance(l, LAbs)
        and isinstance(l.body, LApp)
        and isinstance(l.body.arg, LVar)
        and l.body.arg.index == 0
        and not _index_free(l.body.fn, 0)
    ):
        out.add(_lshift(l.body.fn, -1))

    # pi on the erasure: Psi M N -> Omega when the oracle proves M = N
    if isinstance(l, LApp) and isinstance(l.fn, LApp):
        head = erase(l.fn.fn)
        if any(head == psi for psi in THETA_GRAPH):
            if oracle.eq(erase(l.fn.arg), erase(l.arg)) is PROVED:
                out.add(lift(OMEGA))

    if isinstance(l, Leaf):
        # labelled collapse: (Psi M Omega)^n -> (Omega)^n when M = Omega provable
        if l.kind == PSI_APP and oracle.eq(erase(l.parts[0]), OMEGA) is PROVED:
            out.add(Leaf(OMEGA_LEAF, l.label))
        # (Psi2 (Theta M N))^n -> (Psi2 Omega)^n when M = N provable
        if l.kind == PSI2_APP and oracle.eq(erase(l.parts[0]), erase(l.parts[1])) is PROVED:
            out.add(Leaf(PSI2_OMEGA, l.label))
        # reduction under labels, inside the leaf components
        for i, p in enumerate(l.parts):
            for s in lab_step(p, oracle):
                parts = l.parts[:i] + (s,) + l.parts[i + 1 :]
                out.add(Leaf(l.kind, l.label, parts, l.psi))
        return out

    if isinstance(l, LAbs):
        for s in lab_step(l.body, oracle):
            out.add(LAbs(s, l.hint))
    elif isinstance(l, LApp):
        for s in lab_step(l.fn, oracle):
            out.add(LApp(s, l.arg))
        for s in lab_step(l.arg, oracle):
            out.add(LApp(l.fn, s))
    return out


# ---------------------------------------------------------------------------
# Proof skeletons and the chain-shortening transformation


@dataclass
class ProofSkeleton:
    """An equational chain  left = F1 P~ Q~;  Fj Q~ P~ = F(j+1) P~ Q~;
    Fn Q~ P~ = right,  over closed term sequences P~ and Q~."""

    left: Term
    right: Term
    fs: list
    ps: list
    qs: list

    def __post_init__(self):
        if len(self.ps) != len(self.qs):
            raise ValueError("P and Q sequences must have equal length")
        if not self.fs:
            raise ValueError("skeleton needs at least one link term")

    def links(self) -> list:
        """The chain equalities as (lhs, rhs) pairs of plain terms."""
        out = [(self.left, app(self.fs[0], *self.ps, *self.qs))]
        for j in range(len(self.fs) - 1):
            out.append(
                (
                    app(self.fs[j], *self.qs, *self.ps),
                    app(self.fs[j + 1], *self.ps, *self.qs),
                )
            )
        out.append((app(self.fs[-1], *self.qs, *self.ps), self.right))
        return out

    def to_json(self) -> dict:
        return {
            "left": to_json_tree(self.left),
            "right": to_json_tree(self.right),
            "fs": [to_json_tree(f) for f in self.fs],
            "ps": [to_json_tree(p) for p in self.ps],
            "qs": [to_json_tree(q) for q in self.qs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProofSkeleton":
        from .terms import from_json_tree

        return cls(
            left=from_json_tree(d["left"]),
            right=from_json_tree(d["right"]),
            fs=[from_json_tree(f) for f in d["fs"]],
            ps=[from_json_tree(p) for p in d["ps"]],
            qs=[from_json_tree(q) for q in d["qs"]],
        )


class LinkRefuted(ValueError):
    def __init__(self, index, lhs, rhs):
        self.index = index
        super().__init__(f"link {index} refuted: {pretty(lhs)} = {pretty(rhs)}")


@dataclass
class TransformResult:
    skeleton: ProofSkeleton | None  # None when the chain is fully eliminated
    audit: dict = field(default_factory=dict)
    assumptions: list = field(default_factory=list)  # links the oracle left unknown


def transform_proof(ps: ProofSkeleton, witnesses: list, oracle: PiOracle) -> TransformResult:
    """One round of chain shortening: n links plus n-1 witnesses G_j become an
    n-1 link chain with the same endpoints.

    Each witness must satisfy  G_j P~ Q~ = F_j Q~ Q~  and
    G_j Q~ P~ = F(j+1) Q~ Q~;  a refuted side aborts with its index, unknown
    sides are carried as assumptions.
    """
    n = len(ps.fs)
    if n == 1:
        if witnesses:
            raise ValueError("a single-link chain is eliminated without witnesses")
    elif len(witnesses) != n - 1:
        raise ValueError(f"need {n - 1} witnesses, got {len(witnesses)}")

    assumptions = []

    def check(idx, lhs, rhs):
        v = oracle.eq(lhs, rhs)
        if v is REFUTED:
            raise LinkRefuted(idx, lhs, rhs)
        if v is UNKNOWN:
            assumptions.append((idx, lhs, rhs))

    k = len(ps.ps)
    ys = [Free(f"y{i}") for i in range(k)]
    audit = {
        "H": [lam_many(ys, app(f, *ps.qs, *ys)) for f in ps.fs],
        "Hprime": [lam_many(ys, app(f, *ys, *ps.qs)) for f in ps.fs],
    }

    if n == 1:
        mid = app(ps.fs[0], *ps.qs, *ps.qs)
        check(0, ps.left, mid)
        check(0, mid, ps.right)
        audit["eliminated_chain"] = [ps.left, mid, ps.right]
        return TransformResult(None, audit, assumptions)

    for j, g in enumerate(witnesses):
        check(j, app(g, *ps.ps, *ps.qs), app(ps.fs[j], *ps.qs, *ps.qs))
        check(j, app(g, *ps.qs, *ps.ps), app(ps.fs[j + 1], *ps.qs, *ps.qs))

    new = ProofSkeleton(
        left=ps.left,
        right=ps.right,
        fs=list(witnesses),
        ps=list(ps.ps),
        qs=list(ps.qs),
    )
    # endpoint relinking: left = F1 Q~ Q~ = G1 P~ Q~ and Gn-1 Q~ P~ = Fn Q~ Q~ = right
    check(0, ps.left, app(ps.fs[0], *ps.qs, *ps.qs))
    check(n - 1, app(ps.fs[-1], *ps.qs, *ps.qs), ps.right)
    return TransformResult(new, audit, assumptions)


def lam_many(frees: list, body: Term) -> Term:
    for f in reversed(frees):
        body = lam(f.name, body)
    return body


def check_op_definiteness_instance(
    f: Term, ps: list, qs: list, n: Term, oracle: PiOracle
) -> Verdict:
    """Bounded instance of operational definiteness: F P~ = N implies
    F Q~ = N, for a beta-eta-normal N."""
    from .reduction import redexes

    if redexes(n):
        raise ValueError("N must be beta-eta-normal")
    ante = oracle.eq(app(f, *ps), n)
    if ante is REFUTED:
        return PROVED  # implication holds vacuously
    cons = oracle.eq(app(f, *qs), n)
    if ante is PROVED and cons is PROVED:
        return PROVED
    if ante is PROVED and cons is REFUTED:
        return REFUTED
    return UNKNOWN
