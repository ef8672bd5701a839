"""The pi rule, the fuel-bounded provability oracle and beta-eta-pi graphs.

The pi rule contracts ``Psi M N`` to Omega when Psi is one of the three
alpha-classes of the beta-graph of Theta and the equational theory generated
by ``Theta x x = Omega`` (over the extensional lambda calculus) proves
``M = N``.  That side condition is undecidable, so the oracle is a
fuel-bounded, memoized three-valued procedure: YES answers are witnessed by
a concrete join of the two reduction graphs, NO answers require both graphs
to be complete, disjoint and free of undecided pi positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    Abs,
    App,
    CURRY_Y,
    OMEGA,
    THETA,
    Term,
    app,
    lam,
    Free,
)
from .reduction import (
    BETA,
    Budget,
    DEFAULT_BUDGET,
    PI,
    Position,
    ReductionGraph,
    contract,
    redexes,
    reduction_graph,
    replace_at,
    subterm_at,
)
from .verdict import PROVED, REFUTED, UNKNOWN, Verdict

# The beta-reduction graph of Theta, fixed once and for all: a 3-cycle.
THETA_GRAPH = tuple(sorted(
    reduction_graph(THETA, frozenset((BETA,))).nodes,
    key=lambda t: t.size,
))


def is_theta_reduct(t: Term) -> bool:
    return any(t == psi for psi in THETA_GRAPH)


class PiOracle:
    """Bounded decision procedure for provable equality under the pi rule."""

    def __init__(self, fuel: int = 3, budget: Budget = None):
        self.fuel = fuel
        self.budget = budget or Budget(max_steps=60, max_nodes=60, max_term_size=4000)
        self._memo: dict = {}

    # -- provability -------------------------------------------------------

    def eq(self, a: Term, b: Term, fuel: int | None = None) -> Verdict:
        """Three-valued verdict on provable equality of a and b."""
        if a == b:
            return PROVED
        if fuel is None:
            fuel = self.fuel
        key = (a, b) if a._hash <= b._hash else (b, a)
        hit = self._memo.get(key)
        if hit is not None:
            cached_fuel, verdict = hit
            if verdict is not UNKNOWN:
                return verdict
            if cached_fuel >= fuel:
                return UNKNOWN
        verdict = self._eq_by_graphs(a, b, fuel)
        self._memo[key] = (fuel, verdict)
        return verdict

    def _eq_by_graphs(self, a: Term, b: Term, fuel: int) -> Verdict:
        ga = self.graph(a, fuel=fuel)
        if b in ga.nodes:
            return PROVED
        gb = self.graph(b, fuel=fuel)
        if ga.nodes & gb.nodes:
            return PROVED
        if ga.complete and gb.complete and not ga.unresolved and not gb.unresolved:
            return REFUTED
        return UNKNOWN

    # -- pi redexes and graphs ----------------------------------------------

    def pi_positions(self, t: Term, fuel: int | None = None) -> list:
        """All (position, verdict) pairs for subterms of shape Psi M N."""
        if fuel is None:
            fuel = self.fuel
        out = []

        def walk(u, pos):
            if isinstance(u, App) and isinstance(u.fn, App) and is_theta_reduct(u.fn.fn):
                inner_fuel = max(fuel - 1, 0)
                v = self.eq(u.fn.arg, u.arg, inner_fuel) if fuel > 0 else UNKNOWN
                out.append((pos, v))
            if isinstance(u, Abs):
                walk(u.body, pos + ("B",))
            elif isinstance(u, App):
                walk(u.fn, pos + ("L",))
                walk(u.arg, pos + ("R",))

        walk(t, ())
        return out

    def successors(self, t: Term, fuel: int | None = None):
        """Beta/eta successors plus proved pi contractions; also returns the
        positions whose pi verdict is undecided."""
        succ = [(contract(t, p, r), r) for p, r in redexes(t)]
        unresolved = []
        for pos, verdict in self.pi_positions(t, fuel):
            if verdict is PROVED:
                succ.append((replace_at(t, pos, OMEGA), PI))
            elif verdict is UNKNOWN:
                unresolved.append(pos)
        return succ, tuple(unresolved)

    def graph(self, t: Term, budget: Budget = None, fuel: int | None = None) -> ReductionGraph:
        if fuel is None:
            fuel = self.fuel
        return reduction_graph(
            t,
            budget=budget or self.budget,
            successor_fn=lambda u: self.successors(u, fuel),
        )


# ---------------------------------------------------------------------------
# Module-level convenience operations


def pi_redexes(t: Term, oracle: PiOracle) -> set:
    return set(oracle.pi_positions(t))


def lambda_pi_eq(a: Term, b: Term, oracle: PiOracle) -> Verdict:
    return oracle.eq(a, b)


def betaetapi_graph(t: Term, oracle: PiOracle, budget: Budget = DEFAULT_BUDGET) -> ReductionGraph:
    return oracle.graph(t, budget=budget)


def cross_check_pi_axiom(m: Term, n: Term, oracle: PiOracle) -> str:
    """Cross-check: Theta M N converts to Omega exactly when the oracle
    proves M = N.  Returns 'consistent', 'violation' or 'unknown'."""
    left = oracle.eq(app(THETA, m, n), OMEGA)
    right = oracle.eq(m, n)
    if left is UNKNOWN or right is UNKNOWN:
        return "unknown"
    return "consistent" if left is right else "violation"


# ---------------------------------------------------------------------------
# Trace factorization: all beta/eta steps before all pi steps


@dataclass(frozen=True)
class TraceStep:
    before: Term
    after: Term
    rule: str  # BETA | ETA | PI
    pos: Position


class TraceError(ValueError):
    pass


class FactorizationError(ValueError):
    """Raised when an eta step cannot be commuted past a pi step because the
    contracted pi redex contained the eta-bound variable."""


def validate_trace(trace: list) -> None:
    for i, s in enumerate(trace):
        sub = subterm_at(s.before, s.pos)
        if s.rule == PI:
            if not (isinstance(sub, App) and isinstance(sub.fn, App) and is_theta_reduct(sub.fn.fn)):
                raise TraceError(f"step {i}: no pi redex at {s.pos}")
            expected = replace_at(s.before, s.pos, OMEGA)
        else:
            expected = contract(s.before, s.pos, s.rule)
        if expected != s.after:
            raise TraceError(f"step {i}: step does not produce its target")
        if i + 1 < len(trace) and trace[i + 1].before != s.after:
            raise TraceError(f"step {i}: trace is not contiguous")


def _pi_diff_positions(cur: Term, goal: Term, redex: Term) -> list:
    """Positions where cur has (a copy of) the pi redex and goal has Omega."""
    out = []

    def walk(a, b, pos):
        if a == b:
            return
        if a == redex and b == OMEGA:
            out.append(pos)
            return
        if isinstance(a, Abs) and isinstance(b, Abs):
            walk(a.body, b.body, pos + ("B",))
        elif isinstance(a, App) and isinstance(b, App):
            walk(a.fn, b.fn, pos + ("L",))
            walk(a.arg, b.arg, pos + ("R",))
        else:
            raise TraceError("terms differ other than by pi contraction")

    walk(cur, goal, ())
    return out


def _commute(pi_step: TraceStep, be_step: TraceStep) -> list:
    """Rewrite  M ->pi N ->betaeta Q  as beta/eta steps then pi steps."""
    m, q = pi_step.before, be_step.after
    p, qpos = pi_step.pos, be_step.pos
    redex = subterm_at(m, p)

    # beta/eta step inside the created Omega: Omega only reduces to itself
    if qpos[: len(p)] == p:
        if be_step.after != pi_step.after:
            raise TraceError("reduction inside Omega must be the identity")
        return [pi_step]

    # disjoint positions: contract the beta/eta redex first
    if p[: len(qpos)] != qpos:
        mid = contract(m, qpos, be_step.rule)
        if replace_at(mid, p, OMEGA) != q:
            raise TraceError("disjoint commutation failed")
        return [
            TraceStep(m, mid, be_step.rule, qpos),
            TraceStep(mid, q, PI, p),
        ]

    # beta/eta redex strictly above the pi redex
    try:
        mid = contract(m, qpos, be_step.rule)
    except ValueError:
        raise FactorizationError(
            "eta redex blocked: the pi redex under it uses the bound variable"
        )
    steps = []
    cur = mid
    for pos in _pi_diff_positions(mid, q, redex):
        nxt = replace_at(cur, pos, OMEGA)
        steps.append(TraceStep(cur, nxt, PI, pos))
        cur = nxt
    if cur != q:
        raise TraceError("commutation under a binder failed")
    return [TraceStep(m, mid, be_step.rule, qpos)] + steps


def factorize(trace: list) -> tuple:
    """Reorder a valid beta-eta-pi trace so that all beta/eta steps come
    before all pi steps, preserving both endpoints.

    Returns (beta_eta_prefix, pi_suffix).
    """
    validate_trace(trace)
    steps = list(trace)
    changed = True
    while changed:
        changed = False
        for i in range(len(steps) - 1):
            if steps[i].rule == PI and steps[i + 1].rule != PI:
                steps[i : i + 2] = _commute(steps[i], steps[i + 1])
                changed = True
                break
    prefix = [s for s in steps if s.rule != PI]
    suffix = [s for s in steps if s.rule == PI]
    validate_trace(prefix + suffix)
    return prefix, suffix


# ---------------------------------------------------------------------------
# The mu-construction for fixpoint combinators


def mu(name: str, body: Term, y: Term = CURRY_Y) -> Term:
    """mu x. M  ==  Y (lambda x. M)."""
    return App(y, lam(name, body))


def plotkin_simpson_terms(y: Term = CURRY_Y) -> dict:
    """The terms of the fixpoint construction: D = mu y. mu x. Theta x y,
    together with Theta D D and Y I for downstream bounded joinability checks.
    """
    d = mu("v", mu("u", app(THETA, Free("u"), Free("v"))), y)
    return {
        "D": d,
        "ThetaDD": app(THETA, d, d),
        "YI": App(y, lam("x", Free("x"))),
    }
