"""Seeded random generation of terms and reduction traces.

All generators take an explicit random.Random so that every report and test
is reproducible from its seed.
"""

from __future__ import annotations

import random

from .terms import (
    Abs,
    App,
    FLS,
    IDENT,
    OMEGA,
    THETA,
    Term,
    TRU,
    Var,
    app,
    well_scoped,
)
from .reduction import PI, contract, redexes, replace_at
from .pi import FactorizationError, PiOracle, TraceStep, factorize, validate_trace
from .verdict import PROVED

# Closed combinators occasionally dropped in as leaves so that random terms
# exercise the pi machinery, not just plain beta/eta.
NAMED_LEAVES = (IDENT, TRU, FLS, OMEGA, THETA)


def random_term(
    rng: random.Random,
    max_size: int = 14,
    depth: int = 0,
    named_leaf_prob: float = 0.15,
) -> Term:
    """A random well-scoped term of size at most max_size.

    depth counts enclosing binders; leaves are bound variables (when any are
    in scope) or named closed combinators.  The result is closed.
    """
    if max_size <= 1:
        if depth > 0 and rng.random() >= named_leaf_prob:
            return Var(rng.randrange(depth))
        return rng.choice(NAMED_LEAVES) if rng.random() < 0.5 or depth == 0 else Var(rng.randrange(depth))
    r = rng.random()
    if r < 0.35 or depth == 0 and r < 0.6:
        return Abs(random_term(rng, max_size - 1, depth + 1, named_leaf_prob))
    if r < 0.8:
        left = rng.randint(1, max_size - 2) if max_size > 2 else 1
        return App(
            random_term(rng, left, depth, named_leaf_prob),
            random_term(rng, max_size - 1 - left, depth, named_leaf_prob),
        )
    if depth > 0 and rng.random() >= named_leaf_prob:
        return Var(rng.randrange(depth))
    return rng.choice(NAMED_LEAVES)


def random_terms(seed: int, count: int, max_size: int = 14):
    rng = random.Random(seed)
    for _ in range(count):
        t = random_term(rng, max_size)
        assert well_scoped(t)
        yield t


def random_theta_argument(rng: random.Random, max_size: int = 12) -> Term:
    """A closed term for use as M in Theta M M."""
    return random_term(rng, max_size, depth=0, named_leaf_prob=0.2)


def _graft_pi_redex(rng: random.Random, host: Term, m: Term, pos=()) -> Term:
    """Replace one random leaf of host by Theta m m, keeping the term closed
    by only grafting at binder depth 0 positions or shifting is avoided by
    using a closed m."""
    if isinstance(host, Abs):
        return Abs(_graft_pi_redex(rng, host.body, m), host.hint)
    if isinstance(host, App):
        if rng.random() < 0.5:
            return App(_graft_pi_redex(rng, host.fn, m), host.arg)
        return App(host.fn, _graft_pi_redex(rng, host.arg, m))
    return app(THETA, m, m)


def random_trace(
    rng: random.Random,
    oracle: PiOracle,
    max_len: int = 20,
    max_size: int = 14,
    max_term_size: int = 400,
    attempts: int = 40,
) -> list:
    """A random valid beta-eta-pi trace whose pi steps all reorder to the
    end.  Traces hitting the blocked eta-over-pi capture case are resampled;
    the generator is deterministic given rng state."""
    for _ in range(attempts):
        start = random_term(rng, max_size)
        if rng.random() < 0.5:
            # plant a provable pi redex somewhere inside
            start = _graft_pi_redex(rng, start, random_term(rng, 4))
        trace = []
        t = start
        for _ in range(rng.randint(1, max_len)):
            options = [(p, r) for p, r in redexes(t)]
            pi_options = [
                (pos, PI)
                for pos, verdict in oracle.pi_positions(t)
                if verdict is PROVED
            ]
            if not options and not pi_options:
                break
            # bias toward pi steps so the commutation cases get exercised
            if pi_options and (not options or rng.random() < 0.4):
                pos, rule = rng.choice(pi_options)
            else:
                if not options:
                    break
                pos, rule = rng.choice(options)
            nxt = replace_at(t, pos, OMEGA) if rule == PI else contract(t, pos, rule)
            if nxt.size > max_term_size:
                break
            trace.append(TraceStep(t, nxt, rule, pos))
            t = nxt
        if not trace:
            continue
        try:
            validate_trace(trace)
            factorize(trace)
        except FactorizationError:
            continue
        return trace
    raise RuntimeError("could not generate a factorizable trace")


def random_traces(seed: int, count: int, oracle: PiOracle | None = None, **kw):
    rng = random.Random(seed)
    oracle = oracle or PiOracle(fuel=2)
    for _ in range(count):
        yield random_trace(rng, oracle, **kw)
