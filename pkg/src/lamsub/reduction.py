"""One-step beta/eta reduction, bounded normalization and reduction graphs.

Positions are tuples over {"L", "R", "B"} (application function/argument,
abstraction body).  Graph nodes are alpha-classes: the Term equality is
already alpha-equivalence, so terms themselves serve as canonical keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .terms import (
    Abs,
    App,
    Term,
    Var,
    beta_contract,
    index_free_in,
    pretty,
    shift,
    to_json_tree,
)
from .verdict import PROVED, REFUTED, UNKNOWN, Verdict

BETA = "beta"
ETA = "eta"
PI = "pi"

Position = tuple


@dataclass(frozen=True)
class Budget:
    max_steps: int = 1000
    max_nodes: int = 500
    max_term_size: int = 10_000

    def __post_init__(self):
        if self.max_steps <= 0 or self.max_nodes <= 0 or self.max_term_size <= 0:
            raise ValueError("budget bounds must be positive")


DEFAULT_BUDGET = Budget()


def is_beta_redex(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fn, Abs)


def is_eta_redex(t: Term) -> bool:
    # nameless criterion: body is M applied to index 0, with 0 not free in M
    return (
        isinstance(t, Abs)
        and isinstance(t.body, App)
        and isinstance(t.body.arg, Var)
        and t.body.arg.index == 0
        and not index_free_in(t.body.fn, 0)
    )


def redexes(t: Term, rules=frozenset((BETA, ETA))) -> list:
    """All (position, rule) pairs of beta/eta redex occurrences in t."""
    out = []

    def walk(t, pos):
        if BETA in rules and is_beta_redex(t):
            out.append((pos, BETA))
        if ETA in rules and is_eta_redex(t):
            out.append((pos, ETA))
        if isinstance(t, Abs):
            walk(t.body, pos + ("B",))
        elif isinstance(t, App):
            walk(t.fn, pos + ("L",))
            walk(t.arg, pos + ("R",))

    walk(t, ())
    return out


def subterm_at(t: Term, pos: Position) -> Term:
    for step in pos:
        if step == "B":
            t = t.body
        elif step == "L":
            t = t.fn
        else:
            t = t.arg
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if head == "B":
        return Abs(replace_at(t.body, rest, new), t.hint)
    if head == "L":
        return App(replace_at(t.fn, rest, new), t.arg)
    return App(t.fn, replace_at(t.arg, rest, new))


def contract(t: Term, pos: Position, rule: str, replacement: Term | None = None) -> Term:
    """Contract the redex at pos; for PI the replacement term is supplied."""
    sub = subterm_at(t, pos)
    if rule == BETA:
        if not is_beta_redex(sub):
            raise ValueError(f"no beta redex at {pos}")
        new = beta_contract(sub.fn, sub.arg)
    elif rule == ETA:
        if not is_eta_redex(sub):
            raise ValueError(f"no eta redex at {pos}")
        new = shift(sub.body.fn, -1)
    elif rule == PI:
        if replacement is None:
            raise ValueError("pi contraction needs a replacement term")
        new = replacement
    else:
        raise ValueError(f"unknown rule {rule}")
    return replace_at(t, pos, new)


def step(t: Term, rules=frozenset((BETA, ETA))) -> set:
    """The set of all one-step reducts of t (as alpha-classes)."""
    return {contract(t, pos, rule) for pos, rule in redexes(t, rules)}


# ---------------------------------------------------------------------------
# Reduction graphs


@dataclass
class ReductionGraph:
    root: Term
    nodes: set = field(default_factory=set)
    edges: set = field(default_factory=set)  # (source, target, rule)
    frontier: set = field(default_factory=set)
    # nodes with pi positions whose oracle verdict is UNKNOWN
    unresolved: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return not self.frontier

    def successors(self, t: Term) -> set:
        return {tgt for src, tgt, _ in self.edges if src == t}

    def to_dot(self) -> str:
        ids = {t: f"n{i}" for i, t in enumerate(sorted(self.nodes, key=pretty))}
        lines = ["digraph reduction {"]
        for t, nid in ids.items():
            shape = ', style="dashed"' if t in self.frontier else ""
            lines.append(f'  {nid} [label="{_dot_escape(pretty(t))}"{shape}];')
        for src, tgt, rule in sorted(self.edges, key=lambda e: (pretty(e[0]), pretty(e[1]), e[2])):
            style = ' style="bold" color="red"' if rule == PI else ""
            lines.append(f'  {ids[src]} -> {ids[tgt]} [label="{rule}"{style}];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        ids = {t: i for i, t in enumerate(sorted(self.nodes, key=pretty))}
        return {
            "root": ids[self.root],
            "nodes": [
                {"id": i, "term": pretty(t), "tree": to_json_tree(t)}
                for t, i in ids.items()
            ],
            "edges": sorted(
                [ids[s], ids[t], r] for s, t, r in self.edges
            ),
            "frontier": sorted(ids[t] for t in self.frontier),
            "complete": self.complete,
        }


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def reduction_graph(
    t: Term,
    rules=frozenset((BETA, ETA)),
    budget: Budget = DEFAULT_BUDGET,
    successor_fn=None,
) -> ReductionGraph:
    """Breadth-first closure of one-step reduction under a budget.

    successor_fn(term) -> (list[(target, rule)], unresolved_positions) lets
    the pi system plug in oracle-gated steps; default is plain beta/eta.
    """
    if successor_fn is None:

        def successor_fn(u):
            return [(contract(u, p, r), r) for p, r in redexes(u, rules)], ()

    g = ReductionGraph(root=t, nodes={t})
    queue = [t]
    steps = 0
    while queue:
        u = queue.pop(0)
        if steps >= budget.max_steps:
            g.frontier.add(u)
            continue
        steps += 1
        succ, unresolved = successor_fn(u)
        if unresolved:
            g.unresolved[u] = tuple(unresolved)
        for v, rule in succ:
            g.edges.add((u, v, rule))
            if v not in g.nodes:
                if len(g.nodes) >= budget.max_nodes or v.size > budget.max_term_size:
                    g.frontier.add(u)
                    continue
                g.nodes.add(v)
                queue.append(v)
    return g


# ---------------------------------------------------------------------------
# Normalization and classification


@dataclass(frozen=True)
class NormalizeResult:
    status: str  # "normal-form" | "exhausted" | "cycle-detected"
    term: Term


def normalize(t: Term, budget: Budget = DEFAULT_BUDGET) -> NormalizeResult:
    """Leftmost-outermost beta/eta normalization with cycle detection."""
    seen = {t}
    for _ in range(budget.max_steps):
        rs = redexes(t)
        if not rs:
            return NormalizeResult("normal-form", t)
        pos, rule = min(rs)  # leftmost-outermost: lexicographic on positions
        t = contract(t, pos, rule)
        if t in seen:
            return NormalizeResult("cycle-detected", t)
        if t.size > budget.max_term_size:
            return NormalizeResult("exhausted", t)
        seen.add(t)
    return NormalizeResult("exhausted", t)


def _head_redex(t: Term):
    """Position of the head redex of t, or None when t is a head normal form."""
    pos = ()
    while isinstance(t, Abs):
        pos += ("B",)
        t = t.body
    spine = t
    path = pos
    while isinstance(spine, App):
        if isinstance(spine.fn, Abs):
            return path, spine
        spine = spine.fn
        path += ("L",)
    return None


def head_status(t: Term, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """YES = solvable (head normal form reached), NO = head reduction cycles
    (evidence of unsolvability), UNKNOWN = budget exhausted."""
    seen = {t}
    for _ in range(budget.max_steps):
        hr = _head_redex(t)
        if hr is None:
            return PROVED
        path, redex = hr
        t = replace_at(t, path, beta_contract(redex.fn, redex.arg))
        if t in seen:
            return REFUTED
        if t.size > budget.max_term_size:
            return UNKNOWN
        seen.add(t)
    return UNKNOWN


def is_zero_term_bounded(t: Term, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """YES iff the budget-complete beta-graph contains no abstraction."""
    g = reduction_graph(t, frozenset((BETA,)), budget)
    if any(isinstance(n, Abs) for n in g.nodes):
        return REFUTED
    return PROVED if g.complete else UNKNOWN


def head_sequence(t: Term, max_len: int = 64, max_size: int = 20_000) -> list:
    """The bounded beta head-reduction sequence from t (t included), stopping
    at a head normal form, a cycle or the bound."""
    out = [t]
    seen = {t}
    for _ in range(max_len):
        hr = _head_redex(t)
        if hr is None:
            break
        path, redex = hr
        t = replace_at(t, path, beta_contract(redex.fn, redex.arg))
        if t in seen or t.size > max_size:
            break
        seen.add(t)
        out.append(t)
    return out


def _spine(t: Term):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def _congruent_joinable(a: Term, b: Term, fuel: int, memo: dict) -> bool:
    """Sound semi-test for beta joinability: intersect head sequences, then
    recurse component-wise on spine decompositions.  False means 'not found',
    never 'refuted'."""
    if a == b:
        return True
    if fuel <= 0:
        return False
    key = (a, b) if a._hash <= b._hash else (b, a)
    if key in memo:
        return memo[key]
    memo[key] = False  # cut recursion cycles
    ha, hb = head_sequence(a), head_sequence(b)
    if set(ha) & set(hb):
        memo[key] = True
        return True
    for x in ha:
        for y in hb:
            if isinstance(x, Abs) and isinstance(y, Abs):
                if _congruent_joinable(x.body, y.body, fuel - 1, memo):
                    memo[key] = True
                    return True
                continue
            hx, ax = _spine(x)
            hy, ay = _spine(y)
            if not ax or len(ax) != len(ay):
                continue
            if all(
                _congruent_joinable(u, v, fuel - 1, memo)
                for u, v in zip([hx] + ax, [hy] + ay)
            ):
                memo[key] = True
                return True
    return False


def joinable(
    a: Term,
    b: Term,
    rules=frozenset((BETA, ETA)),
    budget: Budget = DEFAULT_BUDGET,
    successor_fn=None,
) -> Verdict:
    """Do the reduction graphs of a and b intersect?

    YES as soon as a common reduct is found; NO only when both graphs are
    budget-complete, disjoint and free of unresolved pi positions.  For pure
    beta/eta questions an UNKNOWN from the graph phase falls through to the
    head-sequence congruence search, which can certify joins whose common
    reduct lies far beyond the breadth-first horizon.
    """
    ga = reduction_graph(a, rules, budget, successor_fn)
    if b in ga.nodes:
        return PROVED
    gb = reduction_graph(b, rules, budget, successor_fn)
    if ga.nodes & gb.nodes:
        return PROVED
    if ga.complete and gb.complete and not ga.unresolved and not gb.unresolved:
        return REFUTED
    if successor_fn is None and BETA in rules:
        if _congruent_joinable(a, b, fuel=6, memo={}):
            return PROVED
    return UNKNOWN
