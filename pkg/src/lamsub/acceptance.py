"""The acceptance battery: twelve exact checks at desk scale.

Every check is deterministic: random corpora are drawn from fixed seeds, so
reports are byte-identical across runs.  Each criterion returns a
CriterionResult with a one-line detail string.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .algebra import (
    FiniteAlgebra,
    all_binary_tables,
    compatible_order_mask,
    enumerate_compatible_partial_orders,
    eq_rel,
    find_malcev_terms,
    find_subtractive_witnesses,
    is_0_symmetric,
    malcev3_exists,
    subtractive2_exists,
    z_mod,
)
from .labelled import ProofSkeleton, transform_proof
from .pi import PiOracle, lambda_pi_eq, plotkin_simpson_terms
from .reduction import (
    BETA,
    Budget,
    ETA,
    joinable,
    normalize,
    redexes,
    reduction_graph,
)
from .generators import random_terms, random_theta_argument, random_traces
from .terms import (
    CURRY_Y,
    FLS,
    IDENT,
    OMEGA,
    THETA,
    TRU,
    app,
    lam,
    theta_n,
)
from .topology import (
    T0,
    T1,
    T2,
    T2HALF,
    _op_preimage,
    closure,
    enumerate_topologies,
    is_separated,
    n_step_hausdorff_in,
    product_space,
    separated,
    separated_in,
)
from .verdict import PROVED, REFUTED


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _is_single_beta_cycle(g) -> bool:
    if not g.complete or g.unresolved:
        return False
    if any(rule != BETA for _, _, rule in g.edges):
        return False
    if len(g.edges) != len(g.nodes):
        return False
    out = {n: 0 for n in g.nodes}
    for s, _, _ in g.edges:
        out[s] += 1
    if any(c != 1 for c in out.values()):
        return False
    # one outgoing edge per node and |E| = |V|: a single cycle iff the orbit
    # of the root covers every node
    succ = {s: t for s, t, _ in g.edges}
    seen = set()
    cur = g.root
    while cur not in seen:
        seen.add(cur)
        cur = succ[cur]
    return seen == g.nodes


def criterion_1() -> CriterionResult:
    t0 = time.time()
    g = reduction_graph(THETA, frozenset((BETA,)))
    ok = len(g.nodes) == 3 and _is_single_beta_cycle(g)
    return CriterionResult(
        1,
        "three-term cycle",
        ok,
        f"{len(g.nodes)} alpha-classes, single beta cycle: {_is_single_beta_cycle(g)}",
        time.time() - t0,
    )


def criterion_2() -> CriterionResult:
    t0 = time.time()
    budget = Budget(max_steps=400, max_nodes=400, max_term_size=5000)
    graphs = {
        n: reduction_graph(theta_n(n), frozenset((BETA, ETA)), budget)
        for n in range(6)
    }
    problems = []
    for n, m in itertools.combinations(range(6), 2):
        if not (graphs[n].complete and graphs[m].complete):
            problems.append(f"graph {n} or {m} incomplete")
        elif graphs[n].nodes & graphs[m].nodes:
            problems.append(f"graphs {n} and {m} intersect")
    for n in range(1, 6):
        if not _is_single_beta_cycle(graphs[n]):
            problems.append(f"graph {n} is not a single beta cycle")
    if OMEGA not in graphs[0].nodes:
        problems.append("variant 0 does not reach the looping term")
    ok = not problems
    sizes = [len(graphs[n].nodes) for n in range(6)]
    return CriterionResult(
        2,
        "indexed family graphs",
        ok,
        f"sizes {sizes}, pairwise disjoint, cycles for n>=1"
        if ok
        else "; ".join(problems[:3]),
        time.time() - t0,
    )


def criterion_3() -> CriterionResult:
    t0 = time.time()
    rng = random.Random(303)
    oracle = PiOracle(fuel=2, budget=Budget(40, 40, 2000))
    bad = 0
    for _ in range(100):
        m = random_theta_argument(rng, 12)
        if lambda_pi_eq(app(THETA, m, m), OMEGA, oracle) is not PROVED:
            bad += 1
    refuted = lambda_pi_eq(THETA, OMEGA, PiOracle(fuel=2)) is REFUTED
    ok = bad == 0 and refuted
    return CriterionResult(
        3,
        "subtraction axioms",
        ok,
        f"100 seeded diagonal instances proved ({bad} failures), "
        f"zero-vs-looping refuted: {refuted}",
        time.time() - t0,
    )


def criterion_4(count: int = 10_000) -> CriterionResult:
    t0 = time.time()
    oracle = PiOracle(fuel=2, budget=Budget(30, 30, 1000))
    peak_budget = Budget(40, 40, 1000)
    peaks = joined = unknown = 0
    counterexamples = 0
    for t in random_terms(404, count, max_size=14):
        succ, _ = oracle.successors(t)
        targets = sorted({u for u, _ in succ}, key=str)
        for a, b in itertools.combinations(targets, 2):
            peaks += 1
            v = joinable(
                a,
                b,
                frozenset((BETA, ETA)),
                peak_budget,
                successor_fn=oracle.successors,
            )
            if v is PROVED:
                joined += 1
            elif v is REFUTED:
                counterexamples += 1
            else:
                unknown += 1
    ok = counterexamples == 0 and peaks > 0
    return CriterionResult(
        4,
        "sampled confluence",
        ok,
        f"{count} terms, {peaks} peaks, {joined} joined, "
        f"{unknown} unresolved, {counterexamples} counterexamples",
        time.time() - t0,
    )


def criterion_5(count: int = 1000) -> CriterionResult:
    t0 = time.time()
    from .pi import validate_trace

    oracle = PiOracle(fuel=2, budget=Budget(40, 40, 1500))
    from .pi import factorize

    bad = 0
    pi_steps = 0
    for trace in random_traces(505, count, oracle=oracle):
        prefix, suffix = factorize(trace)
        whole = prefix + suffix
        if prefix and any(s.rule == "pi" for s in prefix):
            bad += 1
        elif any(s.rule != "pi" for s in suffix):
            bad += 1
        elif whole and (
            whole[0].before != trace[0].before or whole[-1].after != trace[-1].after
        ):
            bad += 1
        else:
            try:
                validate_trace(whole)
            except Exception:
                bad += 1
        pi_steps += sum(1 for s in trace if s.rule == "pi")
    ok = bad == 0
    return CriterionResult(
        5,
        "trace factorization",
        ok,
        f"{count} traces ({pi_steps} subtraction steps), {bad} factorization failures",
        time.time() - t0,
    )


def criterion_6(count: int = 3000) -> CriterionResult:
    t0 = time.time()
    oracle = PiOracle(fuel=2, budget=Budget(40, 40, 1500))
    nfs = set()
    for t in random_terms(606, count, max_size=14):
        r = normalize(t, Budget(200, 200, 2000))
        if r.status == "normal-form":
            nfs.add(r.term)
    violations = 0
    for nf in nfs:
        if redexes(nf):
            violations += 1
            continue
        if any(v is PROVED for _, v in oracle.pi_positions(nf)):
            violations += 1
    ok = violations == 0 and len(nfs) > 100
    return CriterionResult(
        6,
        "normal forms stay normal",
        ok,
        f"{len(nfs)} distinct normal forms, {violations} with a provable extra redex",
        time.time() - t0,
    )


def _k3_order_data():
    tables = all_binary_tables(3)
    orders, mask = compatible_order_mask(tables, 3)
    relates0 = [
        any(o[0][a] or o[a][0] for a in (1, 2)) for o in orders
    ]
    nontrivial = [o != eq_rel(3) for o in orders]
    return tables, orders, mask, relates0, nontrivial


def criterion_7() -> CriterionResult:
    t0 = time.time()
    tables, orders, mask, relates0, _ = _k3_order_data()
    subtractive = [
        bool(subtractive2_exists(tuple(int(v) for v in row), 3)) for row in tables
    ]
    unorder_viol = 0
    for i, is_sub in enumerate(subtractive):
        if not is_sub:
            continue
        if any(mask[i][j] and relates0[j] for j in range(len(orders))):
            unorder_viol += 1
    sym_viol = 0
    for i, is_sub in enumerate(subtractive):
        if not is_sub:
            continue
        A = FiniteAlgebra(
            3,
            (("f", 2),),
            (tuple(int(v) for v in tables[i]),),
            {"zero": 0},
        )
        if not is_0_symmetric(A, 0):
            sym_viol += 1
    n_sub = sum(subtractive)
    ok = unorder_viol == 0 and sym_viol == 0 and n_sub > 0
    return CriterionResult(
        7,
        "subtractive implies unorderable",
        ok,
        f"{n_sub}/{len(tables)} subtractive tables, "
        f"{unorder_viol} order violations, {sym_viol} symmetry violations",
        time.time() - t0,
    )


def criterion_8() -> CriterionResult:
    t0 = time.time()
    tables, orders, mask, _, nontrivial = _k3_order_data()
    orderable = [
        any(mask[i][j] and nontrivial[j] for j in range(len(orders)))
        for i in range(len(tables))
    ]
    violations = 0
    checked = 0
    for i, has_order in enumerate(orderable):
        if not has_order:
            continue
        checked += 1
        if malcev3_exists(tuple(int(v) for v in tables[i]), 3):
            violations += 1
    # non-vacuity: the cyclic group has witnesses and only the equality order
    z3 = z_mod(3)
    m = find_malcev_terms(z3, n=2, depth=3) or find_malcev_terms(z3, n=3, depth=3)
    z3_orders = list(enumerate_compatible_partial_orders(z3))
    vacuous = not (m and z3_orders == [eq_rel(3)])
    ok = violations == 0 and not vacuous
    return CriterionResult(
        8,
        "permutable implies rigid",
        ok,
        f"{checked} orderable tables, {violations} with witness terms; "
        f"cyclic-group control holds: {not vacuous}",
        time.time() - t0,
    )


def _is_2_subtractive_table(tab: tuple, k: int) -> bool:
    if k == 3:
        return bool(subtractive2_exists(tab, 3))
    A = FiniteAlgebra(k, (("f", 2),), (tab,), {"zero": 0})
    return find_subtractive_witnesses(A, 0, 2, 3) is not None


def criterion_9() -> CriterionResult:
    t0 = time.time()
    pairs = nondiscrete = fails = 0
    for k in (1, 2, 3):
        spaces = [s for s in enumerate_topologies(k) if is_separated(s, T0) or k == 1]
        prods = {s: product_space(s, 2) for s in spaces}
        for tab in itertools.product(range(k), repeat=k * k):
            if not _is_2_subtractive_table(tab, k):
                continue
            for s in spaces:
                prod = prods[s]
                if any(
                    _op_preimage(tab, k, 2, u) not in prod.opens for u in s.opens
                ):
                    continue
                pairs += 1
                if len(s.opens) < (1 << k):
                    nondiscrete += 1
                good = (
                    closure(s, 1) == 1
                    and (k == 1 or separated_in(s, 0, T1))
                    and all(separated(s, a, 0, T2HALF) for a in range(1, k))
                    and n_step_hausdorff_in(s, 0, 1)
                )
                if not good:
                    fails += 1
    ok = fails == 0 and pairs > 0 and nondiscrete > 0
    return CriterionResult(
        9,
        "separation sweep",
        ok,
        f"{pairs} continuous ordered-free pairs ({nondiscrete} non-discrete), "
        f"{fails} separation failures",
        time.time() - t0,
    )


def criterion_10() -> CriterionResult:
    t0 = time.time()
    mismatches = 0
    total = 0
    for k in (1, 2, 3):
        for s in enumerate_topologies(k):
            total += 1
            one_step = all(
                n_step_hausdorff_in(s, a, 1) for a in range(k)
            )
            if one_step != is_separated(s, T2):
                mismatches += 1
    ok = mismatches == 0
    return CriterionResult(
        10,
        "one-step iteration matches Hausdorff",
        ok,
        f"{total} spaces, {mismatches} mismatches",
        time.time() - t0,
    )


def _constant_fn(k: int, body):
    """lambda x1..xk. body, ignoring the arguments."""
    t = body
    for i in range(2 * k):
        t = lam(f"z{i}", t)
    return t


def jacopini_corpus() -> list:
    """(skeleton, witnesses) pairs whose links all hold by beta conversion."""
    bodies = [IDENT, TRU, FLS, app(IDENT, IDENT), lam("u", app(TRU, OMEGA))]
    p_pool = [IDENT, TRU, OMEGA, app(IDENT, FLS)]
    q_pool = [FLS, IDENT, THETA, TRU]
    out = []
    rng = random.Random(1111)
    while len(out) < 20:
        n = rng.choice((2, 3, 4, 5))
        k = rng.choice((1, 2))
        body = rng.choice(bodies)
        ps = [rng.choice(p_pool) for _ in range(k)]
        qs = [rng.choice(q_pool) for _ in range(k)]
        const = _constant_fn(k, body)
        sk = ProofSkeleton(
            left=app(IDENT, body),
            right=app(app(TRU, body), FLS),
            fs=[const for _ in range(n)],
            ps=ps,
            qs=qs,
        )
        out.append((sk, [const for _ in range(n - 1)]))
    return out


def criterion_11() -> CriterionResult:
    t0 = time.time()
    # cyclic arguments multiply graph states, so the link replay needs room
    oracle = PiOracle(fuel=2, budget=Budget(4000, 3000, 4000))
    bad = 0
    for sk, witnesses in jacopini_corpus():
        res = transform_proof(sk, witnesses, oracle)
        new = res.skeleton
        if new is None or len(new.fs) != len(sk.fs) - 1:
            bad += 1
            continue
        if new.left != sk.left or new.right != sk.right or res.assumptions:
            bad += 1
            continue
        if any(oracle.eq(l, r) is not PROVED for l, r in new.links()):
            bad += 1
    ok = bad == 0
    return CriterionResult(
        11,
        "chain shortening audit",
        ok,
        f"20 skeletons, {bad} transform failures",
        time.time() - t0,
    )


def criterion_12() -> CriterionResult:
    t0 = time.time()
    budget = Budget(150, 150, 2000)
    terms = plotkin_simpson_terms(CURRY_Y)
    d = terms["D"]
    v1 = joinable(d, terms["ThetaDD"], frozenset((BETA,)), budget)
    v2 = joinable(terms["YI"], OMEGA, frozenset((BETA,)), budget)
    ok = v1 is PROVED and v2 is PROVED
    return CriterionResult(
        12,
        "fixed-point diagonal joins",
        ok,
        f"D ~ Theta D D: {v1.name.lower()}, Y I ~ looping term: {v2.name.lower()}",
        time.time() - t0,
    )


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
)


def run_all(write=print) -> list:
    results = []
    for fn in CRITERIA:
        r = fn()
        results.append(r)
        write(r.line())
    passed = sum(r.ok for r in results)
    write(f"{passed}/{len(results)} criteria passed")
    return results
