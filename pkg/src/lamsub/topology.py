"""Finite topological spaces and topological algebras.

Subsets of the carrier range(k) are bitmasks; a space is its open-set family.
Separation axioms are evaluated exactly, both globally and relativized to a
pair or to one point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .algebra import FiniteAlgebra, rank_and_diagonals, validate_subtractive

T0 = "T0"
T1 = "T1"
T2 = "T2"
T2HALF = "T2half"


@dataclass(frozen=True)
class FiniteSpace:
    size: int
    opens: frozenset  # bitmask ints

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def member(self, a: int, mask: int) -> bool:
        return bool((mask >> a) & 1)

    def neighbourhoods(self, a: int):
        return [u for u in self.opens if (u >> a) & 1]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "opens": sorted(
                sorted(i for i in range(self.size) if (u >> i) & 1) for u in self.opens
            ),
        }

    @classmethod
    def from_json(cls, d: dict) -> "FiniteSpace":
        opens = frozenset(sum(1 << i for i in u) for u in d["opens"])
        return cls(d["size"], opens)

    @classmethod
    def load(cls, path) -> "FiniteSpace":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def discrete(k: int) -> FiniteSpace:
    return FiniteSpace(k, frozenset(range(1 << k)))


def indiscrete(k: int) -> FiniteSpace:
    return FiniteSpace(k, frozenset({0, (1 << k) - 1}))


def sierpinski() -> FiniteSpace:
    # opens: empty, {1}, {0,1}
    return FiniteSpace(2, frozenset({0, 0b10, 0b11}))


def validate_space(s: FiniteSpace):
    """(ok, first violation description or None)."""
    if 0 not in s.opens:
        return False, "empty set not open"
    if s.full not in s.opens:
        return False, "full set not open"
    for u in s.opens:
        for v in s.opens:
            if (u | v) not in s.opens:
                return False, f"union of {u:b} and {v:b} not open"
            if (u & v) not in s.opens:
                return False, f"intersection of {u:b} and {v:b} not open"
    return True, None


def closure(s: FiniteSpace, mask: int) -> int:
    """Smallest closed superset: complement of the union of opens avoiding
    the set."""
    comp = s.full & ~mask
    interior = 0
    for u in s.opens:
        if u & mask == 0:
            interior |= u
    return s.full & ~interior


def specialization(s: FiniteSpace):
    """a <= b iff every open containing a contains b; matrix form."""
    k = s.size
    rows = []
    for a in range(k):
        row = []
        for b in range(k):
            row.append(
                1 if all((u >> b) & 1 for u in s.opens if (u >> a) & 1) else 0
            )
        rows.append(tuple(row))
    return tuple(rows)


def separated(s: FiniteSpace, a: int, b: int, level: str) -> bool:
    if a == b:
        return False
    a_not_b = any((u >> a) & 1 and not (u >> b) & 1 for u in s.opens)
    b_not_a = any((u >> b) & 1 and not (u >> a) & 1 for u in s.opens)
    if level == T0:
        return a_not_b or b_not_a
    if level == T1:
        return a_not_b and b_not_a
    if level == T2:
        return any(
            (u >> a) & 1 and (v >> b) & 1 and u & v == 0
            for u in s.opens
            for v in s.opens
        )
    if level == T2HALF:
        return any(
            (u >> a) & 1 and (v >> b) & 1 and closure(s, u) & closure(s, v) == 0
            for u in s.opens
            for v in s.opens
        )
    raise ValueError(f"unknown separation level {level}")


def separated_in(s: FiniteSpace, a: int, level: str) -> bool:
    return all(separated(s, a, b, level) for b in range(s.size) if b != a)


def is_separated(s: FiniteSpace, level: str) -> bool:
    return all(
        separated(s, a, b, level)
        for a in range(s.size)
        for b in range(a + 1, s.size)
    )


def subspace(s: FiniteSpace, mask: int) -> "FiniteSpace":
    """Relative topology on the elements of mask, keeping their indices."""
    kept = [i for i in range(s.size) if (mask >> i) & 1]
    remap = {orig: new for new, orig in enumerate(kept)}
    opens = set()
    for u in s.opens:
        r = 0
        for orig in kept:
            if (u >> orig) & 1:
                r |= 1 << remap[orig]
        opens.add(r)
    return FiniteSpace(len(kept), frozenset(opens)), remap


def t0_quotient(s: FiniteSpace):
    """Quotient by mutual specialization, with the quotient topology."""
    spec = specialization(s)
    k = s.size
    classes = []
    rep = {}
    for a in range(k):
        for ci, c in enumerate(classes):
            b = c[0]
            if spec[a][b] and spec[b][a]:
                classes[ci].append(a)
                rep[a] = ci
                break
        else:
            rep[a] = len(classes)
            classes.append([a])
    q = len(classes)
    opens = set()
    for u in s.opens:
        m = 0
        for a in range(k):
            if (u >> a) & 1:
                m |= 1 << rep[a]
        # quotient topology: image must be a union of full classes
        back = 0
        for ci in range(q):
            if (m >> ci) & 1:
                for a in classes[ci]:
                    back |= 1 << a
        if back == u:
            opens.add(m)
    return FiniteSpace(q, frozenset(opens)), classes


def coconnected(s: FiniteSpace) -> bool:
    """Closures of any two nonempty opens intersect."""
    return all(
        closure(s, u) & closure(s, v) != 0
        for u in s.opens
        if u
        for v in s.opens
        if v
    )


# ---------------------------------------------------------------------------
# Product topologies and continuity


@lru_cache(maxsize=None)
def _product_space(k: int, opens: frozenset, n: int) -> FiniteSpace:
    """Topology on carrier k^n generated by boxes of opens; cells are indexed
    row-major by the tuple (last coordinate fastest)."""
    cells = list(itertools.product(range(k), repeat=n))
    boxes = set()
    for combo in itertools.product(sorted(opens), repeat=n):
        m = 0
        for ci, cell in enumerate(cells):
            if all((combo[d] >> cell[d]) & 1 for d in range(n)):
                m |= 1 << ci
        boxes.add(m)
    # close under union and intersection
    fam = set(boxes)
    frontier = set(boxes)
    while frontier:
        new = set()
        for u in frontier:
            for v in fam:
                for w in (u | v, u & v):
                    if w not in fam:
                        new.add(w)
        fam |= new
        frontier = new
    return FiniteSpace(k ** n, frozenset(fam))


def product_space(s: FiniteSpace, n: int) -> FiniteSpace:
    return _product_space(s.size, s.opens, n)


def _op_preimage(table, k: int, n: int, open_mask: int) -> int:
    pre = 0
    for idx in range(k ** n):
        if (open_mask >> table[idx]) & 1:
            pre |= 1 << idx
    return pre


def unary_polynomials(A: FiniteAlgebra) -> set:
    """All unary polynomial functions of A, as value tuples; the composition
    closure of basic operations with all but one argument frozen."""
    k = A.size
    ident = tuple(range(k))
    consts = [tuple(c for _ in range(k)) for c in range(k)]
    fam = {ident} | set(consts)
    changed = True
    while changed:
        changed = False
        for (name, arity), tab in zip(A.signature, A.tables):
            if arity == 0:
                continue
            for combo in itertools.product(sorted(fam), repeat=arity):
                idx = [0] * k
                for f in combo:
                    for x in range(k):
                        idx[x] = idx[x] * k + f[x]
                nf = tuple(tab[i] for i in idx)
                if nf not in fam:
                    fam.add(nf)
                    changed = True
    return fam


def check_top_algebra(A: FiniteAlgebra, s: FiniteSpace, mode: str = "topological"):
    """(ok, witness).  topological: every basic operation is continuous for
    the product topology; semitopological: every unary polynomial is
    continuous.  The witness names the first failing operation and open set."""
    if A.size != s.size:
        raise ValueError("carrier mismatch")
    k = A.size
    if mode == "topological":
        for (name, arity), tab in zip(A.signature, A.tables):
            if arity == 0:
                continue
            prod = product_space(s, arity)
            for u in s.opens:
                pre = _op_preimage(tab, k, arity, u)
                if pre not in prod.opens:
                    return False, (name, u)
        return True, None
    if mode == "semitopological":
        for f in sorted(unary_polynomials(A)):
            for u in s.opens:
                pre = 0
                for x in range(k):
                    if (u >> f[x]) & 1:
                        pre |= 1 << x
                if pre not in s.opens:
                    return False, (f, u)
        return True, None
    raise ValueError(f"unknown mode {mode}")


def operations_monotone(A: FiniteAlgebra, s: FiniteSpace):
    """Companion to the continuity check: every basic operation is monotone
    for the specialization preorder (continuous maps between finite spaces
    are monotone)."""
    spec = specialization(s)
    k = A.size
    for (name, arity), tab in zip(A.signature, A.tables):
        for xs in itertools.product(range(k), repeat=arity):
            for ys in itertools.product(range(k), repeat=arity):
                if all(spec[x][y] for x, y in zip(xs, ys)):
                    ia = ib = 0
                    for x, y in zip(xs, ys):
                        ia = ia * k + x
                        ib = ib * k + y
                    if not spec[tab[ia]][tab[ib]]:
                        return False, (name, xs, ys)
    return True, None


# ---------------------------------------------------------------------------
# Gamma iteration


def gamma_iteration(s: FiniteSpace, a: int) -> list:
    """Masks Gamma_0(a), Gamma_1(a), ... up to the fixpoint (inclusive)."""
    out = [0]
    while True:
        prev = out[-1]
        nxt = 0
        for b in range(s.size):
            if any(
                (u >> a) & 1 and (v >> b) & 1 and (u & v) & ~prev == 0
                for u in s.opens
                for v in s.opens
            ):
                nxt |= 1 << b
        # a point never separates from itself: any opens around a intersect at a
        if nxt == prev:
            return out
        out.append(nxt)


def n_step_hausdorff_in(s: FiniteSpace, a: int, n: int) -> bool:
    gs = gamma_iteration(s, a)
    g = gs[min(n, len(gs) - 1)]
    return g == s.full & ~(1 << a)


def is_n_step_hausdorff(s: FiniteSpace, n: int) -> bool:
    return all(n_step_hausdorff_in(s, a, n) for a in range(s.size))


# ---------------------------------------------------------------------------
# Topology enumeration (exhaustive for small carriers)


def enumerate_topologies(k: int) -> list:
    """All topologies on range(k); exhaustive filter of subset families,
    feasible for k <= 3."""
    if k > 3:
        raise ValueError("exhaustive topology enumeration is limited to k <= 3")
    full = (1 << k) - 1
    proper = [m for m in range(1, full)]
    out = []
    for bits in range(1 << len(proper)):
        fam = {0, full}
        for i, m in enumerate(proper):
            if (bits >> i) & 1:
                fam.add(m)
        ok = True
        for u in fam:
            for v in fam:
                if (u | v) not in fam or (u & v) not in fam:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(FiniteSpace(k, frozenset(fam)))
    return sorted(out, key=lambda sp: sorted(sp.opens))


# ---------------------------------------------------------------------------
# Subtractive separation suite


def subtractive_separation_suite(
    A: FiniteAlgebra, s: FiniteSpace, zero: int, witnesses: list
) -> dict:
    """Evaluate the separation consequences of n-subtractivity on one
    topological algebra instance; each entry is True, False, or the string
    'not-applicable' when its preconditions fail."""
    report = {}
    ok, err = validate_space(s)
    if not ok:
        raise ValueError(f"invalid space: {err}")
    if not validate_subtractive(A, zero, witnesses):
        raise ValueError("witnesses do not satisfy the subtractive identities")
    n = len(witnesses) + 1
    k = A.size
    semi, _ = check_top_algebra(A, s, "semitopological")
    top, _ = check_top_algebra(A, s, "topological")
    t0 = is_separated(s, T0) if k > 1 else True
    report["mode"] = {
        "semitopological": semi,
        "topological": top,
        "T0": t0,
        "n": n,
    }
    kappa, diags = rank_and_diagonals(A, zero, witnesses)
    r_sets = {
        i: sum(1 << a for a in range(k) if a != zero and kappa[a] is not None and kappa[a] <= i)
        for i in range(n)
    }
    sigma = {}
    for i in range(1, n + 1):
        m = 0
        for a in range(k):
            if any(
                (u >> a) & 1 and (v >> zero) & 1 and (u & v) & ~r_sets.get(i - 1, 0) == 0
                for u in s.opens
                for v in s.opens
            ):
                m |= 1 << a
        sigma[i] = m
    report["kappa"] = kappa
    report["R"] = r_sets
    report["Sigma"] = sigma

    if semi and t0:
        report["zero_singleton_closed"] = closure(s, 1 << zero) == 1 << zero
        report["diagonals_closed"] = all(
            closure(s, sum(1 << a for a in d)) == sum(1 << a for a in d)
            for d in diags.values()
        )
        report["t1_separated_in_zero"] = (
            separated_in(s, zero, T1) if k > 1 else True
        )
    else:
        report["zero_singleton_closed"] = "not-applicable"
        report["diagonals_closed"] = "not-applicable"
        report["t1_separated_in_zero"] = "not-applicable"

    if semi:
        report["r_sets_open"] = all(m in s.opens for m in r_sets.values())
        report["sigma_open"] = all(m in s.opens for m in sigma.values())
        report["r_below_sigma"] = all(
            r_sets[i - 1] & ~sigma[i] == 0 for i in range(1, n + 1)
        )
    else:
        report["r_sets_open"] = "not-applicable"
        report["sigma_open"] = "not-applicable"
        report["r_below_sigma"] = "not-applicable"

    if top and t0:
        report["rank_in_sigma"] = all(
            (sigma[kappa[a]] >> a) & 1
            for a in range(k)
            if a != zero and kappa[a] is not None
        )
        report["sigma_last_full"] = sigma[n - 1] == s.full & ~(1 << zero) if n >= 2 else "not-applicable"
        # pairwise separation from zero needs s_1(a, 0) != 0
        fn1 = _binary_term_fn(A, witnesses[0])
        report["t2half_from_zero"] = all(
            separated(s, a, zero, T2HALF)
            for a in range(k)
            if a != zero and fn1[a * k + zero] != zero
        )
        report["n_minus_1_step_hausdorff_in_zero"] = n_step_hausdorff_in(
            s, zero, n - 1
        )
    else:
        report["rank_in_sigma"] = "not-applicable"
        report["sigma_last_full"] = "not-applicable"
        report["t2half_from_zero"] = "not-applicable"
        report["n_minus_1_step_hausdorff_in_zero"] = "not-applicable"
    return report


def _binary_term_fn(A: FiniteAlgebra, t) -> tuple:
    from .algebra import _term_fn

    return _term_fn(A, t, ("x", "y"))


def term_separation_check(A: FiniteAlgebra, s: FiniteSpace, t, a: int, b: int) -> str:
    """For a semitopological algebra: if t(a,a) = t(b,b), t(a,b) != t(a,a)
    and t(a,b), t(a,a) are T0-separated, then a, b are T1-separated.

    Returns 'holds', 'violated' or 'not-applicable'."""
    if a == b or A.size < 2:
        return "not-applicable"
    semi, _ = check_top_algebra(A, s, "semitopological")
    if not semi:
        return "not-applicable"
    fn = _binary_term_fn(A, t)
    k = A.size
    taa, tbb, tab = fn[a * k + a], fn[b * k + b], fn[a * k + b]
    if taa != tbb or tab == taa or not separated(s, tab, taa, T0):
        return "not-applicable"
    return "holds" if separated(s, a, b, T1) else "violated"


# ---------------------------------------------------------------------------
# DOT export


def specialization_dot(s: FiniteSpace) -> str:
    spec = specialization(s)
    lines = ["digraph specialization {", "  rankdir=BT;"]
    for a in range(s.size):
        lines.append(f'  n{a} [label="{a}"];')
    for a in range(s.size):
        for b in range(s.size):
            if a != b and spec[a][b]:
                lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)
