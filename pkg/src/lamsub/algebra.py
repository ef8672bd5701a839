"""Finite algebras: operation tables, compatible relations, order
enumeration, subtractive and Mal'cev witness search, ranks and components.

Carriers are range(k); operation tables are flat tuples in row-major order
(last argument varies fastest).  Binary relations are k x k boolean matrices
stored as tuples of tuples so they hash.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

MAX_ORDER_ENUM = 6  # guard for explicit order enumeration


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    signature: tuple  # ((name, arity), ...)
    tables: tuple  # one flat tuple per operation, row-major
    constants: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        if len(self.signature) != len(self.tables):
            raise ValueError("one table per operation")
        for (name, arity), tab in zip(self.signature, self.tables):
            if len(tab) != self.size ** arity:
                raise ValueError(f"table for {name} has wrong length")
            if any(not 0 <= v < self.size for v in tab):
                raise ValueError(f"table for {name} out of range")
        for cname, v in self.constants.items():
            if not 0 <= v < self.size:
                raise ValueError(f"constant {cname} out of range")

    def op(self, name: str):
        """The named operation as a python callable."""
        for i, (n, arity) in enumerate(self.signature):
            if n == name:
                tab = self.tables[i]
                k = self.size

                def f(*args, _tab=tab, _k=k, _ar=arity):
                    if len(args) != _ar:
                        raise ValueError(f"{name} takes {_ar} arguments")
                    idx = 0
                    for a in args:
                        idx = idx * _k + a
                    return _tab[idx]

                return f
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "signature": [[n, a] for n, a in self.signature],
            "tables": [list(t) for t in self.tables],
            "constants": dict(self.constants),
        }

    @classmethod
    def from_json(cls, d: dict) -> "FiniteAlgebra":
        return cls(
            size=d["size"],
            signature=tuple((n, a) for n, a in d["signature"]),
            tables=tuple(tuple(t) for t in d["tables"]),
            constants=dict(d.get("constants", {})),
        )

    @classmethod
    def load(cls, path) -> "FiniteAlgebra":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def z2_xor() -> FiniteAlgebra:
    return FiniteAlgebra(2, (("add", 2),), ((0, 1, 1, 0),), {"0": 0})


def meet_semilattice2() -> FiniteAlgebra:
    return FiniteAlgebra(2, (("meet", 2),), ((0, 0, 0, 1),), {"0": 0})


def z_mod(k: int) -> FiniteAlgebra:
    tab = tuple((a + b) % k for a in range(k) for b in range(k))
    return FiniteAlgebra(k, (("add", 2),), (tab,), {"0": 0})


# ---------------------------------------------------------------------------
# Algebraic terms


@dataclass(frozen=True)
class AlgTerm:
    """head is a variable name or an operation name; args empty for variables
    and constants."""

    head: str
    args: tuple = ()

    def variables(self) -> set:
        if not self.args and not self.head.isidentifier():
            return set()
        if not self.args:
            return {self.head}
        out = set()
        for a in self.args:
            out |= a.variables()
        return out

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def __str__(self):
        if not self.args:
            return self.head
        return f"{self.head}({', '.join(map(str, self.args))})"


def evaluate(A: FiniteAlgebra, t: AlgTerm, env: dict) -> int:
    if not t.args:
        if t.head in env:
            return env[t.head]
        if t.head in A.constants:
            return A.constants[t.head]
        raise KeyError(f"unbound variable {t.head}")
    f = A.op(t.head)
    return f(*(evaluate(A, a, env) for a in t.args))


# ---------------------------------------------------------------------------
# Compatible relations


def eq_rel(k: int):
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def _to_mat(k, pairs):
    m = [[0] * k for _ in range(k)]
    for i in range(k):
        m[i][i] = 1
    for a, b in pairs:
        m[a][b] = 1
    return m


def _freeze(m):
    return tuple(tuple(row) for row in m)


def is_reflexive(r) -> bool:
    return all(r[i][i] for i in range(len(r)))


def is_transitive(r) -> bool:
    k = len(r)
    return all(
        not (r[a][b] and r[b][c]) or r[a][c]
        for a in range(k)
        for b in range(k)
        for c in range(k)
    )


def is_antisymmetric(r) -> bool:
    k = len(r)
    return all(not (r[a][b] and r[b][a]) or a == b for a in range(k) for b in range(k))


def is_compatible(A: FiniteAlgebra, r) -> bool:
    """r is compatible when every operation maps related tuples to related
    results."""
    k = A.size
    related = [(a, b) for a in range(k) for b in range(k) if r[a][b]]
    for (name, arity), tab in zip(A.signature, A.tables):
        for combo in itertools.product(related, repeat=arity):
            ia = ib = 0
            for a, b in combo:
                ia = ia * k + a
                ib = ib * k + b
            if not r[tab[ia]][tab[ib]]:
                return False
    return True


def compatible_closure(A: FiniteAlgebra, seed) -> tuple:
    """Least reflexive transitive compatible relation containing the seed
    (given as a relation matrix or an iterable of pairs)."""
    k = A.size
    seed = list(seed)
    if len(seed) == k and all(
        isinstance(row, (tuple, list)) and len(row) == k and set(row) <= {0, 1}
        for row in seed
    ):
        m = [list(row) for row in seed]
        for i in range(k):
            m[i][i] = 1
    else:
        m = _to_mat(k, seed)
    changed = True
    while changed:
        changed = False
        # transitive closure
        for b in range(k):
            for a in range(k):
                if m[a][b]:
                    row = m[b]
                    ma = m[a]
                    for c in range(k):
                        if row[c] and not ma[c]:
                            ma[c] = 1
                            changed = True
        # one-step operation compatibility
        related = [(a, b) for a in range(k) for b in range(k) if m[a][b]]
        for (name, arity), tab in zip(A.signature, A.tables):
            for combo in itertools.product(related, repeat=arity):
                ia = ib = 0
                for a, b in combo:
                    ia = ia * k + a
                    ib = ib * k + b
                if not m[tab[ia]][tab[ib]]:
                    m[tab[ia]][tab[ib]] = 1
                    changed = True
    return _freeze(m)


def enumerate_partial_orders(k: int):
    """All partial orders on range(k), in lexicographic matrix order."""
    if k > MAX_ORDER_ENUM:
        raise ValueError(f"carrier too large for order enumeration (> {MAX_ORDER_ENUM})")
    offdiag = [(a, b) for a in range(k) for b in range(k) if a != b]

    out = []

    def extend(i, pairs):
        if i == len(offdiag):
            m = _to_mat(k, pairs)
            if is_transitive(m):
                out.append(_freeze(m))
            return
        a, b = offdiag[i]
        extend(i + 1, pairs)
        if (b, a) not in pairs:
            # antisymmetry pruning plus partial transitivity pruning
            new = pairs | {(a, b)}
            ok = True
            for c, d in new:
                for e, f in new:
                    if d == e and (c, f) != (c, d) and c != f and (f, c) in new:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                extend(i + 1, new)

    extend(0, frozenset())
    # lexicographic matrix order
    return sorted(set(out))


def enumerate_compatible_partial_orders(A: FiniteAlgebra):
    for r in enumerate_partial_orders(A.size):
        if is_compatible(A, r):
            yield r


def enumerate_compatible_preorders(A: FiniteAlgebra, union_budget: int = 2):
    """Compatible preorders obtained as compatible closures of single-pair
    seeds and unions of up to union_budget of them, deduplicated.  Full
    preorder enumeration is exponential; this covers all closures of small
    generating sets."""
    k = A.size
    singles = []
    seen = set()
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            c = compatible_closure(A, [(a, b)])
            if c not in seen:
                seen.add(c)
                singles.append(c)
    eq = eq_rel(k)
    if eq not in seen:
        seen.add(eq)
    frontier = list(seen)
    for _ in range(union_budget - 1):
        new = []
        for c1 in frontier:
            for c2 in singles:
                merged = tuple(
                    tuple(x | y for x, y in zip(r1, r2)) for r1, r2 in zip(c1, c2)
                )
                c = compatible_closure(A, merged)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        if not new:
            break
        frontier = new
    return sorted(seen)


def is_0_unorderable(A: FiniteAlgebra, zero: int = 0) -> bool:
    """No compatible partial order relates zero to any other element."""
    for r in enumerate_compatible_partial_orders(A):
        for a in range(A.size):
            if a != zero and (r[zero][a] or r[a][zero]):
                return False
    return True


def is_0_symmetric(A: FiniteAlgebra, zero: int = 0) -> bool:
    """Every compatible preorder relates zero to a iff it relates a to zero."""
    for r in enumerate_compatible_preorders(A):
        for a in range(A.size):
            if r[zero][a] != r[a][zero]:
                return False
    return True


# ---------------------------------------------------------------------------
# Term enumeration and witness search

# terms are enumerated by size, then operator order (signature order, with
# variables and 0 first), then left-to-right argument order


def enumerate_terms(A: FiniteAlgebra, variables: tuple, max_size: int):
    """All AlgTerms over the given variables and the constant 0, in
    size-then-lex order."""
    leaves = [AlgTerm(v) for v in variables]
    if "0" in A.constants:
        leaves.append(AlgTerm("0"))
    by_size = {1: list(leaves)}
    yield from by_size[1]
    for s in range(2, max_size + 1):
        level = []
        for name, arity in A.signature:
            if arity == 0:
                continue
            # partition remaining size among the arguments
            for split in _compositions(s - 1, arity):
                pools = [by_size.get(part, []) for part in split]
                for args in itertools.product(*pools):
                    level.append(AlgTerm(name, tuple(args)))
        by_size[s] = level
        yield from level


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _term_fn(A: FiniteAlgebra, t: AlgTerm, variables: tuple):
    """The induced operation as a flat tuple over carrier^len(variables)."""
    k = A.size
    vals = []
    for env_vals in itertools.product(range(k), repeat=len(variables)):
        vals.append(evaluate(A, t, dict(zip(variables, env_vals))))
    return tuple(vals)


def function_catalog(A: FiniteAlgebra, variables: tuple, depth: int) -> dict:
    """function tuple -> canonical AlgTerm, over terms of the given depth.

    Enumerates bottom-up over induced functions instead of raw terms, one
    composition round per depth level; within a round candidates are ranked
    by (size, text) so canonical witnesses are deterministic.
    """
    k = A.size
    nvars = len(variables)
    envs = list(itertools.product(range(k), repeat=nvars))
    reps = {}
    for i, v in enumerate(variables):
        f = tuple(env[i] for env in envs)
        if f not in reps:
            reps[f] = AlgTerm(v)
    for cname, cval in A.constants.items():
        f = tuple(cval for _ in envs)
        if f not in reps:
            reps[f] = AlgTerm(cname)
    ne = len(envs)
    for _ in range(depth):
        items = list(reps.items())
        cands = []
        for opi, (name, arity) in enumerate(A.signature):
            if arity == 0:
                continue
            tab = A.tables[opi]
            for combo in itertools.product(items, repeat=arity):
                idx = [0] * ne
                for f, _ in combo:
                    for e in range(ne):
                        idx[e] = idx[e] * k + f[e]
                nf = tuple(tab[i] for i in idx)
                if nf not in reps:
                    t = AlgTerm(name, tuple(t for _, t in combo))
                    cands.append((t.size(), str(t), nf, t))
        cands.sort(key=lambda c: (c[0], c[1]))
        for _, _, nf, t in cands:
            if nf not in reps:
                reps[nf] = t
    return reps


def find_subtractive_witnesses(A: FiniteAlgebra, zero: int = 0, n: int = 2, depth: int = 3):
    """First (size-then-lex) tuple s_1..s_{n-1} of binary terms satisfying
    0 = s_1(x,x);  s_i(x,0) = s_{i+1}(x,x);  s_{n-1}(x,0) = x  on all of A.

    Returns the list of AlgTerms or None.  Search is over term-induced
    functions, deduplicated, keeping the first term for each function.
    """
    if n < 2:
        raise ValueError("n-subtractivity needs n >= 2")
    k = A.size
    funcs = function_catalog(A, ("x", "y"), depth)

    def diag(f):  # x -> f(x, x)
        return tuple(f[a * k + a] for a in range(k))

    def at_zero(f):  # x -> f(x, 0)
        return tuple(f[a * k + zero] for a in range(k))

    zero_fn = tuple(zero for _ in range(k))
    ident = tuple(range(k))

    # chain: diag(s1) = const zero; at_zero(s_i) = diag(s_{i+1}); at_zero(s_{n-1}) = id
    starts = [(f, t) for f, t in funcs.items() if diag(f) == zero_fn]
    if n == 2:
        for f, t in starts:
            if at_zero(f) == ident:
                return [t]
        return None
    by_diag = {}
    for f, t in funcs.items():
        by_diag.setdefault(diag(f), []).append((f, t))
    # breadth-limited chain search preserving enumeration order
    chains = [([t], at_zero(f)) for f, t in starts]
    for _ in range(n - 3):
        nxt = []
        for terms, need in chains:
            for f, t in by_diag.get(need, []):
                nxt.append((terms + [t], at_zero(f)))
        chains = nxt
    for terms, need in chains:
        for f, t in by_diag.get(need, []):
            if at_zero(f) == ident:
                return terms + [t]
    return None


def find_malcev_terms(A: FiniteAlgebra, n: int = 2, depth: int = 3):
    """First tuple p_1..p_{n-1} of ternary terms with  x = p_1(x,y,y);
    p_i(x,x,y) = p_{i+1}(x,y,y);  p_{n-1}(x,x,y) = y  on all of A."""
    if n < 2:
        raise ValueError("Mal'cev chains need n >= 2")
    k = A.size
    funcs = function_catalog(A, ("x", "y", "z"), depth)

    def r_xyy(f):  # (x, y) -> f(x, y, y)
        return tuple(f[(a * k + b) * k + b] for a in range(k) for b in range(k))

    def r_xxy(f):  # (x, y) -> f(x, x, y)
        return tuple(f[(a * k + a) * k + b] for a in range(k) for b in range(k))

    proj1 = tuple(a for a in range(k) for _ in range(k))
    proj2 = tuple(b for _ in range(k) for b in range(k))

    starts = [(f, t) for f, t in funcs.items() if r_xyy(f) == proj1]
    if n == 2:
        for f, t in starts:
            if r_xxy(f) == proj2:
                return [t]
        return None
    by_xyy = {}
    for f, t in funcs.items():
        by_xyy.setdefault(r_xyy(f), []).append((f, t))
    chains = [([t], r_xxy(f)) for f, t in starts]
    for _ in range(n - 3):
        nxt = []
        for terms, need in chains:
            for f, t in by_xyy.get(need, []):
                nxt.append((terms + [t], r_xxy(f)))
        chains = nxt
    for terms, need in chains:
        for f, t in by_xyy.get(need, []):
            if r_xxy(f) == proj2:
                return terms + [t]
    return None


# ---------------------------------------------------------------------------
# Ranks, diagonals, components


def validate_subtractive(A: FiniteAlgebra, zero: int, witnesses: list) -> bool:
    k = A.size
    fns = [_term_fn(A, w, ("x", "y")) for w in witnesses]
    n = len(fns) + 1
    for a in range(k):
        if fns[0][a * k + a] != zero:
            return False
    for i in range(n - 2):
        for a in range(k):
            if fns[i][a * k + zero] != fns[i + 1][a * k + a]:
                return False
    for a in range(k):
        if fns[-1][a * k + zero] != a:
            return False
    return True


def rank_and_diagonals(A: FiniteAlgebra, zero: int, witnesses: list):
    """kappa(a) = least i with s_i(a, 0) != 0 (kappa(0) = None); Diag_i =
    {a : s_i(a, a) = 0}."""
    if not validate_subtractive(A, zero, witnesses):
        raise ValueError("witnesses do not satisfy the subtractive identities")
    k = A.size
    fns = [_term_fn(A, w, ("x", "y")) for w in witnesses]
    kappa = {}
    for a in range(k):
        if a == zero:
            kappa[a] = None
            continue
        for i, f in enumerate(fns, start=1):
            if f[a * k + zero] != zero:
                kappa[a] = i
                break
        else:
            kappa[a] = None
    diags = {
        i: frozenset(a for a in range(k) if f[a * k + a] == zero)
        for i, f in enumerate(fns, start=1)
    }
    return kappa, diags


def connected_components(order) -> list:
    """Classes of the least equivalence containing a partial order."""
    k = len(order)
    if not (is_reflexive(order) and is_transitive(order) and is_antisymmetric(order)):
        raise ValueError("not a partial order")
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(k):
        for b in range(k):
            if order[a][b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(a)
    return sorted(sorted(g) for g in groups.values())


def subtraction_sequence_check(
    A: FiniteAlgebra, theta: int, omega: int, order, p: int, q: int, max_len: int = 16
):
    """In an applicative algebra (binary operation `app`), build the sequence
    e_1 = theta p q, e_{j+1} = theta e_j omega and check the component
    separation consequence: if e_1 != omega then p and q lie in distinct
    components of the given compatible order.

    Returns a dict with the sequence and a status among 'consistent',
    'violation' and 'laws-failed'."""
    ap = A.op("app")
    # the subtractive law available here: theta a a = omega for all a
    if any(ap(ap(theta, a), a) != omega for a in range(A.size)):
        return {"status": "laws-failed", "sequence": []}
    if not is_compatible(A, order):
        raise ValueError("order is not compatible")
    seq = [ap(ap(theta, p), q)]
    for _ in range(max_len - 1):
        seq.append(ap(ap(theta, seq[-1]), omega))
        if seq[-1] == seq[-2]:
            break
    if seq[0] == omega:
        return {"status": "consistent", "sequence": seq}
    comps = connected_components(order)
    same = any(p in c and q in c for c in comps)
    return {"status": "violation" if same else "consistent", "sequence": seq}


# ---------------------------------------------------------------------------
# Vectorized sweep helpers (numpy over all one-binary-op tables)


def all_binary_tables(k: int = 3) -> np.ndarray:
    """All k^(k*k) one-binary-op tables as an (N, k*k) array."""
    n = k * k
    count = k ** n
    idx = np.arange(count)
    cols = []
    for pos in range(n):
        cols.append((idx // (k ** (n - 1 - pos))) % k)
    return np.stack(cols, axis=1).astype(np.int8)


def compatible_order_mask(tables: np.ndarray, k: int = 3):
    """For every table, the list of compatible nontrivial partial orders.

    Returns (orders, mask) where orders is the list of all partial orders on
    range(k) and mask[i, j] says order j is compatible with table i."""
    orders = enumerate_partial_orders(k)
    N = tables.shape[0]
    mask = np.ones((N, len(orders)), dtype=bool)
    for j, r in enumerate(orders):
        rel = [(a, b) for a in range(k) for b in range(k) if r[a][b]]
        m = np.array(r, dtype=bool)
        ok = np.ones(N, dtype=bool)
        for (a, b) in rel:
            for (c, d) in rel:
                ra = tables[:, a * k + c]
                rb = tables[:, b * k + d]
                ok &= m[ra, rb]
        mask[:, j] = ok
    return orders, mask


def binary_function_closure(table: np.ndarray, k: int, depth: int) -> np.ndarray:
    """Functions A^2 -> A induced by binary terms of the given depth over one
    binary operation, the variables x, y and the constant 0; returned as an
    (m, k*k) array, deduplicated."""
    n = k * k
    x = np.repeat(np.arange(k), k)
    y = np.tile(np.arange(k), k)
    zero = np.zeros(n, dtype=np.int64)
    fns = np.stack([x, y, zero]).astype(np.int64)
    for _ in range(depth):
        m = fns.shape[0]
        left = np.repeat(fns, m, axis=0)
        right = np.tile(fns, (m, 1))
        new = table[left * k + right]
        fns = np.unique(np.concatenate([fns, new]), axis=0)
    return fns


def ternary_function_closure(table: np.ndarray, k: int, depth: int) -> np.ndarray:
    n = k * k * k
    grid = np.indices((k, k, k)).reshape(3, n)
    zero = np.zeros((1, n), dtype=np.int64)
    fns = np.concatenate([grid, zero]).astype(np.int64)
    for _ in range(depth):
        m = fns.shape[0]
        left = np.repeat(fns, m, axis=0)
        right = np.tile(fns, (m, 1))
        new = table[left * k + right]
        fns = np.unique(np.concatenate([fns, new]), axis=0)
    return fns


def has_subtractive_function(table: np.ndarray, k: int = 3, n: int = 2, depth: int = 3) -> bool:
    """Existence version of find_subtractive_witnesses over one binary table
    (zero = 0), via the vectorized function closure."""
    fns = binary_function_closure(np.asarray(table, dtype=np.int64), k, depth)
    diag_idx = np.array([a * k + a for a in range(k)])
    zero_idx = np.array([a * k + 0 for a in range(k)])
    diags = fns[:, diag_idx]
    at_zero = fns[:, zero_idx]
    ident = np.arange(k)
    start = (diags == 0).all(axis=1)
    if n == 2:
        return bool((start & (at_zero == ident).all(axis=1)).any())
    # chain through intermediate diagonals
    reachable = {tuple(v) for v in at_zero[start]}
    for _ in range(n - 2):
        if tuple(ident) in {
            tuple(v)
            for i, v in enumerate(at_zero)
            if tuple(diags[i]) in reachable
        }:
            return True
        reachable = {
            tuple(v) for i, v in enumerate(at_zero) if tuple(diags[i]) in reachable
        }
    return tuple(ident) in reachable


def has_malcev_function(table: np.ndarray, k: int = 3, n: int = 3, depth: int = 3) -> bool:
    """Existence version of find_malcev_terms over one binary table."""
    fns = ternary_function_closure(np.asarray(table, dtype=np.int64), k, depth)
    xyy = np.array([(a * k + b) * k + b for a in range(k) for b in range(k)])
    xxy = np.array([(a * k + a) * k + b for a in range(k) for b in range(k)])
    proj1 = np.repeat(np.arange(k), k)
    proj2 = np.tile(np.arange(k), k)
    r1 = fns[:, xyy]
    r2 = fns[:, xxy]
    start = (r1 == proj1).all(axis=1)
    # n = 2 directly; larger n chains via intermediate restrictions
    if bool((start & (r2 == proj2).all(axis=1)).any()):
        return True
    if n == 2:
        return False
    reachable = {tuple(v) for v in r2[start]}
    for _ in range(n - 2):
        hits = [i for i in range(fns.shape[0]) if tuple(r1[i]) in reachable]
        if any((r2[i] == proj2).all() for i in hits):
            return True
        reachable = {tuple(r2[i]) for i in hits}
    return False


def _unique_rows(fns: np.ndarray, k: int) -> np.ndarray:
    powers = k ** np.arange(fns.shape[1], dtype=np.int64)
    enc = fns @ powers
    _, idx = np.unique(enc, return_index=True)
    return fns[np.sort(idx)]


def subtractive2_exists(table: np.ndarray, k: int = 3) -> bool:
    """Is there a depth <= 3 binary term s with s(x,x) = 0 and s(x,0) = x?

    Builds the depth-2 function set, then tests all depth-3 combinations on
    the five constrained coordinates only."""
    table = np.asarray(table, dtype=np.int64)
    n = k * k
    x = np.repeat(np.arange(k), k)
    y = np.tile(np.arange(k), k)
    zero = np.zeros(n, dtype=np.int64)
    fns = np.stack([x, y, zero])
    for _ in range(2):
        m = fns.shape[0]
        new = table[np.repeat(fns, m, axis=0) * k + np.tile(fns, (m, 1))]
        fns = _unique_rows(np.concatenate([fns, new]), k)
    diag = np.array([a * k + a for a in range(k)])
    at0 = np.array([a * k for a in range(k)])
    ident = np.arange(k)
    good = (fns[:, diag] == 0).all(axis=1) & (fns[:, at0] == ident).all(axis=1)
    if good.any():
        return True
    # depth-3 layer, constrained coordinates only
    coords = sorted(set(diag.tolist()) | set(at0.tolist()))
    want = {}
    for c in diag:
        want[c] = 0
    for a in range(k):
        want[a * k] = a  # overwrites the diag entry at 0, both demand 0 there
    g = fns[:, coords]
    ok = np.ones((fns.shape[0], fns.shape[0]), dtype=bool)
    for j, c in enumerate(coords):
        t = table[g[:, None, j] * k + g[None, :, j]]
        ok &= t == want[c]
    return bool(ok.any())


def malcev3_exists(table: np.ndarray, k: int = 3) -> bool:
    """Is there a Mal'cev chain of length n <= 3 of depth <= 3 ternary terms?

    p(x,y,y) = x and p(x,x,y) = y directly (n = 2), or p1, p2 with
    p1(x,y,y) = x, p1(x,x,y) = p2(x,y,y), p2(x,x,y) = y (n = 3)."""
    table = np.asarray(table, dtype=np.int64)
    n = k ** 3
    grid = np.indices((k, k, k)).reshape(3, n).astype(np.int64)
    zero = np.zeros((1, n), dtype=np.int64)
    fns = np.concatenate([grid, zero])
    for _ in range(2):
        m = fns.shape[0]
        new = table[np.repeat(fns, m, axis=0) * k + np.tile(fns, (m, 1))]
        fns = _unique_rows(np.concatenate([fns, new]), k)
    xyy = np.array([(a * k + b) * k + b for a in range(k) for b in range(k)])
    xxy = np.array([(a * k + a) * k + b for a in range(k) for b in range(k)])
    proj1 = np.repeat(np.arange(k), k)
    proj2 = np.tile(np.arange(k), k)
    pw = k ** np.arange(k * k, dtype=np.int64)
    e1 = int(proj1 @ pw)
    e2 = int(proj2 @ pw)

    m = fns.shape[0]
    # restrictions of every depth <= 3 candidate, encoded; candidates are the
    # depth <= 2 functions plus all products of two of them
    ga = fns[:, xyy]
    gb = fns[:, xxy]
    enc_a2 = ga @ pw
    enc_b2 = gb @ pw
    A = np.zeros((m, m), dtype=np.int64)
    B = np.zeros((m, m), dtype=np.int64)
    for j in range(k * k):
        A += table[ga[:, None, j] * k + ga[None, :, j]] * pw[j]
        B += table[gb[:, None, j] * k + gb[None, :, j]] * pw[j]
    all_a = np.concatenate([enc_a2, A.ravel()])
    all_b = np.concatenate([enc_b2, B.ravel()])
    start = all_a == e1
    if bool((start & (all_b == e2)).any()):
        return True
    s1 = set(all_b[start].tolist())
    if not s1:
        return False
    s2 = set(all_a[all_b == e2].tolist())
    return not s1.isdisjoint(s2)


# ---------------------------------------------------------------------------
# DOT export


def hasse_dot(order) -> str:
    """Hasse diagram of a partial order."""
    k = len(order)
    cover = []
    for a in range(k):
        for b in range(k):
            if a != b and order[a][b]:
                if not any(
                    c != a and c != b and order[a][c] and order[c][b] for c in range(k)
                ):
                    cover.append((a, b))
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(k):
        lines.append(f"  n{i} [label=\"{i}\"];")
    for a, b in cover:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)
