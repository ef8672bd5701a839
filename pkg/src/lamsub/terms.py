"""Lambda terms with nameless (de Bruijn) internals and display-name hints.

Terms are immutable and hash-consed enough to be used as dictionary keys:
structural equality ignores binder hints, so ``a == b`` is alpha-equivalence.
Contexts are ordinary terms containing hole nodes (written ``ξ`` in the
concrete syntax).
"""

from __future__ import annotations

import json


class Term:
    """Base class; subclasses are Var, Free, Abs, App, Hole."""

    __slots__ = ("_hash", "size")

    def __hash__(self):
        return self._hash

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"<{pretty(self)}>"


class Var(Term):
    """Bound variable as a nameless index pointing to an enclosing Abs."""

    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self.size = 1
        self._hash = hash((0, index))

    def __eq__(self, o):
        return type(o) is Var and o.index == self.index

    __hash__ = Term.__hash__


class Free(Term):
    """Free variable, identified by name."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = 1
        self._hash = hash((1, name))

    def __eq__(self, o):
        return type(o) is Free and o.name == self.name

    __hash__ = Term.__hash__


class Abs(Term):
    __slots__ = ("body", "hint")

    def __init__(self, body: Term, hint: str = "x"):
        self.body = body
        self.hint = hint  # display only, not part of equality
        self.size = body.size + 1
        self._hash = hash((2, body._hash))

    def __eq__(self, o):
        return type(o) is Abs and o._hash == self._hash and o.body == self.body

    __hash__ = Term.__hash__


class App(Term):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: Term, arg: Term):
        self.fn = fn
        self.arg = arg
        self.size = fn.size + arg.size + 1
        self._hash = hash((3, fn._hash, arg._hash))

    def __eq__(self, o):
        return (
            type(o) is App
            and o._hash == self._hash
            and o.fn == self.fn
            and o.arg == self.arg
        )

    __hash__ = Term.__hash__


class Hole(Term):
    """Algebraic variable ξ_i; filled textually, capture permitted."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = 1
        self._hash = hash((4, name))

    def __eq__(self, o):
        return type(o) is Hole and o.name == self.name

    __hash__ = Term.__hash__


def app(*terms: Term) -> Term:
    """Left-associated application of two or more terms."""
    t = terms[0]
    for u in terms[1:]:
        t = App(t, u)
    return t


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to renaming of bound variables; holes compare by id."""
    return a == b


# ---------------------------------------------------------------------------
# Structural queries


def free_names(t: Term) -> frozenset:
    if isinstance(t, Free):
        return frozenset((t.name,))
    if isinstance(t, Abs):
        return free_names(t.body)
    if isinstance(t, App):
        return free_names(t.fn) | free_names(t.arg)
    return frozenset()


def free_name_multiset(t: Term) -> dict:
    """Occurrence counts of free names; used by substitution properties."""
    out: dict = {}

    def go(t):
        if isinstance(t, Free):
            out[t.name] = out.get(t.name, 0) + 1
        elif isinstance(t, Abs):
            go(t.body)
        elif isinstance(t, App):
            go(t.fn)
            go(t.arg)

    go(t)
    return out


def hole_names(t: Term) -> frozenset:
    if isinstance(t, Hole):
        return frozenset((t.name,))
    if isinstance(t, Abs):
        return hole_names(t.body)
    if isinstance(t, App):
        return hole_names(t.fn) | hole_names(t.arg)
    return frozenset()


def is_pure(t: Term) -> bool:
    """True iff the term contains no hole nodes."""
    return not hole_names(t)


def index_free_in(t: Term, j: int) -> bool:
    """Does nameless index j (relative to the root of t) occur free?"""
    if isinstance(t, Var):
        return t.index == j
    if isinstance(t, Abs):
        return index_free_in(t.body, j + 1)
    if isinstance(t, App):
        return index_free_in(t.fn, j) or index_free_in(t.arg, j)
    return False


def well_scoped(t: Term, depth: int = 0) -> bool:
    if isinstance(t, Var):
        return 0 <= t.index < depth
    if isinstance(t, Abs):
        return well_scoped(t.body, depth + 1)
    if isinstance(t, App):
        return well_scoped(t.fn, depth) and well_scoped(t.arg, depth)
    return True


# ---------------------------------------------------------------------------
# Substitution


def shift(t: Term, d: int, cutoff: int = 0) -> Term:
    """Add d to every free nameless index >= cutoff."""
    if isinstance(t, Var):
        return Var(t.index + d) if t.index >= cutoff else t
    if isinstance(t, Abs):
        body = shift(t.body, d, cutoff + 1)
        return t if body is t.body else Abs(body, t.hint)
    if isinstance(t, App):
        fn = shift(t.fn, d, cutoff)
        arg = shift(t.arg, d, cutoff)
        return t if fn is t.fn and arg is t.arg else App(fn, arg)
    return t


def subst_index(t: Term, j: int, s: Term) -> Term:
    """Replace index j in t by s (s shifted under binders)."""
    if isinstance(t, Var):
        if t.index == j:
            return s
        return Var(t.index - 1) if t.index > j else t
    if isinstance(t, Abs):
        return Abs(subst_index(t.body, j + 1, shift(s, 1)), t.hint)
    if isinstance(t, App):
        return App(subst_index(t.fn, j, s), subst_index(t.arg, j, s))
    return t


def beta_contract(fn: Abs, arg: Term) -> Term:
    return subst_index(fn.body, 0, arg)


def substitute(t: Term, name: str, s: Term) -> Term:
    """Capture-avoiding replacement of the free variable `name` in t by s."""

    def go(t, depth):
        if isinstance(t, Free):
            return shift(s, depth) if t.name == name else t
        if isinstance(t, Abs):
            return Abs(go(t.body, depth + 1), t.hint)
        if isinstance(t, App):
            return App(go(t.fn, depth), go(t.arg, depth))
        return t

    return go(t, 0)


def lam(name: str, body: Term) -> Abs:
    """Bind free occurrences of `name` in body, producing an abstraction."""

    def bind(t, depth):
        if isinstance(t, Free):
            return Var(depth) if t.name == name else t
        if isinstance(t, Abs):
            return Abs(bind(t.body, depth + 1), t.hint)
        if isinstance(t, App):
            return App(bind(t.fn, depth), bind(t.arg, depth))
        return t

    return Abs(bind(shift(body, 1), 0), name)


# ---------------------------------------------------------------------------
# Hole filling (textual, capture permitted)

_NamedT = tuple  # ("var"|"abs"|"app"|"hole", ...) nested tuples


def to_named(t: Term) -> _NamedT:
    """Named view using binder hints verbatim (hints renamed only when they
    would capture an existing free variable of their body)."""

    def go(t, env):
        if isinstance(t, Var):
            return ("var", env[t.index])
        if isinstance(t, Free):
            return ("var", t.name)
        if isinstance(t, Hole):
            return ("hole", t.name)
        if isinstance(t, App):
            return ("app", go(t.fn, env), go(t.arg, env))
        # pick hint, avoiding capture of free names / referenced outer binders
        avoid = free_names(t.body)
        avoid |= {env[i] for i in range(len(env)) if index_free_in(t.body, i + 1)}
        name = t.hint
        while name in avoid:
            name += "'"
        return ("abs", name, go(t.body, [name] + env))

    return go(t, [])


def from_named(n: _NamedT) -> Term:
    def go(n, env):
        kind = n[0]
        if kind == "var":
            name = n[1]
            if name in env:
                return Var(env.index(name))
            return Free(name)
        if kind == "hole":
            return Hole(n[1])
        if kind == "app":
            return App(go(n[1], env), go(n[2], env))
        return Abs(go(n[2], [n[1]] + env), n[1])

    return go(n, [])


def fill_context(c: Term, hole: str, s: Term) -> Term:
    """Textual replacement of hole ξ by s; capture by binders of c permitted."""
    s_named = to_named(s)

    def go(n):
        kind = n[0]
        if kind == "hole":
            return s_named if n[1] == hole else n
        if kind == "app":
            return ("app", go(n[1]), go(n[2]))
        if kind == "abs":
            return ("abs", n[1], go(n[2]))
        return n

    return from_named(go(to_named(c)))


# ---------------------------------------------------------------------------
# Concrete syntax


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "().":
            toks.append((ch, ch, i))
            i += 1
        elif ch in "\\λ":
            toks.append(("lam", ch, i))
            i += 1
        elif ch == "ξ":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("hole", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("eof", "", n))
    return toks


def parse(text: str) -> Term:
    """Parse the concrete grammar: `λ`/`\\` abstraction, juxtaposition
    application (left-associative), parentheses, `ξ`/`ξ1`.. holes."""
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def next_tok():
        t = toks[pos[0]]
        pos[0] += 1
        return t

    def parse_term(env):
        kind, val, at = peek()
        if kind == "lam":
            next_tok()
            names = []
            while peek()[0] == "name":
                names.append(next_tok()[1])
            if not names:
                raise ParseError("expected binder name after lambda", peek()[2])
            if peek()[0] != ".":
                raise ParseError("expected '.' after binders", peek()[2])
            next_tok()
            body = parse_term(list(reversed(names)) + env)
            for name in reversed(names):
                body = Abs(body, name)
            return body
        return parse_app(env)

    def parse_app(env):
        t = parse_atom(env)
        if t is None:
            raise ParseError("expected a term", peek()[2])
        while True:
            u = parse_atom(env)
            if u is None:
                return t
            t = App(t, u)

    def parse_atom(env):
        kind, val, at = peek()
        if kind == "(":
            next_tok()
            t = parse_term(env)
            if peek()[0] != ")":
                raise ParseError("expected ')'", peek()[2])
            next_tok()
            return t
        if kind == "name":
            next_tok()
            return Var(env.index(val)) if val in env else Free(val)
        if kind == "hole":
            next_tok()
            return Hole(val)
        if kind == "lam":
            return parse_term(env)
        return None

    t = parse_term([])
    if peek()[0] != "eof":
        raise ParseError("trailing input", peek()[2])
    return t


def pretty(t: Term) -> str:
    """Print with `λ` and minimal parentheses."""

    def render(n, ctx):
        # ctx: "top" | "fn" | "arg"
        kind = n[0]
        if kind in ("var", "hole"):
            return n[1]
        if kind == "app":
            s = f"{render(n[1], 'fn')} {render(n[2], 'arg')}"
            return f"({s})" if ctx == "arg" else s
        s = f"λ{n[1]}.{render(n[2], 'top')}"
        return f"({s})" if ctx in ("fn", "arg") else s

    return render(to_named(t), "top")


# ---------------------------------------------------------------------------
# JSON tree export


def to_json_tree(t: Term) -> dict:
    if isinstance(t, Var):
        return {"kind": "var", "index": t.index}
    if isinstance(t, Free):
        return {"kind": "free", "name": t.name}
    if isinstance(t, Hole):
        return {"kind": "hole", "name": t.name}
    if isinstance(t, Abs):
        return {"kind": "abs", "hint": t.hint, "body": to_json_tree(t.body)}
    return {"kind": "app", "fn": to_json_tree(t.fn), "arg": to_json_tree(t.arg)}


def from_json_tree(d: dict) -> Term:
    kind = d["kind"]
    if kind == "var":
        return Var(d["index"])
    if kind == "free":
        return Free(d["name"])
    if kind == "hole":
        return Hole(d["name"])
    if kind == "abs":
        return Abs(from_json_tree(d["body"]), d.get("hint", "x"))
    return App(from_json_tree(d["fn"]), from_json_tree(d["arg"]))


def dumps(t: Term) -> str:
    return json.dumps(to_json_tree(t))


# ---------------------------------------------------------------------------
# Named catalog

IDENT = parse(r"\x.x")
TRU = parse(r"\x.\y.x")
FLS = parse(r"\x.\y.y")
OMEGA = parse(r"(\x.x x)(\x.x x)")
B_TERM = parse(r"\x.x(\y.y x)")
C_TERM = lam("z", App(Free("z"), B_TERM))
THETA = App(B_TERM, C_TERM)
CURRY_Y = parse(r"\f.(\x.f(x x))(\x.f(x x))")


def a_n(n: int) -> Term:
    t: Term = Free("x")
    for _ in range(n):
        t = lam("y", App(Free("y"), t))
    return t


def theta_n(n: int) -> Term:
    bn = lam("x", App(Free("x"), a_n(n)))
    cn = lam("z", App(Free("z"), bn))
    return App(bn, cn)


_CATALOG = {
    "Omega": OMEGA,
    "I": IDENT,
    "T": TRU,
    "F": FLS,
    "B": B_TERM,
    "C": C_TERM,
    "Theta": THETA,
    "Y": CURRY_Y,
}


def resolve_names(t: Term) -> Term:
    """Replace free variables named after catalog terms (Omega, Theta,
    Theta<k>, I, T, F, B, C, Y) by the corresponding closed terms."""
    if isinstance(t, Free):
        if t.name in _CATALOG:
            return _CATALOG[t.name]
        if t.name.startswith("Theta") and t.name[5:].isdigit():
            return theta_n(int(t.name[5:]))
        return t
    if isinstance(t, Abs):
        return Abs(resolve_names(t.body), t.hint)
    if isinstance(t, App):
        return App(resolve_names(t.fn), resolve_names(t.arg))
    return t


def parse_named(text: str) -> Term:
    return resolve_names(parse(text))
