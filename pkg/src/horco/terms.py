"""Simply typed lambda terms over curried constants.

Terms are immutable; equality and hashing are modulo alpha. Positions follow
the first-order convention: in an application spine f t1 ... tn the arguments
sit at positions 1..n (the head is addressable only when it is an abstraction,
at position 1, arguments shifting to 2..n+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .types import Arrow, Base, Position, SimpleType, arity


class Term:
    __slots__ = ()

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return alpha_key(self) == alpha_key(other)

    def __hash__(self):
        return hash(alpha_key(self))

    def __repr__(self):
        return _print(self)


@dataclass(frozen=True, eq=False, repr=False)
class Var(Term):
    name: str
    ty: SimpleType


@dataclass(frozen=True, eq=False, repr=False)
class Sym(Term):
    name: str
    ty: SimpleType


@dataclass(frozen=True, eq=False, repr=False)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True, eq=False, repr=False)
class Lam(Term):
    var: Var
    body: Term


def _print(t: Term) -> str:
    match t:
        case Var(name=n) | Sym(name=n):
            return n
        case App(fun=f, arg=a):
            fs = _print(f)
            if isinstance(f, Lam):
                fs = f"({fs})"
            as_ = _print(a)
            if isinstance(a, (App, Lam)):
                as_ = f"({as_})"
            return f"{fs} {as_}"
        case Lam(var=x, body=b):
            return f"\\{x.name}:{x.ty}. {_print(b)}"
    raise TypeError(f"not a term: {t!r}")


def alpha_key(t: Term):
    """Structural key invariant under renaming of bound variables."""
    key = getattr(t, "_akey", None)
    if key is None:
        key = _alpha_key(t, {}, 0)
        object.__setattr__(t, "_akey", key)
    return key


def _alpha_key(t: Term, env: dict[str, int], depth: int):
    match t:
        case Var(name=n, ty=ty):
            if n in env:
                return ("b", env[n], ty)
            return ("v", n, ty)
        case Sym(name=n, ty=ty):
            return ("s", n, ty)
        case App(fun=f, arg=a):
            return ("a", _alpha_key(f, env, depth), _alpha_key(a, env, depth))
        case Lam(var=x, body=b):
            inner = dict(env)
            inner[x.name] = depth
            return ("l", x.ty, _alpha_key(b, inner, depth + 1))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(t: Term, u: Term) -> bool:
    return alpha_key(t) == alpha_key(u)


def typeof(t: Term) -> SimpleType:
    """Type of a well-typed term; raises TypeError otherwise."""
    ty = getattr(t, "_ty", None)
    if ty is None:
        ty = _typeof(t, {})
        object.__setattr__(t, "_ty", ty)
    return ty


def _typeof(t: Term, bound: dict[str, SimpleType]) -> SimpleType:
    match t:
        case Var(name=n, ty=ty):
            if n in bound and bound[n] != ty:
                raise TypeError(f"variable {n} used at type {ty}, bound at {bound[n]}")
            return ty
        case Sym(ty=ty):
            return ty
        case App(fun=f, arg=a):
            fty = _typeof(f, bound)
            aty = _typeof(a, bound)
            if not isinstance(fty, Arrow) or fty.left != aty:
                raise TypeError(f"cannot apply {fty} to {aty} in {t!r}")
            return fty.right
        case Lam(var=x, body=b):
            inner = dict(bound)
            inner[x.name] = x.ty
            return Arrow(x.ty, _typeof(b, inner))
    raise TypeError(f"not a term: {t!r}")


def spine(t: Term) -> tuple[Term, tuple[Term, ...]]:
    """Decompose t as (head, arguments) with head not an application."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    return t, tuple(reversed(args))


def app_of(head: Term, args: Iterable[Term]) -> Term:
    t = head
    for a in args:
        t = App(t, a)
    return t


def is_symbol_headed(t: Term) -> bool:
    return isinstance(spine(t)[0], Sym)


def is_first_order(t: Term) -> bool:
    """Lam-free, base-typed variables, every symbol fully applied."""
    match t:
        case Var(ty=ty) | Sym(ty=ty):
            return isinstance(ty, Base)
        case Lam():
            return False
        case App():
            head, args = spine(t)
            if not isinstance(head, Sym) or len(args) != arity(head.ty):
                return False
            return all(is_first_order(a) for a in args)
    return False


def free_vars(t: Term) -> frozenset[Var]:
    fv = getattr(t, "_fv", None)
    if fv is None:
        match t:
            case Var():
                fv = frozenset([t])
            case Sym():
                fv = frozenset()
            case App(fun=f, arg=a):
                fv = free_vars(f) | free_vars(a)
            case Lam(var=x, body=b):
                fv = frozenset(v for v in free_vars(b) if v.name != x.name)
        object.__setattr__(t, "_fv", fv)
    return fv


def fresh_name(hint: str, forbidden: Iterable[str]) -> str:
    taken = set(forbidden)
    name = hint
    while name in taken:
        name += "'"
    return name


def substitute(t: Term, mapping: Mapping[Var, Term]) -> Term:
    """Capture-avoiding parallel substitution of free variables."""
    if not mapping:
        return t
    match t:
        case Var():
            return mapping.get(t, t)
        case Sym():
            return t
        case App(fun=f, arg=a):
            f2, a2 = substitute(f, mapping), substitute(a, mapping)
            return t if f2 is f and a2 is a else App(f2, a2)
        case Lam(var=x, body=b):
            live = {
                v: r
                for v, r in mapping.items()
                if v.name != x.name and v in free_vars(b)
            }
            if not live:
                return t
            replaced_fv = {w.name for r in live.values() for w in free_vars(r)}
            if x.name in replaced_fv:
                taken = replaced_fv | {w.name for w in free_vars(b)} | {v.name for v in live}
                x2 = Var(fresh_name(x.name, taken), x.ty)
                b = substitute(b, {x: x2})
                x = x2
            b2 = substitute(b, live)
            return Lam(x, b2)
    raise TypeError(f"not a term: {t!r}")


def rename_binder(t: Lam, forbidden: Iterable[str]) -> tuple[Var, Term]:
    """Return (x, body) for t = \\x. body with x renamed fresh for `forbidden`."""
    taken = set(forbidden) | {v.name for v in free_vars(t)}
    if t.var.name not in taken:
        return t.var, t.body
    x2 = Var(fresh_name(t.var.name, taken), t.var.ty)
    return x2, substitute(t.body, {t.var: x2})


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Var() | Sym():
            return ()
        case Lam(body=b):
            return (b,)
        case App():
            head, args = spine(t)
            return (head, *args) if isinstance(head, Lam) else args
    raise TypeError(f"not a term: {t!r}")


def _rebuild(t: Term, index: int, new_child: Term) -> Term:
    match t:
        case Lam(var=x):
            return Lam(x, new_child)
        case App():
            head, args = spine(t)
            if isinstance(head, Lam):
                if index == 1:
                    return app_of(new_child, args)
                slot = index - 2
            else:
                slot = index - 1
            new_args = list(args)
            new_args[slot] = new_child
            return app_of(head, new_args)
    raise TypeError(f"no children to rebuild in {t!r}")


def subterm_positions(t: Term) -> list[tuple[Position, Term]]:
    """All (position, subterm) pairs in preorder, the root at ()."""
    out: list[tuple[Position, Term]] = [((), t)]
    for i, c in enumerate(children(t), 1):
        out.extend(((i, *p), s) for p, s in subterm_positions(c))
    return out


def subterm_at(t: Term, pos: Position) -> Term:
    for i in pos:
        kids = children(t)
        if not 1 <= i <= len(kids):
            raise IndexError(f"position {pos} not in term")
        t = kids[i - 1]
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    """Replace the subterm at pos; the replacement must have the same type."""
    if not pos:
        if typeof(new) != typeof(t):
            raise TypeError(f"replacement type {typeof(new)} differs from {typeof(t)}")
        return new
    kids = children(t)
    i = pos[0]
    if not 1 <= i <= len(kids):
        raise IndexError(f"position {pos} not in term")
    return _rebuild(t, i, replace_at(kids[i - 1], pos[1:], new))


def strict_subterms(t: Term) -> list[Term]:
    return [s for p, s in subterm_positions(t) if p]


def is_strict_subterm(u: Term, t: Term) -> bool:
    return any(alpha_eq(u, s) for s in strict_subterms(t))


def beta_reducts(t: Term) -> list[Term]:
    """All one-step beta reducts, deduplicated modulo alpha."""
    out: list[Term] = []
    seen: set[Term] = set()

    def add(u: Term):
        if u not in seen:
            seen.add(u)
            out.append(u)

    match t:
        case App(fun=Lam(var=x, body=b), arg=a):
            add(substitute(b, {x: a}))
    match t:
        case App(fun=f, arg=a):
            for f2 in beta_reducts(f):
                add(App(f2, a))
            for a2 in beta_reducts(a):
                add(App(f, a2))
        case Lam(var=x, body=b):
            for b2 in beta_reducts(b):
                add(Lam(x, b2))
    return out


def term_size(t: Term) -> int:
    """Number of variable, symbol and abstraction nodes (applications are free)."""
    cached = getattr(t, "_size", None)
    if cached is not None:
        return cached
    match t:
        case Var() | Sym():
            n = 1
        case App(fun=f, arg=a):
            n = term_size(f) + term_size(a)
        case Lam(body=b):
            n = 1 + term_size(b)
        case _:
            raise TypeError(f"not a term: {t!r}")
    object.__setattr__(t, "_size", n)
    return n
