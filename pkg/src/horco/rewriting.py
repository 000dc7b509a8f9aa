"""Rewrite rules, syntactic matching, and bounded beta/rule reduction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .order import Precedence, Status
from .terms import (
    App,
    Lam,
    Sym,
    Term,
    Var,
    alpha_eq,
    free_vars,
    fresh_name,
    is_symbol_headed,
    spine,
    substitute,
    term_size,
    typeof,
)
from .types import SimpleType


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if not is_symbol_headed(self.lhs):
            raise ValueError(f"rule left side must be symbol-headed: {self.lhs!r}")
        if typeof(self.lhs) != typeof(self.rhs):
            raise ValueError(
                f"rule sides have different types: {typeof(self.lhs)} vs {typeof(self.rhs)}"
            )
        extra = free_vars(self.rhs) - free_vars(self.lhs)
        if extra:
            names = ", ".join(sorted(v.name for v in extra))
            raise ValueError(f"rule right side has extra free variables: {names}")

    def __repr__(self):
        return f"{self.lhs!r} -> {self.rhs!r}"


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    ty: SimpleType
    status: Optional[Status] = None


@dataclass(frozen=True)
class Trs:
    """An immutable rewrite system: declarations plus rules."""

    sorts: tuple[str, ...] = ()
    symbols: tuple[SymbolDecl, ...] = ()
    variables: tuple[Var, ...] = ()
    prec_decls: tuple[tuple[str, str, str], ...] = ()
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        sig = {d.name: d.ty for d in self.symbols}
        vartys = {v.name: v.ty for v in self.variables}
        for rule in self.rules:
            for side in (rule.lhs, rule.rhs):
                _check_declared(side, sig, vartys)

    @cached_property
    def signature(self) -> dict[str, SimpleType]:
        return {d.name: d.ty for d in self.symbols}

    @cached_property
    def precedence(self) -> Precedence:
        return Precedence.of(self.signature, self.prec_decls)

    @cached_property
    def statuses(self) -> dict[str, Status]:
        return {d.name: d.status for d in self.symbols if d.status is not None}

    def sym(self, name: str) -> Sym:
        return Sym(name, self.signature[name])


def _check_declared(t: Term, sig, vartys, bound: frozenset[str] = frozenset()):
    match t:
        case Sym(name=n, ty=ty):
            if sig.get(n) != ty:
                raise ValueError(f"symbol {n} used at undeclared type {ty}")
        case Var(name=n, ty=ty):
            if n not in bound and vartys.get(n) != ty:
                raise ValueError(f"variable {n} used without declaration (type {ty})")
        case App(fun=f, arg=a):
            _check_declared(f, sig, vartys, bound)
            _check_declared(a, sig, vartys, bound)
        case Lam(var=x, body=b):
            _check_declared(b, sig, vartys, bound | {x.name})


def constant_split(trs: Trs) -> tuple[frozenset[str], frozenset[str]]:
    """(constant symbols, defined symbols): defined = heads some rule left side."""
    defined = frozenset(spine(r.lhs)[0].name for r in trs.rules)  # type: ignore[union-attr]
    constant = frozenset(trs.signature) - defined
    return constant, defined


def match_syntactic(pattern: Term, subject: Term) -> Optional[dict[Var, Term]]:
    """The substitution sending pattern to subject, matching purely
    syntactically modulo alpha; None when there is none."""
    sigma: dict[Var, Term] = {}

    def go(p: Term, s: Term, bound: frozenset[str]) -> bool:
        match p:
            case Var():
                if p.name in bound:
                    return isinstance(s, Var) and s.name == p.name and s.ty == p.ty
                try:
                    if typeof(s) != p.ty:
                        return False
                except TypeError:
                    return False
                if any(v.name in bound for v in free_vars(s)):
                    return False
                if p in sigma:
                    return alpha_eq(sigma[p], s)
                sigma[p] = s
                return True
            case Sym():
                return isinstance(s, Sym) and s.name == p.name and s.ty == p.ty
            case App():
                return (
                    isinstance(s, App)
                    and go(p.fun, s.fun, bound)
                    and go(p.arg, s.arg, bound)
                )
            case Lam():
                if not isinstance(s, Lam) or p.var.ty != s.var.ty:
                    return False
                taken = (
                    {v.name for v in free_vars(p.body) | free_vars(s.body)}
                    | bound
                )
                z = Var(fresh_name("z", taken), p.var.ty)
                return go(
                    substitute(p.body, {p.var: z}),
                    substitute(s.body, {s.var: z}),
                    bound | {z.name},
                )
        raise TypeError(f"not a term: {p!r}")

    return sigma if go(pattern, subject, frozenset()) else None


class RuleIndex:
    """Rules grouped by left side (then by its head symbol), so a rewrite
    step matches each distinct left side once, against subjects that are not
    smaller, and instantiates all its right sides together."""

    def __init__(self, rules: Iterable[Rule]):
        grouped: dict[Term, list[Term]] = {}
        for r in rules:
            grouped.setdefault(r.lhs, []).append(r.rhs)
        self.by_head: dict[str, list[tuple[Term, list[Term]]]] = {}
        for lhs, rhss in grouped.items():
            h, _ = spine(lhs)
            assert isinstance(h, Sym)
            self.by_head.setdefault(h.name, []).append((lhs, rhss))

    def root_steps(self, t: Term) -> list[Term]:
        h, _ = spine(t)
        if not isinstance(h, Sym):
            return []
        out = []
        n = term_size(t)
        for lhs, rhss in self.by_head.get(h.name, ()):
            if term_size(lhs) > n:
                continue
            sigma = match_syntactic(lhs, t)
            if sigma is not None:
                out.extend(substitute(rhs, sigma) for rhs in rhss)
        return out

    def steps(self, t: Term) -> list[Term]:
        out: list[Term] = []
        seen: set[Term] = set()

        def add(u: Term):
            if u not in seen:
                seen.add(u)
                out.append(u)

        for u in self.root_steps(t):
            add(u)
        match t:
            case App(fun=f, arg=a):
                for f2 in self.steps(f):
                    add(App(f2, a))
                for a2 in self.steps(a):
                    add(App(f, a2))
            case Lam(var=x, body=b):
                for b2 in self.steps(b):
                    add(Lam(x, b2))
        return out


def rule_steps(rules: Iterable[Rule], t: Term) -> list[Term]:
    """One rule-rewrite step at any position, for a bare rule list."""
    return RuleIndex(rules).steps(t)


def step_terms(rules: Iterable[Rule], t: Term, with_beta: bool = True) -> list[Term]:
    """One beta or rule step at any position, for a bare rule list."""
    return _step_terms(RuleIndex(rules), t, with_beta)


def _step_terms(index: RuleIndex, t: Term, with_beta: bool) -> list[Term]:
    out: list[Term] = []
    seen: set[Term] = set()
    from .terms import beta_reducts

    if with_beta:
        for u in beta_reducts(t):
            if u not in seen:
                seen.add(u)
                out.append(u)
    for u in index.steps(t):
        if u not in seen:
            seen.add(u)
            out.append(u)
    return out


class Rewriter:
    """One-step reduction graph over a fixed rule list, with the successor
    lists memoized so repeated bounded searches share the matching work."""

    def __init__(self, rules: Iterable[Rule], with_beta: bool = True):
        self.index = RuleIndex(rules)
        self.with_beta = with_beta
        self._succ: dict[Term, list[Term]] = {}

    def one_step(self, t: Term) -> list[Term]:
        if t not in self._succ:
            self._succ[t] = _step_terms(self.index, t, self.with_beta)
        return self._succ[t]

    def reachable(
        self, t: Term, max_steps: int, max_term_size: Optional[int] = None
    ) -> list[Term]:
        """Terms reachable in 1..max_steps steps; intermediates above the
        size bound are pruned, so the result is complete only within it."""
        frontier = [t]
        seen: set[Term] = {t}
        out: list[Term] = []
        for _ in range(max_steps):
            next_frontier: list[Term] = []
            for u in frontier:
                for v in self.one_step(u):
                    if v in seen:
                        continue
                    if max_term_size is not None and term_size(v) > max_term_size:
                        continue
                    seen.add(v)
                    out.append(v)
                    next_frontier.append(v)
            if not next_frontier:
                break
            frontier = next_frontier
        return out


def multi_step(
    rules: Iterable[Rule],
    t: Term,
    max_steps: int,
    max_term_size: Optional[int] = None,
    with_beta: bool = True,
) -> list[Term]:
    """Terms reachable in 1..max_steps steps over a bare rule list."""
    return Rewriter(rules, with_beta).reachable(t, max_steps, max_term_size)


def one_step_reducts(trs: Trs, t: Term, kind: str = "both") -> list[Term]:
    """All one-step reducts of t: beta steps, rule steps, or both."""
    from .terms import beta_reducts

    if kind not in ("beta", "rules", "both"):
        raise ValueError(f"bad reduction kind: {kind}")
    out: list[Term] = []
    seen: set[Term] = set()
    if kind in ("beta", "both"):
        for u in beta_reducts(t):
            if u not in seen:
                seen.add(u)
                out.append(u)
    if kind in ("rules", "both"):
        for u in RuleIndex(trs.rules).steps(t):
            if u not in seen:
                seen.add(u)
                out.append(u)
    return out


def reducts_plus(
    trs: Trs,
    t: Term,
    max_steps: int,
    max_term_size: Optional[int] = None,
    kind: str = "both",
) -> list[Term]:
    """Terms reachable in 1..max_steps beta/rule steps; intermediates larger
    than max_term_size are pruned. Complete only within these budgets."""
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    if kind not in ("beta", "rules", "both"):
        raise ValueError(f"bad reduction kind: {kind}")
    rules = trs.rules if kind in ("rules", "both") else ()
    return multi_step(rules, t, max_steps, max_term_size, with_beta=kind != "rules")
