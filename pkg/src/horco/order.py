"""Precedences, statuses, and the multiset/lexicographic argument extensions."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .terms import Term, alpha_eq


class Status(enum.Enum):
    LEX_LR = "lex-lr"
    LEX_RL = "lex-rl"
    MUL = "mul"


class Cmp(enum.Enum):
    GREATER = "greater"
    EQUIVALENT = "equivalent"
    NONE = "none"


@dataclass(frozen=True)
class Precedence:
    """A quasi-ordering on symbol names: equivalence classes plus strict edges.

    Edges relate class representatives (the lexicographically least member).
    Symbols of the domain not mentioned in any declaration form singleton
    classes with no edges.
    """

    domain: frozenset[str]
    classes: tuple[frozenset[str], ...]
    edges: frozenset[tuple[str, str]]

    @staticmethod
    def of(domain: Iterable[str], decls: Iterable[tuple[str, str, str]] = ()) -> "Precedence":
        """Build from declarations (a, '>', b) and (a, '~', b)."""
        domain = frozenset(domain)
        parent: dict[str, str] = {n: n for n in domain}

        def find(n: str) -> str:
            while parent[n] != n:
                parent[n] = parent[parent[n]]
                n = parent[n]
            return n

        decls = list(decls)
        for a, op, b in decls:
            for n in (a, b):
                if n not in parent:
                    raise ValueError(f"undeclared symbol in precedence: {n}")
            if op == "~":
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        members: dict[str, set[str]] = {}
        for n in domain:
            members.setdefault(find(n), set()).add(n)
        rep = {n: find(n) for n in domain}
        edges = frozenset(
            (rep[a], rep[b]) for a, op, b in decls if op == ">"
        )
        classes = tuple(
            frozenset(ms) for _, ms in sorted(members.items(), key=lambda kv: kv[0])
        )
        return Precedence(domain, classes, edges)

    @cached_property
    def _rep(self) -> dict[str, str]:
        out = {}
        for cls in self.classes:
            r = min(cls)
            for n in cls:
                out[n] = r
        return out

    @cached_property
    def _reach(self) -> dict[str, frozenset[str]]:
        succs: dict[str, set[str]] = {}
        for a, b in self.edges:
            succs.setdefault(a, set()).add(b)
        out: dict[str, frozenset[str]] = {}

        def walk(n: str, seen: set[str]):
            for m in succs.get(n, ()):
                if m not in seen:
                    seen.add(m)
                    walk(m, seen)
            return seen

        for r in {min(c) for c in self.classes}:
            out[r] = frozenset(walk(r, set()))
        return out

    def rep_of(self, name: str) -> str:
        if name not in self.domain:
            raise ValueError(f"undeclared symbol: {name}")
        return self._rep[name]

    def class_of(self, name: str) -> frozenset[str]:
        r = self.rep_of(name)
        for cls in self.classes:
            if r in cls:
                return cls
        raise AssertionError


def prec_cmp(prec: Precedence, f: str, g: str) -> Cmp:
    """Greater iff f >F g through declared edges; Equivalent iff same class."""
    rf, rg = prec.rep_of(f), prec.rep_of(g)
    if rf == rg:
        return Cmp.EQUIVALENT
    if rg in prec._reach.get(rf, frozenset()):
        return Cmp.GREATER
    return Cmp.NONE


def status_of(prec: Precedence, statuses: Mapping[str, Status], f: str) -> Status:
    """Status of f: its declaration, else its class's declaration, else lex-lr."""
    if f in statuses:
        return statuses[f]
    declared = sorted({statuses[g].value for g in prec.class_of(f) if g in statuses})
    if len(declared) == 1:
        return Status(declared[0])
    return Status.LEX_LR


def validate_precedence(prec: Precedence, statuses: Mapping[str, Status]) -> list[str]:
    """Diagnostics for cyclic strict parts or status clashes within a class."""
    out = []
    reach = prec._reach
    for a, b in sorted(prec.edges):
        if a in reach.get(b, frozenset()) or a == b:
            out.append(f"precedence cycle through {a} and {b}")
    for cls in prec.classes:
        declared = sorted({statuses[g].value for g in cls if g in statuses})
        if len(declared) > 1:
            names = ", ".join(sorted(cls))
            out.append(f"equivalent symbols {names} declare different statuses: {', '.join(declared)}")
    return out


Rel = Callable[[Term, Term], bool]


def mul_ext(rel: Rel, ms: Sequence[Term], ns: Sequence[Term]) -> bool:
    """Strict multiset extension: after cancelling alpha-equal elements, the
    left remainder is non-empty and covers every right remainder element."""
    mc, nc = Counter(ms), Counter(ns)
    m_rest = mc - nc
    n_rest = nc - mc
    if not m_rest:
        return False
    lefts = list(m_rest.elements())
    return all(any(rel(x, y) for x in lefts) for y in n_rest.elements())


def lex_ext(rel: Rel, ts: Sequence[Term], us: Sequence[Term], direction: str = "lr") -> bool:
    """Lexicographic extension scanning in the given direction ('lr' or 'rl').

    At the first position (in scan order) where the tuples differ, rel must
    hold; if one tuple is a proper prefix of the other in scan order, the
    longer one is greater.
    """
    if direction not in ("lr", "rl"):
        raise ValueError(f"bad direction: {direction}")
    pairs = zip(ts, us) if direction == "lr" else zip(reversed(ts), reversed(us))
    for a, b in pairs:
        if not alpha_eq(a, b):
            return rel(a, b)
    return len(ts) > len(us)


def status_ext(rel: Rel, status: Status, ts: Sequence[Term], us: Sequence[Term]) -> bool:
    if status is Status.MUL:
        return mul_ext(rel, ts, us)
    return lex_ext(rel, ts, us, "lr" if status is Status.LEX_LR else "rl")


def stat_cmp(
    prec: Precedence,
    statuses: Mapping[str, Status],
    rel: Rel,
    f: str,
    ts: Sequence[Term],
    g: str,
    us: Sequence[Term],
) -> bool:
    """(f, ts) above (g, us): f greater in precedence, or equivalent and the
    status extension of rel relates the argument tuples.

    rel should be transitive (or a sound bounded approximation of a transitive
    relation; the extension is then an under-approximation).
    """
    c = prec_cmp(prec, f, g)
    if c is Cmp.GREATER:
        return True
    if c is not Cmp.EQUIVALENT:
        return False
    return status_ext(rel, status_of(prec, statuses, f), ts, us)
