"""Derivation trees (proof certificates) and search budgets.

Every node names an inference rule and carries a self-contained conclusion:
judgement kind, the free variables with their types, and the terms involved.
The JSON rendering keeps exactly {rule, conclusion, children} per node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .terms import Term, free_vars
from .text import format_term, parse_term, parse_type
from .types import SimpleType

# Judgement kinds:
#   rpo     left >rpo right
#   rco     left >rco right
#   ccfo    right is in the first-order closure of context
#   cc      right is in the higher-order closure of context
#   approx  left is size-approximation-greater than right, relative to context
#   horpo   left >horpo right
#   whorco  left >whorco right (root rewrite; child is the closure membership)
#   horco   left >horco right (some one-hole context around a whorco pair)
KINDS = ("rpo", "rco", "ccfo", "cc", "approx", "horpo", "whorco", "horco")

LABELS = (
    "arg",
    "decomp",
    "prec",
    "call",
    "red",
    "app",
    "var",
    "lam",
    "size-base",
    "size-lam",
    "size-red",
    "size-trans",
    "rpo1",
    "rpo2",
    "rpo3",
    "horpo1",
    "horpo2",
    "horpo3",
    "horpo4",
    "horpo5",
    "horpo6",
    "horpo7",
    "context",
)


@dataclass(frozen=True)
class Budget:
    max_search_depth: int = 12
    max_red_steps: int = 4
    max_term_size_slack: int = 6

    def __post_init__(self):
        if min(self.max_search_depth, self.max_red_steps, self.max_term_size_slack) < 1:
            raise ValueError("budget components must be positive")

    def doubled(self) -> "Budget":
        return Budget(
            2 * self.max_search_depth,
            2 * self.max_red_steps,
            2 * self.max_term_size_slack,
        )


@dataclass(frozen=True)
class Derivation:
    rule: str
    kind: str
    right: Term
    left: Optional[Term] = None
    context: Optional[Term] = None
    children: tuple["Derivation", ...] = ()

    def __post_init__(self):
        if self.rule not in LABELS:
            raise ValueError(f"unknown rule label: {self.rule}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown judgement kind: {self.kind}")

    def conclusion(self) -> str:
        """Self-contained one-line rendering of the judgement."""
        vs: set = set()
        for t in (self.context, self.left, self.right):
            if t is not None:
                vs |= free_vars(t)
        binders = ", ".join(f"{v.name}:{v.ty}" for v in sorted(vs, key=lambda v: v.name))
        parts = [
            self.kind,
            binders or "-",
            format_term(self.context) if self.context is not None else "-",
            format_term(self.left) if self.left is not None else "-",
            format_term(self.right),
        ]
        return " ; ".join(parts)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


def derivation_to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule,
        "conclusion": d.conclusion(),
        "children": [derivation_to_json(c) for c in d.children],
    }


def derivation_from_json(
    obj: dict, signature: Mapping[str, SimpleType], sorts: set[str]
) -> Derivation:
    """Rebuild a derivation from its JSON form; raises ValueError on malformed
    nodes (term syntax errors surface as TrsParseError)."""
    if not isinstance(obj, dict) or set(obj) != {"rule", "conclusion", "children"}:
        raise ValueError(f"malformed derivation node: {obj!r}")
    parts = obj["conclusion"].split(" ; ")
    if len(parts) != 5:
        raise ValueError(f"malformed conclusion: {obj['conclusion']!r}")
    kind, binder_str, ctx_str, left_str, right_str = parts
    var_types: dict[str, SimpleType] = {}
    if binder_str != "-":
        for piece in binder_str.split(","):
            name, _, ty_str = piece.strip().partition(":")
            var_types[name.strip()] = parse_type(ty_str.strip(), sorts)

    def term_of(s: str) -> Optional[Term]:
        return None if s == "-" else parse_term(s, signature, var_types)

    right = term_of(right_str)
    if right is None:
        raise ValueError("conclusion lacks a right-hand term")
    return Derivation(
        rule=obj["rule"],
        kind=kind,
        right=right,
        left=term_of(left_str),
        context=term_of(ctx_str),
        children=tuple(
            derivation_from_json(c, signature, sorts) for c in obj["children"]
        ),
    )


def format_derivation(d: Derivation, indent: int = 0) -> str:
    """Indented tree rendering for the text report."""
    pad = "  " * indent
    lines = [f"{pad}{d.rule}: {d.conclusion()}"]
    for c in d.children:
        lines.append(format_derivation(c, indent + 1))
    return "\n".join(lines)
