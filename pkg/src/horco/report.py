"""Whole-file checking: criterion dispatch, brute-force precedence search,
and deterministic text/JSON reports with embedded derivations."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .derivations import Budget, Derivation, derivation_to_json, format_derivation
from .fo import rco_gt, rpo_gt
from .ho import horco_chain_gt, horco_gt, horpo_gt, orient_rule
from .order import Precedence, Status
from .rewriting import Trs
from .terms import Term, is_first_order
from .text import format_term
from .types import arity
from .validate import validate_derivation

CRITERIA = ("rpo", "rco", "horpo", "horco")
MAX_SEARCH_SYMBOLS = 6


@dataclass(frozen=True)
class CheckConfig:
    criterion: str = "horco"
    budget: Budget = field(default_factory=Budget)
    chain: int = 3
    search_precedence: bool = False
    fmt: str = "text"

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion: {self.criterion}")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format: {self.fmt}")
        if self.chain < 1:
            raise ValueError("chain bound must be positive")


@dataclass(frozen=True)
class RuleResult:
    lhs: str
    rhs: str
    oriented: bool
    derivation: Optional[Derivation] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class CheckReport:
    criterion: str
    results: tuple[RuleResult, ...]
    # class list (highest first) and status table, present only when searched
    precedence: Optional[tuple[tuple[str, ...], ...]] = None
    statuses: Optional[tuple[tuple[str, str], ...]] = None

    @property
    def oriented(self) -> int:
        return sum(1 for r in self.results if r.oriented)

    @property
    def all_oriented(self) -> bool:
        return all(r.oriented for r in self.results)


def _check_pair(
    trs: Trs,
    config: CheckConfig,
    prec: Optional[Precedence],
    statuses,
    left: Term,
    right: Term,
    rule=None,
) -> RuleResult:
    """Decide one pair under the configured criterion; rule is passed when the
    pair is a rewrite rule so the closure route can use its spine directly."""
    p = trs.precedence if prec is None else prec
    s = trs.statuses if statuses is None else statuses
    lhs, rhs = format_term(left), format_term(right)
    d: Optional[Derivation] = None
    chained = False
    match config.criterion:
        case "rpo":
            d = rpo_gt(p, s, left, right)
        case "rco":
            d = rco_gt(p, s, left, right, config.budget)
        case "horpo":
            d = horpo_gt(p, s, left, right)
        case "horco":
            if rule is not None:
                d = orient_rule(trs, rule, p, s, config.budget)
            else:
                d = horco_gt(trs, p, s, left, right, config.budget)
                if d is None and config.chain > 1:
                    chained = horco_chain_gt(
                        trs, p, s, left, right, config.chain, config.budget
                    )
    if d is not None:
        bad = validate_derivation(d, trs, p, s, config.budget)
        if bad is not None:
            return RuleResult(lhs, rhs, False, None, f"emitted derivation failed re-checking: {bad}")
        return RuleResult(lhs, rhs, True, d)
    if chained:
        return RuleResult(
            lhs, rhs, True, None,
            f"oriented by a chain of at most {config.chain} context steps",
        )
    if config.criterion == "horco":
        return RuleResult(lhs, rhs, False, None, "not oriented within budget")
    return RuleResult(lhs, rhs, False, None, "no applicable case")


def _require_criterion_fit(trs: Trs, criterion: str) -> None:
    if criterion in ("rpo", "rco"):
        for rule in trs.rules:
            if not (is_first_order(rule.lhs) and is_first_order(rule.rhs)):
                raise ValueError(
                    f"criterion {criterion} needs a first-order system; "
                    f"rule {format_term(rule.lhs)} -> {format_term(rule.rhs)} is not"
                )


def run_check(
    trs: Trs,
    config: CheckConfig,
    prec: Optional[Precedence] = None,
    statuses=None,
) -> CheckReport:
    """Orient every rule under the configured criterion; each derivation is
    re-validated before it is reported."""
    _require_criterion_fit(trs, config.criterion)
    results = tuple(
        _check_pair(trs, config, prec, statuses, r.lhs, r.rhs, rule=r)
        for r in trs.rules
    )
    return CheckReport(config.criterion, results)


def run_compare(trs: Trs, config: CheckConfig, left: Term, right: Term) -> CheckReport:
    """Decide a single ordered pair under the configured criterion."""
    if config.criterion in ("rpo", "rco"):
        if not (is_first_order(left) and is_first_order(right)):
            raise ValueError(f"criterion {config.criterion} needs first-order terms")
    result = _check_pair(trs, config, None, None, left, right)
    return CheckReport(config.criterion, (result,))


def _ranked_classes(names: list[str]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """All linear quasi-orders over names, as class tuples from highest to
    lowest, in a deterministic order."""
    if not names:
        yield ()
        return
    first, rest = names[0], names[1:]
    for sub in _ranked_classes(rest):
        # first joins an existing class, or forms its own at any rank
        for i in range(len(sub)):
            yield sub[:i] + (tuple(sorted((first, *sub[i]))),) + sub[i + 1 :]
        for i in range(len(sub) + 1):
            yield sub[:i] + ((first,),) + sub[i:]


def _respects_pins(trs: Trs, rank: dict[str, int]) -> bool:
    for a, op, b in trs.prec_decls:
        if op == ">" and not rank[a] < rank[b]:
            return False
        if op == "~" and rank[a] != rank[b]:
            return False
    return True


def search_precedence(
    trs: Trs, config: CheckConfig
) -> Optional[tuple[Precedence, dict[str, Status], CheckReport]]:
    """Exhaustive search over linear quasi-orders and class status assignments
    (respecting declared pins); first assignment orienting every rule wins."""
    names = sorted(trs.signature)
    if len(names) > MAX_SEARCH_SYMBOLS:
        raise ValueError(
            f"precedence search caps at {MAX_SEARCH_SYMBOLS} symbols; got {len(names)}"
        )
    pinned = trs.statuses
    for classes in _ranked_classes(names):
        rank = {n: i for i, cls in enumerate(classes) for n in cls}
        if not _respects_pins(trs, rank):
            continue
        decls = [(cls[0], "~", n) for cls in classes for n in cls[1:]]
        decls += [
            (classes[i][0], ">", classes[i + 1][0]) for i in range(len(classes) - 1)
        ]
        prec = Precedence.of(names, decls)

        # one status per class; pins fix it, clashes kill the candidate
        choices: list[list[Status]] = []
        ok = True
        for cls in classes:
            pins = {pinned[n] for n in cls if n in pinned}
            if len(pins) > 1:
                ok = False
                break
            if pins:
                choices.append([pins.pop()])
            elif any(arity(trs.signature[n]) >= 2 for n in cls):
                choices.append([Status.LEX_LR, Status.LEX_RL, Status.MUL])
            else:
                choices.append([Status.LEX_LR])
        if not ok:
            continue
        for combo in itertools.product(*choices):
            statuses = {
                n: st for cls, st in zip(classes, combo) for n in cls
            }
            report = run_check(trs, config, prec, statuses)
            if report.all_oriented:
                annotated = CheckReport(
                    report.criterion,
                    report.results,
                    precedence=classes,
                    statuses=tuple(sorted((n, st.value) for n, st in statuses.items())),
                )
                return prec, statuses, annotated
    return None


def report_to_json(report: CheckReport) -> dict:
    out = {
        "version": 1,
        "criterion": report.criterion,
        "rules": [
            {
                "lhs": r.lhs,
                "rhs": r.rhs,
                "oriented": r.oriented,
                "derivation": derivation_to_json(r.derivation)
                if r.derivation is not None
                else None,
                "reason": r.reason,
            }
            for r in report.results
        ],
        "summary": {"oriented": report.oriented, "total": len(report.results)},
    }
    if report.precedence is not None:
        out["precedence"] = [list(cls) for cls in report.precedence]
    if report.statuses is not None:
        out["statuses"] = {n: v for n, v in report.statuses}
    return out


def emit_report(report: CheckReport, fmt: str = "text") -> str:
    """Render a report; the json form is byte-stable for fixed input."""
    if fmt == "json":
        return json.dumps(report_to_json(report), indent=2, sort_keys=True)
    lines = [f"criterion: {report.criterion}"]
    if report.precedence is not None:
        lines.append(
            "precedence: " + " > ".join(" ~ ".join(cls) for cls in report.precedence)
        )
    if report.statuses is not None:
        lines.append(
            "statuses: " + ", ".join(f"{n}:{v}" for n, v in report.statuses)
        )
    for r in report.results:
        lines.append(f"rule: {r.lhs} -> {r.rhs}")
        if r.oriented and r.derivation is not None:
            lines.append("  oriented")
            lines.append(format_derivation(r.derivation, indent=1))
        elif r.oriented:
            lines.append(f"  oriented ({r.reason})")
        else:
            lines.append(f"  not oriented ({r.reason})")
    lines.append(f"summary: {report.oriented} of {len(report.results)} oriented")
    return "\n".join(lines)
