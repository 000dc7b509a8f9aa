from __future__ import annotations

import pytest

from horco.derivations import Budget
from horco.ho import (
    cc_ho_member,
    horco_chain_gt,
    horco_gt,
    horpo_case6_trips,
    horpo_gt,
    orient_rule,
    reset_horpo_case6_trips,
    size_approx_gt,
    whorco_gt,
    whorco_pairs,
)
from horco.enumeration import subterm_closure
from horco.terms import App, Lam, Var, alpha_eq, app_of
from horco.text import parse_term, parse_trs
from horco.types import Arrow, Base

B = Base("B")

TINY_HO = """
sort B
symbol b0 : B
symbol s : B -> B
symbol p : (B -> B) -> B -> B
var F : B -> B
var x : B
"""


def _pt(trs, text):
    return parse_term(text, trs.signature, {v.name: v.ty for v in trs.variables})


def test_examples_orient(differentiation_trs, lists_trs, process_trs):
    for trs in (differentiation_trs, lists_trs, process_trs):
        for rule in trs.rules:
            d = orient_rule(trs, rule)
            assert d is not None, rule
            assert (d.kind, d.rule) == ("whorco", "context")
            assert alpha_eq(d.left, rule.lhs) and alpha_eq(d.right, rule.rhs)


def test_examples_are_beyond_the_path_ordering(
    differentiation_trs, lists_trs, process_trs
):
    # None of the three example rules is oriented by the recursive path
    # procedure alone; each needs the closure-based orientation.
    for trs in (differentiation_trs, lists_trs, process_trs):
        for rule in trs.rules:
            assert horpo_gt(trs.precedence, trs.statuses, rule.lhs, rule.rhs) is None


def test_minus_rules_oriented_div_rule_not(minus_trs):
    prec, stat = minus_trs.precedence, minus_trs.statuses
    labels = []
    for rule in minus_trs.rules:
        d = horpo_gt(prec, stat, rule.lhs, rule.rhs)
        labels.append(None if d is None else d.rule)
    assert labels == ["horpo1", "horpo1", "horpo3", "horpo1", None]
    for rule in minus_trs.rules[:4]:
        assert orient_rule(minus_trs, rule) is not None
    assert orient_rule(minus_trs, minus_trs.rules[4]) is None


def test_div_rule_stays_unoriented_with_doubled_budget(minus_trs):
    rule = minus_trs.rules[4]
    assert orient_rule(minus_trs, rule, budget=Budget().doubled()) is None


def test_horpo_case_labels(minus_trs):
    prec, stat = minus_trs.precedence, minus_trs.statuses
    cases = [
        ("minus x y", "x", "horpo1"),
        ("div (s x) y", "minus x y", "horpo2"),
        ("minus (s x) (s y)", "minus x y", "horpo3"),
        ("div (s x) y", "div x y", "horpo4"),
    ]
    for left, right, label in cases:
        d = horpo_gt(prec, stat, _pt(minus_trs, left), _pt(minus_trs, right))
        assert d is not None and d.rule == label, (left, right)


def test_horpo_application_cases():
    trs = parse_trs(TINY_HO)
    prec, stat = trs.precedence, trs.statuses
    t = _pt(trs, "p F (s x)")
    u = App(_pt(trs, "F"), _pt(trs, "x"))
    d = horpo_gt(prec, stat, t, u)
    assert d is not None and d.rule == "horpo5"
    t2 = App(_pt(trs, "F"), _pt(trs, "s x"))
    d2 = horpo_gt(prec, stat, t2, u)
    assert d2 is not None and d2.rule == "horpo6"
    # Pairwise-equal applications are not strictly above each other.
    assert horpo_gt(prec, stat, u, u) is None


def test_horpo_abstraction_case():
    trs = parse_trs(TINY_HO)
    prec, stat = trs.precedence, trs.statuses
    x = Var("x", B)
    w = Var("w", B)
    s = trs.sym("s")
    d = horpo_gt(prec, stat, Lam(x, App(s, x)), Lam(w, w))
    assert d is not None and d.rule == "horpo7"
    # Binder types must agree.
    F = Var("F", Arrow(B, B))
    assert horpo_gt(prec, stat, Lam(F, _pt(trs, "b0")), Lam(x, _pt(trs, "b0"))) is None


def test_horpo_type_gate():
    trs = parse_trs(TINY_HO)
    prec, stat = trs.precedence, trs.statuses
    assert horpo_gt(prec, stat, _pt(trs, "p F x"), _pt(trs, "F")) is None
    assert horpo_gt(prec, stat, _pt(trs, "s x"), _pt(trs, "x")) is not None


def test_case6_counter_stays_zero(minus_trs, lists_trs, process_trs):
    reset_horpo_case6_trips()
    for trs in (minus_trs, lists_trs, process_trs):
        for rule in trs.rules:
            horpo_gt(trs.precedence, trs.statuses, rule.lhs, rule.rhs)
    tiny = parse_trs(TINY_HO)
    horpo_gt(tiny.precedence, tiny.statuses, App(_pt(tiny, "F"), _pt(tiny, "s x")), App(_pt(tiny, "F"), _pt(tiny, "x")))
    assert horpo_case6_trips() == 0


def test_cc_membership_labels(lists_trs):
    args = (_pt(lists_trs, "x"), _pt(lists_trs, "fcons F l"))
    cases = [
        ("x", "arg"),
        ("F", "decomp"),
        ("l", "decomp"),
        ("lapply x l", "call"),
    ]
    for text, label in cases:
        d = cc_ho_member(lists_trs, lists_trs.rules, "lapply", args, _pt(lists_trs, text))
        assert d is not None and d.rule == label, text
        assert d.kind == "cc"
    rhs = lists_trs.rules[0].rhs
    d = cc_ho_member(lists_trs, lists_trs.rules, "lapply", args, rhs)
    assert d is not None and d.rule == "app"


def test_cc_membership_respects_accessibility():
    # Collapsing the two sorts makes the list argument type self-negative,
    # which removes the function component from the closure.
    src = """
    sort B
    symbol fcons : (B -> B) -> B -> B
    symbol lapply : B -> B -> B status lex-rl
    var F : B -> B
    var l : B
    var x : B
    rule lapply x (fcons F l) -> F (lapply x l)
    """
    trs = parse_trs(src)
    args = (_pt(trs, "x"), _pt(trs, "fcons F l"))
    assert cc_ho_member(trs, trs.rules, "lapply", args, _pt(trs, "F")) is None
    assert orient_rule(trs, trs.rules[0]) is None


def test_size_approximation(minus_trs):
    mt = lambda s: _pt(minus_trs, s)
    d = size_approx_gt(
        minus_trs, minus_trs.rules, "div", (mt("s x"), mt("y")), mt("s x"), mt("x")
    )
    assert d is not None and (d.kind, d.rule) == ("approx", "size-base")
    # Strictness: a term is not above its own one-step reduct.
    d = size_approx_gt(
        minus_trs,
        minus_trs.rules,
        "div",
        (mt("minus (s x) (s y)"), mt("y")),
        mt("minus (s x) (s y)"),
        mt("minus x y"),
    )
    assert d is None
    # But a seed may reduce to the target.
    a = mt("minus (minus (s x) (s y)) y")
    d = size_approx_gt(
        minus_trs, minus_trs.rules, "div", (a, mt("y")), a, mt("minus x y")
    )
    assert d is not None and d.rule == "size-red"
    # And strict descent composes.
    a2 = mt("minus (s x) (s y)")
    d = size_approx_gt(
        minus_trs, minus_trs.rules, "div", (a2, mt("y")), a2, mt("x")
    )
    assert d is not None and d.rule == "size-trans"


def test_size_approximation_is_type_homogeneous(lists_trs):
    a = _pt(lists_trs, "fcons F l")
    assert (
        size_approx_gt(
            lists_trs,
            lists_trs.rules,
            "lapply",
            (_pt(lists_trs, "x"), a),
            a,
            _pt(lists_trs, "F"),
        )
        is None
    )
    d = size_approx_gt(
        lists_trs,
        lists_trs.rules,
        "lapply",
        (_pt(lists_trs, "x"), a),
        a,
        _pt(lists_trs, "l"),
    )
    assert d is not None and d.rule == "size-base"


def test_whorco_and_horco_agree_on_rule_instances(minus_trs):
    prec, stat = minus_trs.precedence, minus_trs.statuses
    for rule in minus_trs.rules[:4]:
        assert whorco_gt(minus_trs, prec, stat, rule.lhs, rule.rhs) is not None
        assert horco_gt(minus_trs, prec, stat, rule.lhs, rule.rhs) is not None
    rule = minus_trs.rules[4]
    assert whorco_gt(minus_trs, prec, stat, rule.lhs, rule.rhs) is None
    assert horco_gt(minus_trs, prec, stat, rule.lhs, rule.rhs) is None


def test_horco_closes_under_contexts(minus_trs):
    # minus x 0 -> x lifted under s: s (minus x 0) > s x.
    t = _pt(minus_trs, "s (minus x 0)")
    u = _pt(minus_trs, "s x")
    d = horco_gt(minus_trs, minus_trs.precedence, minus_trs.statuses, t, u)
    assert d is not None
    assert d.kind == "horco" and d.rule == "context"


def test_whorco_pairs_sweep(lists_trs):
    rule = lists_trs.rules[0]
    pool = subterm_closure([rule.lhs, rule.rhs])
    pairs = whorco_pairs(
        lists_trs, lists_trs.precedence, lists_trs.statuses, pool, rounds=1
    )
    assert (rule.lhs, rule.rhs) in pairs
    for (t, u), d in pairs.items():
        assert d.kind == "whorco"
        assert alpha_eq(d.left, t) and alpha_eq(d.right, u)
        assert not alpha_eq(t, u)
    wider = whorco_pairs(
        lists_trs, lists_trs.precedence, lists_trs.statuses, pool, rounds=2
    )
    assert set(pairs) <= set(wider)


def test_horco_chain_extends_single_step(minus_trs):
    prec, stat = minus_trs.precedence, minus_trs.statuses
    t = _pt(minus_trs, "minus (s (s x)) (s (s y))")
    u = _pt(minus_trs, "minus x y")
    # Directly comparable, and a chain of length one agrees.
    assert horco_gt(minus_trs, prec, stat, t, u) is not None
    pool = subterm_closure([t, u])
    assert horco_chain_gt(minus_trs, prec, stat, t, u, max_chain=1, pool=pool)
    assert horco_chain_gt(minus_trs, prec, stat, t, u, max_chain=3, pool=pool)
    # An unoriented pair stays unoriented under chaining.
    rule = minus_trs.rules[4]
    pool = subterm_closure([rule.lhs, rule.rhs])
    assert not horco_chain_gt(
        minus_trs, prec, stat, rule.lhs, rule.rhs, max_chain=3, pool=pool
    )


def test_orient_rule_rejects_foreign_rules(minus_trs, lists_trs):
    with pytest.raises(Exception):
        orient_rule(minus_trs, lists_trs.rules[0])
