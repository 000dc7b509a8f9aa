from __future__ import annotations

import random

import pytest

from horco.enumeration import enumerate_terms
from horco.rewriting import (
    Rewriter,
    Rule,
    RuleIndex,
    Trs,
    constant_split,
    match_syntactic,
    multi_step,
    one_step_reducts,
    reducts_plus,
    rule_steps,
    step_terms,
)
from horco.terms import (
    App,
    Lam,
    Sym,
    Var,
    alpha_eq,
    alpha_key,
    app_of,
    substitute,
    term_size,
)
from horco.types import Arrow, Base

B = Base("B")
X, Y = Var("x", B), Var("y", B)
ZERO = Sym("0", B)
S = Sym("s", Arrow(B, B))
M = Sym("m", Arrow(B, Arrow(B, B)))


def _one_step_oracle(rules, t, with_beta=True):
    """One-step reducts by direct recursion over raw applications.

    Tries every rule at the current node, contracts a root beta redex, then
    descends into fun/arg/body separately; independent of the head-indexed
    spine walk used by the implementation.
    """
    out = []
    for r in rules:
        sigma = match_syntactic(r.lhs, t)
        if sigma is not None:
            out.append(substitute(r.rhs, sigma))
    if isinstance(t, App):
        if with_beta and isinstance(t.fun, Lam):
            out.append(substitute(t.fun.body, {t.fun.var: t.arg}))
        out.extend(App(f2, t.arg) for f2 in _one_step_oracle(rules, t.fun, with_beta))
        out.extend(App(t.fun, a2) for a2 in _one_step_oracle(rules, t.arg, with_beta))
    elif isinstance(t, Lam):
        out.extend(Lam(t.var, b2) for b2 in _one_step_oracle(rules, t.body, with_beta))
    return out


def _reachable_oracle(rules, t, max_steps, max_term_size=None, with_beta=True):
    """Bounded closure of the one-step oracle, excluding the start term."""
    seen = {alpha_key(t)}
    out = []
    frontier = [t]
    for _ in range(max_steps):
        nxt = []
        for u in frontier:
            for v in _one_step_oracle(rules, u, with_beta):
                k = alpha_key(v)
                if k in seen:
                    continue
                if max_term_size is not None and term_size(v) > max_term_size:
                    continue
                seen.add(k)
                out.append(v)
                nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return out


def _keys(terms):
    return {alpha_key(t) for t in terms}


def test_rule_validation():
    with pytest.raises(ValueError):
        Rule(X, ZERO)  # variable left side
    with pytest.raises(ValueError):
        Rule(App(S, X), S)  # type mismatch
    with pytest.raises(ValueError):
        Rule(App(S, X), App(S, Y))  # extra variable on the right


def test_match_syntactic_basics():
    lhs = app_of(M, (X, ZERO))
    subj = app_of(M, (App(S, ZERO), ZERO))
    sigma = match_syntactic(lhs, subj)
    assert sigma == {X: App(S, ZERO)}
    assert match_syntactic(lhs, app_of(M, (ZERO, App(S, ZERO)))) is None


def test_match_syntactic_repeated_variables():
    lhs = app_of(M, (X, X))
    assert match_syntactic(lhs, app_of(M, (App(S, ZERO), App(S, ZERO)))) is not None
    assert match_syntactic(lhs, app_of(M, (ZERO, App(S, ZERO)))) is None


def test_match_syntactic_respects_binder_scope():
    F = Var("F", B)
    pat = Lam(X, F)  # F may not capture the bound variable
    assert match_syntactic(pat, Lam(Y, Y)) is None
    sigma = match_syntactic(pat, Lam(Y, ZERO))
    assert sigma == {F: ZERO}
    # Bound occurrences must line up modulo alpha.
    assert match_syntactic(Lam(X, X), Lam(Y, Y)) == {}


def test_match_syntactic_type_gates():
    G = Var("G", Arrow(B, B))
    assert match_syntactic(G, S) == {G: S}
    assert match_syntactic(G, ZERO) is None
    assert match_syntactic(Lam(X, ZERO), Lam(Var("F", Arrow(B, B)), ZERO)) is None


MINUS = Sym("minus", Arrow(B, Arrow(B, B)))
MINUS_RULES = (
    Rule(app_of(MINUS, (X, ZERO)), X),
    Rule(app_of(MINUS, (ZERO, X)), ZERO),
    Rule(
        app_of(MINUS, (App(S, X), App(S, Y))),
        app_of(MINUS, (X, Y)),
    ),
)


def test_one_step_matches_oracle_first_order():
    sig = {"0": B, "s": Arrow(B, B), "minus": Arrow(B, Arrow(B, B))}
    pool = list(enumerate_terms(sig, B, 6, vars=(X, Y)))
    rng = random.Random(23)
    for t in rng.sample(pool, 120):
        got = step_terms(MINUS_RULES, t)
        assert _keys(got) == _keys(_one_step_oracle(MINUS_RULES, t))
        assert len(_keys(got)) == len(got)  # deduplicated


def test_one_step_matches_oracle_higher_order():
    L = Base("L")
    FCONS = Sym("fcons", Arrow(Arrow(B, B), Arrow(L, L)))
    LAPPLY = Sym("lapply", Arrow(B, Arrow(L, B)))
    F = Var("F", Arrow(B, B))
    lv = Var("l", L)
    rules = (
        Rule(
            app_of(LAPPLY, (X, app_of(FCONS, (F, lv)))),
            App(F, app_of(LAPPLY, (X, lv))),
        ),
    )
    sig = {"fcons": FCONS.ty, "lapply": LAPPLY.ty, "0": B}
    pool = list(enumerate_terms(sig, B, 6, vars=(X, F, lv), lambdas=True))
    rng = random.Random(29)
    for t in rng.sample(pool, 120):
        for with_beta in (False, True):
            got = step_terms(rules, t, with_beta)
            assert _keys(got) == _keys(_one_step_oracle(rules, t, with_beta)), t


def test_partial_application_left_sides_rewrite_inside_spines():
    P = Sym("p", Arrow(B, Arrow(B, B)))
    Q = Sym("q", Arrow(B, B))
    rules = (Rule(App(P, X), Q),)  # p x -> q at type B -> B
    t = app_of(P, (App(Q, ZERO), ZERO))  # p (q 0) 0
    got = step_terms(rules, t, with_beta=False)
    assert _keys(got) == _keys([App(Q, ZERO)])  # rewrites the inner p (q 0)
    assert _keys(got) == _keys(_one_step_oracle(rules, t, with_beta=False))


def test_rule_index_groups_duplicate_left_sides():
    rules = (
        Rule(App(S, X), X),
        Rule(App(S, X), ZERO),
        Rule(App(S, ZERO), App(S, ZERO)),
    )
    idx = RuleIndex(rules)
    assert len(idx.by_head["s"]) == 2  # two distinct left sides
    got = idx.root_steps(App(S, ZERO))
    assert _keys(got) == _keys([ZERO, App(S, ZERO)])
    assert _keys(rule_steps(rules, App(S, ZERO))) == _keys([ZERO, App(S, ZERO)])


def test_reachable_matches_bfs_oracle():
    sig = {"0": B, "s": Arrow(B, B), "minus": Arrow(B, Arrow(B, B))}
    pool = list(enumerate_terms(sig, B, 6, vars=(X, Y)))
    rng = random.Random(31)
    rw = Rewriter(MINUS_RULES)
    for t in rng.sample(pool, 60):
        for steps in (1, 2, 3):
            got = rw.reachable(t, steps, max_term_size=8)
            want = _reachable_oracle(MINUS_RULES, t, steps, max_term_size=8)
            assert _keys(got) == _keys(want)
            assert alpha_key(t) not in _keys(got) or any(
                alpha_key(v) == alpha_key(t) for v in want
            )


def test_reachable_size_pruning():
    grow = (Rule(ZERO, App(S, ZERO)),)
    rw = Rewriter(grow, with_beta=False)
    out = rw.reachable(ZERO, 10, max_term_size=3)
    assert sorted(term_size(t) for t in out) == [2, 3]
    unbounded = rw.reachable(ZERO, 4)
    assert sorted(term_size(t) for t in unbounded) == [2, 3, 4, 5]


def test_multi_step_delegates_to_rewriter():
    t = app_of(MINUS, (App(S, ZERO), App(S, ZERO)))
    a = multi_step(MINUS_RULES, t, 3)
    b = Rewriter(MINUS_RULES).reachable(t, 3)
    assert _keys(a) == _keys(b)
    assert any(alpha_eq(v, ZERO) for v in a)  # minus (s 0) (s 0) ->> 0


def test_one_step_reducts_kinds():
    from horco.rewriting import SymbolDecl

    redex = App(Lam(X, App(S, X)), ZERO)
    trs = Trs(
        sorts=("B",),
        symbols=(SymbolDecl("0", B), SymbolDecl("s", Arrow(B, B))),
        variables=(X,),
        rules=(Rule(App(S, X), X),),
    )
    t = App(S, redex)
    beta_only = one_step_reducts(trs, t, "beta")
    rules_only = one_step_reducts(trs, t, "rules")
    both = one_step_reducts(trs, t, "both")
    assert _keys(beta_only) == _keys([App(S, App(S, ZERO))])
    # Root step plus a step inside the abstraction body.
    inner = App(S, App(Lam(X, X), ZERO))
    assert _keys(rules_only) == _keys([redex, inner])
    assert _keys(both) == _keys(beta_only) | _keys(rules_only)
    with pytest.raises(ValueError):
        one_step_reducts(trs, t, "sideways")
    assert _keys(reducts_plus(trs, t, 3)) >= _keys(both)
    with pytest.raises(ValueError):
        reducts_plus(trs, t, 0)


def test_trs_checks_declarations():
    from horco.rewriting import SymbolDecl

    with pytest.raises(ValueError):
        Trs(
            sorts=("B",),
            symbols=(SymbolDecl("s", Arrow(B, B)),),
            variables=(),
            rules=(Rule(App(S, X), X),),  # x undeclared
        )


def test_constant_split(minus_trs):
    constants, defined = constant_split(minus_trs)
    assert defined == {"minus", "div"}
    assert constants == {"0", "s"}
