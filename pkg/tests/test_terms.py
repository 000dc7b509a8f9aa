from __future__ import annotations

import random

from horco.enumeration import enumerate_terms
from horco.terms import (
    App,
    Lam,
    Sym,
    Var,
    alpha_eq,
    alpha_key,
    app_of,
    beta_reducts,
    children,
    free_vars,
    fresh_name,
    is_first_order,
    is_strict_subterm,
    is_symbol_headed,
    rename_binder,
    replace_at,
    spine,
    strict_subterms,
    substitute,
    subterm_at,
    subterm_positions,
    term_size,
    typeof,
)
from horco.types import Arrow, Base

B = Base("B")
X, Y = Var("x", B), Var("y", B)
F = Var("F", Arrow(B, B))
S = Sym("s", Arrow(B, B))
M = Sym("m", Arrow(B, Arrow(B, B)))
Z = Sym("0", B)
H = Sym("h", Arrow(Arrow(B, B), B))

SIG = {"0": B, "s": Arrow(B, B), "m": Arrow(B, Arrow(B, B)), "h": Arrow(Arrow(B, B), B)}


def _size_oracle(t):
    """Node count by direct recursion: one per variable, symbol, or binder."""
    if isinstance(t, (Var, Sym)):
        return 1
    if isinstance(t, App):
        return _size_oracle(t.fun) + _size_oracle(t.arg)
    return 1 + _size_oracle(t.body)


def _pool(lambdas=True):
    out = []
    for ty in (B, Arrow(B, B)):
        out.extend(enumerate_terms(SIG, ty, 4, vars=(X, Y, F), lambdas=lambdas))
    return out


def test_alpha_eq_basics():
    assert alpha_eq(Lam(X, X), Lam(Y, Y))
    assert not alpha_eq(X, Y)
    assert not alpha_eq(Lam(X, Lam(Y, X)), Lam(X, Lam(Y, Y)))
    # Free occurrences keep their identity under the binder.
    assert not alpha_eq(Lam(X, Y), Lam(Y, Y))
    assert alpha_eq(Lam(X, Y), Lam(Var("w", B), Y))


def test_alpha_key_agrees_with_alpha_eq():
    pool = _pool()
    rng = random.Random(7)
    sample = rng.sample(pool, min(60, len(pool)))
    for t in sample:
        for u in sample:
            assert (alpha_key(t) == alpha_key(u)) == alpha_eq(t, u)


def test_structural_eq_is_alpha_eq():
    assert Lam(X, X) == Lam(Y, Y)
    assert hash(Lam(X, X)) == hash(Lam(Y, Y))
    assert Lam(X, Y) != Lam(Y, Y)


def test_typeof_spot_checks():
    assert typeof(app_of(M, (X, Y))) == B
    assert typeof(Lam(X, App(S, X))) == Arrow(B, B)
    assert typeof(App(H, Lam(X, X))) == B
    for t in _pool():
        typeof(t)  # total on well-formed terms


def test_spine_app_of_roundtrip():
    t = app_of(M, (App(S, X), Y))
    head, args = spine(t)
    assert head == M and args == (App(S, X), Y)
    assert app_of(head, args) == t
    lam_headed = app_of(Lam(X, X), (Y,))
    head, args = spine(lam_headed)
    assert isinstance(head, Lam) and args == (Y,)


def test_children_conventions():
    t = app_of(M, (App(S, X), Y))
    assert children(t) == (App(S, X), Y)
    assert children(Lam(X, App(S, X))) == (App(S, X),)
    lam_headed = app_of(Lam(X, X), (Y,))
    assert children(lam_headed) == (Lam(X, X), Y)
    assert children(X) == ()
    assert children(Z) == ()


def test_substitute_basic_and_type_preserving():
    t = app_of(M, (X, Y))
    r = substitute(t, {X: App(S, Y)})
    assert alpha_eq(r, app_of(M, (App(S, Y), Y)))
    assert typeof(r) == typeof(t)


def test_substitute_avoids_capture():
    # (\y. m x y)[x := y] must rename the binder, not capture.
    t = Lam(Y, app_of(M, (X, Y)))
    r = substitute(t, {X: Y})
    assert isinstance(r, Lam)
    assert r.var != Y or not alpha_eq(r, Lam(Y, app_of(M, (Y, Y))))
    assert Y in free_vars(r)
    assert alpha_eq(r, Lam(Var("z", B), app_of(M, (Y, Var("z", B)))))


def test_substitute_free_vars_arithmetic():
    pool = [t for t in _pool() if X in free_vars(t)]
    rng = random.Random(11)
    repl = app_of(M, (Y, Y))
    for t in rng.sample(pool, min(40, len(pool))):
        r = substitute(t, {X: repl})
        assert free_vars(r) == (free_vars(t) - {X}) | free_vars(repl)
        assert typeof(r) == typeof(t)


def test_substitution_composition_lemma():
    # t[x:=u][y:=v] == t[x:=u[y:=v], y:=v] when x is not free in v.
    rng = random.Random(13)
    pool = _pool()
    base_pool = [t for t in pool if typeof(t) == B]
    for _ in range(200):
        t = rng.choice(pool)
        u = rng.choice(base_pool)
        v = rng.choice([w for w in base_pool if X not in free_vars(w)])
        lhs = substitute(substitute(t, {X: u}), {Y: v})
        rhs = substitute(t, {X: substitute(u, {Y: v}), Y: v})
        assert alpha_eq(lhs, rhs)


def test_identity_substitution_is_noop():
    for t in _pool():
        assert alpha_eq(substitute(t, {}), t)
        assert alpha_eq(substitute(t, {X: X}), t)


def test_beta_reducts():
    redex = App(Lam(X, app_of(M, (X, X))), App(S, Y))
    assert [alpha_key(r) for r in beta_reducts(redex)] == [
        alpha_key(app_of(M, (App(S, Y), App(S, Y))))
    ]
    # Reduction under a binder is found too.
    nested = Lam(Y, redex)
    assert len(beta_reducts(nested)) == 1
    assert beta_reducts(app_of(M, (X, Y))) == []


def test_positions_subterm_replace_coherence():
    rng = random.Random(17)
    for t in rng.sample(_pool(), 50):
        poss = subterm_positions(t)
        assert poss[0][0] == ()
        for p, sub in poss:
            assert alpha_eq(subterm_at(t, p), sub)
            assert alpha_eq(replace_at(t, p, sub), t)
    t = app_of(M, (App(S, X), Y))
    got = replace_at(t, (1, 1), Z)
    assert alpha_eq(got, app_of(M, (App(S, Z), Y)))


def test_strict_subterms():
    t = app_of(M, (App(S, X), Y))
    subs = strict_subterms(t)
    for u in (App(S, X), X, Y):
        assert any(alpha_eq(u, v) for v in subs)
        assert is_strict_subterm(u, t)
    assert not is_strict_subterm(t, t)


def test_term_size_matches_oracle():
    for t in _pool():
        assert term_size(t) == _size_oracle(t)
    assert term_size(app_of(M, (App(S, X), Y))) == 4
    assert term_size(Lam(X, App(S, X))) == 3


def test_is_first_order():
    assert is_first_order(app_of(M, (X, Y)))
    assert is_first_order(Z)
    assert not is_first_order(Lam(X, X))
    assert not is_first_order(S)  # unapplied unary symbol
    assert not is_first_order(App(H, Lam(X, X)))
    assert not is_first_order(F)


def test_is_symbol_headed():
    assert is_symbol_headed(app_of(M, (X, Y)))
    assert is_symbol_headed(Z)
    assert not is_symbol_headed(X)
    assert not is_symbol_headed(Lam(X, X))
    assert not is_symbol_headed(App(F, X))


def test_fresh_name_and_rename_binder():
    n = fresh_name("x", {"x", "x0", "x1"})
    assert n not in {"x", "x0", "x1"}
    t = Lam(X, app_of(M, (X, Y)))
    v, body = rename_binder(t, {"x", "y"})
    assert v.name not in {"x", "y"}
    assert alpha_eq(Lam(v, body), t)
