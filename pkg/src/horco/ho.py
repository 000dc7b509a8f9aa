"""Higher-order orderings: HORPO, the rule-parametric computability closure
with its size-ordering approximation, closure-based rule orientation, and the
context/chain closures built on top of it."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .derivations import Budget, Derivation
from .fo import _ext_with_evidence
from .order import Cmp, Precedence, Status, prec_cmp, status_ext, status_of
from .rewriting import Rewriter, Rule, Trs
from .terms import (
    App,
    Lam,
    Sym,
    Term,
    Var,
    alpha_eq,
    alpha_key,
    app_of,
    free_vars,
    fresh_name,
    rename_binder,
    replace_at,
    spine,
    subterm_positions,
    substitute,
    term_size,
    typeof,
)
from .types import Base, acc, arity

Statuses = Mapping[str, Status]

# counter for the structurally possible but type-impossible case-6 variants;
# it must stay at zero on well-typed input
_case6_trips = 0


def horpo_case6_trips() -> int:
    return _case6_trips


def reset_horpo_case6_trips() -> None:
    global _case6_trips
    _case6_trips = 0


class _HorpoSolver:
    """Memoized decision procedure for the monomorphic higher-order RPO."""

    def __init__(self, prec: Precedence, statuses: Statuses):
        self.prec = prec
        self.statuses = statuses
        self.memo: dict[tuple[Term, Term], Optional[Derivation]] = {}

    def gt(self, t: Term, u: Term) -> Optional[Derivation]:
        if typeof(t) != typeof(u):
            return None
        key = (t, u)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # cycles cannot arise; this is belt and braces
        d = self._compute(t, u)
        self.memo[key] = d
        return d

    def ge_evidence(self, t: Term, u: Term) -> Optional[tuple[Derivation, ...]]:
        """() for alpha-equal sides, (d,) for a strict derivation, None else."""
        if alpha_eq(t, u):
            return ()
        d = self.gt(t, u)
        if d is not None:
            return (d,)
        return None

    def _p_evidence(
        self, t: Term, ts: Sequence[Term], u: Term
    ) -> Optional[tuple[Derivation, ...]]:
        # P(f, t⃗, u) = f t⃗ > u or some t_j >= u
        for tj in ts:
            if alpha_eq(tj, u):
                return ()
        d = self.gt(t, u)
        if d is not None:
            return (d,)
        for tj in ts:
            d = self.gt(tj, u)
            if d is not None:
                return (d,)
        return None

    def _compute(self, t: Term, u: Term) -> Optional[Derivation]:
        h, ts = spine(t)
        if isinstance(h, Sym):
            # (1): some argument is >= the right side
            for ti in ts:
                ev = self.ge_evidence(ti, u)
                if ev is not None:
                    return Derivation("horpo1", "horpo", u, left=t, children=ev)
            g, us = spine(u)
            if isinstance(g, Sym):
                c = prec_cmp(self.prec, h.name, g.name)
                if c is Cmp.GREATER:
                    kids: list[Derivation] = []
                    ok = True
                    for uj in us:
                        ev = self._p_evidence(t, ts, uj)
                        if ev is None:
                            ok = False
                            break
                        kids.extend(ev)
                    if ok:
                        return Derivation(
                            "horpo2", "horpo", u, left=t, children=tuple(kids)
                        )
                elif c is Cmp.EQUIVALENT:
                    status = status_of(self.prec, self.statuses, h.name)
                    if status is Status.MUL:
                        ok, ext = _ext_with_evidence(self.gt, status, ts, us)
                        if ok:
                            return Derivation(
                                "horpo3", "horpo", u, left=t, children=tuple(ext)
                            )
                    else:
                        ok, ext = _ext_with_evidence(self.gt, status, ts, us)
                        if ok:
                            kids = list(ext)
                            for uj in us:
                                ev = self._p_evidence(t, ts, uj)
                                if ev is None:
                                    ok = False
                                    break
                                kids.extend(ev)
                            if ok:
                                return Derivation(
                                    "horpo4", "horpo", u, left=t, children=tuple(kids)
                                )
            # (5): right side is an application; cover some left-flattening
            if isinstance(u, App):
                d = self._case5(t, ts, u)
                if d is not None:
                    return d
        # (6): both sides are applications, compared pairwise
        if isinstance(t, App) and isinstance(u, App):
            d = self._case6(t, u)
            if d is not None:
                return d
        # (7): abstractions with a common binder type
        if isinstance(t, Lam) and isinstance(u, Lam) and t.var.ty == u.var.ty:
            taken = {v.name for v in free_vars(t) | free_vars(u)}
            z = Var(fresh_name(t.var.name, taken), t.var.ty)
            d = self.gt(substitute(t.body, {t.var: z}), substitute(u.body, {u.var: z}))
            if d is not None:
                return Derivation("horpo7", "horpo", u, left=t, children=(d,))
        return None

    def _case5(self, t: Term, ts: Sequence[Term], u: Term) -> Optional[Derivation]:
        g, us = spine(u)
        for j in range(len(us)):
            parts = [app_of(g, us[:j])] + list(us[j:])
            kids: list[Derivation] = []
            ok = True
            for part in parts:
                ev = self._p_evidence(t, ts, part)
                if ev is None:
                    ok = False
                    break
                kids.extend(ev)
            if ok:
                return Derivation("horpo5", "horpo", u, left=t, children=tuple(kids))
        return None

    def _case6(self, t: App, u: App) -> Optional[Derivation]:
        global _case6_trips
        t1, t2, u1, u2 = t.fun, t.arg, u.fun, u.arg
        ta, tb = typeof(t1), typeof(t2)
        ua, ub = typeof(u1), typeof(u2)
        # the three other pairings of the multiset comparison cannot type-check
        if ta == ua and ta == ub:
            _case6_trips += 1
        if tb == ua and tb == ub:
            _case6_trips += 1
        if tb == ua and ta == ub:
            _case6_trips += 1
        e1 = self.ge_evidence(t1, u1)
        e2 = self.ge_evidence(t2, u2)
        if e1 is not None and e2 is not None and (e1 or e2):
            return Derivation("horpo6", "horpo", u, left=t, children=e1 + e2)
        return None


def horpo_gt(
    prec: Precedence, statuses: Statuses, t: Term, u: Term
) -> Optional[Derivation]:
    """Derivation for t >horpo u, or None. Sides of different types never
    compare (the ordering is monomorphic)."""
    typeof(t), typeof(u)  # raise on ill-typed input
    return _HorpoSolver(prec, statuses).gt(t, u)


class _ClosureSearch:
    """Bounded search for closure membership u in CC^f(t⃗) and for the
    size-ordering approximation, sharing member and memo tables."""

    def __init__(
        self,
        trs: Trs,
        r_view: Iterable[Rule],
        f: str,
        ts: Sequence[Term],
        budget: Budget,
        prec: Optional[Precedence] = None,
        statuses: Optional[Statuses] = None,
        engine: Optional[Rewriter] = None,
        red_pool: Optional[Mapping[object, Term]] = None,
    ):
        self.trs = trs
        self.rules = tuple(r_view)
        self.engine = Rewriter(self.rules) if engine is None else engine
        # Optional admission filter for reduction-derived members, keyed by
        # alpha key with a canonical representative. Large sweeps use it to
        # keep saturation inside the candidate pool.
        self.red_pool = red_pool
        self.sig = trs.signature
        if f not in self.sig:
            raise ValueError(f"undeclared symbol: {f}")
        if len(ts) > arity(self.sig[f]):
            raise ValueError(f"too many arguments for {f}")
        self.prec = trs.precedence if prec is None else prec
        self.statuses = trs.statuses if statuses is None else statuses
        self.f = f
        self.ts = tuple(ts)
        self.context = app_of(trs.sym(f), ts)
        typeof(self.context)  # raise on type violations
        self.forbidden: frozenset[Var] = frozenset().union(
            *(free_vars(s) for s in ts)
        ) if ts else frozenset()
        self.budget = budget
        self.size_cap = term_size(self.context) + budget.max_term_size_slack
        self.pool_vars: set[Var] = set()
        self.generation = 0
        self.members: dict[Term, Derivation] = {}
        self.cc_pos: dict[Term, Derivation] = {}
        self.cc_neg: dict[Term, tuple[int, int]] = {}
        self.ap_pos: dict[tuple[Term, Term], Derivation] = {}
        self.ap_neg: dict[tuple[Term, Term], tuple[int, int]] = {}
        self.red_memo: dict[Term, list[Term]] = {}
        self.red_key_memo: dict[Term, frozenset] = {}
        for ti in self.ts:
            if ti not in self.members:
                self.members[ti] = Derivation("arg", "cc", ti, context=self.context)
        self._saturate()

    # --- member saturation: decomp spines, forward reduction, binder probes

    def _full_base(self, t: Term) -> bool:
        h, args = spine(t)
        return (
            isinstance(h, Sym)
            and h.name in self.sig
            and len(args) == arity(self.sig[h.name])
            and isinstance(typeof(t), Base)
        )

    def _reducts(self, t: Term) -> list[Term]:
        if t not in self.red_memo:
            self.red_memo[t] = self.engine.reachable(
                t, self.budget.max_red_steps, self.size_cap
            )
        return self.red_memo[t]

    def _reduct_keys(self, t: Term) -> frozenset:
        if t not in self.red_key_memo:
            self.red_key_memo[t] = frozenset(alpha_key(v) for v in self._reducts(t))
        return self.red_key_memo[t]

    def _reduces(self, a: Term, b: Term) -> bool:
        return alpha_key(b) in self._reduct_keys(a)

    def _red_members(self, m: Term) -> Iterable[Term]:
        if self.red_pool is None:
            return self._reducts(m)
        pool = self.red_pool
        out = []
        for v in self._reducts(m):
            canon = pool.get(alpha_key(v))
            if canon is not None:
                out.append(canon)
        return out

    def _saturate(self) -> None:
        changed = True
        while changed:
            changed = False
            for m, dm in list(self.members.items()):
                if self._full_base(m):
                    h, args = spine(m)
                    assert isinstance(h, Sym)
                    for i in sorted(acc(h.name, self.sig)):
                        ui = args[i - 1]
                        if ui not in self.members:
                            self.members[ui] = Derivation(
                                "decomp", "cc", ui, context=self.context, children=(dm,)
                            )
                            changed = True
                for v in self._red_members(m):
                    if v not in self.members:
                        self.members[v] = Derivation(
                            "red", "cc", v, context=self.context, children=(dm,)
                        )
                        changed = True
                if isinstance(m, Lam) and term_size(m) + 1 <= self.size_cap:
                    for v in sorted(self.pool_vars, key=lambda w: w.name):
                        if typeof(v) == m.var.ty:
                            a = App(m, v)
                            if a not in self.members:
                                dv = Derivation("var", "cc", v, context=self.context)
                                self.members[a] = Derivation(
                                    "app", "cc", a, context=self.context, children=(dm, dv)
                                )
                                changed = True

    def _add_pool_var(self, z: Var) -> None:
        if z not in self.pool_vars:
            self.pool_vars.add(z)
            self.generation += 1  # invalidates negative caches
            self._saturate()

    # --- goal-directed membership

    def member(self, goal: Term, depth: int) -> Optional[Derivation]:
        if goal in self.members:
            return self.members[goal]
        if goal in self.cc_pos:
            return self.cc_pos[goal]
        neg = self.cc_neg.get(goal)
        if neg is not None and neg[0] == self.generation and neg[1] >= depth:
            return None
        d = self._member_compute(goal, depth)
        if d is not None:
            self.cc_pos[goal] = d
        else:
            self.cc_neg[goal] = (self.generation, depth)
        return d

    def _member_compute(self, goal: Term, depth: int) -> Optional[Derivation]:
        if depth <= 0:
            return None
        match goal:
            case Var():
                if goal not in self.forbidden:
                    return Derivation("var", "cc", goal, context=self.context)
                return None
            case Sym(name=g):
                if prec_cmp(self.prec, self.f, g) is Cmp.GREATER:
                    return Derivation("prec", "cc", goal, context=self.context)
                return None
            case Lam():
                taken = (
                    {v.name for v in self.forbidden}
                    | {v.name for v in free_vars(goal)}
                    | {v.name for v in self.pool_vars}
                    | set(self.sig)
                )
                z, body = rename_binder(goal, taken)
                self._add_pool_var(z)
                d = self.member(body, depth - 1)
                if d is not None:
                    return Derivation(
                        "lam", "cc", Lam(z, body), context=self.context, children=(d,)
                    )
                return None
            case App(fun=fn, arg=ar):
                h, args = spine(goal)
                if isinstance(h, Sym):
                    d = self._try_call(goal, h, args, depth)
                    if d is not None:
                        return d
                d1 = self.member(fn, depth - 1)
                if d1 is not None:
                    d2 = self.member(ar, depth - 1)
                    if d2 is not None:
                        return Derivation(
                            "app", "cc", goal, context=self.context, children=(d1, d2)
                        )
                return None
        return None

    def _try_call(
        self, goal: Term, g: Sym, args: tuple[Term, ...], depth: int
    ) -> Optional[Derivation]:
        # equal-class recursive call on a fully applied, base-typed goal
        if not self._full_base(goal):
            return None
        if prec_cmp(self.prec, self.f, g.name) is not Cmp.EQUIVALENT:
            return None
        status = status_of(self.prec, self.statuses, self.f)
        used: list[Derivation] = []

        def rel(a: Term, b: Term) -> bool:
            if self._reduces(a, b):
                return True
            d = self.approx(a, b, depth - 1)
            if d is not None:
                used.append(d)
                return True
            return False

        if not status_ext(rel, status, list(self.ts), list(args)):
            return None
        kids: list[Derivation] = list(used)
        for uj in args:
            d = self.member(uj, depth - 1)
            if d is not None:
                kids.append(d)
                continue
            # an argument dominated by some t_i needs no membership of its own
            covered = False
            for ti in self.ts:
                if self._reduces(ti, uj):
                    covered = True
                    break
                da = self.approx(ti, uj, depth - 1)
                if da is not None:
                    kids.append(da)
                    covered = True
                    break
            if not covered:
                return None
        uniq: list[Derivation] = []
        for k in kids:
            if not any(k is other for other in uniq):
                uniq.append(k)
        return Derivation("call", "cc", goal, context=self.context, children=tuple(uniq))

    # --- size-ordering approximation

    def approx(self, a: Term, b: Term, depth: int) -> Optional[Derivation]:
        key = (a, b)
        if key in self.ap_pos:
            return self.ap_pos[key]
        neg = self.ap_neg.get(key)
        if neg is not None and neg[0] == self.generation and neg[1] >= depth:
            return None
        d = self._approx_compute(a, b, depth)
        if d is not None:
            self.ap_pos[key] = d
        else:
            self.ap_neg[key] = (self.generation, depth)
        return d

    def _approx_compute(self, a: Term, b: Term, depth: int) -> Optional[Derivation]:
        if depth <= 0 or typeof(a) != typeof(b):
            return None
        if self._full_base(a):
            h, aargs = spine(a)
            assert isinstance(h, Sym)
            bh, bargs = spine(b)
            accs = acc(h.name, self.sig)
            for j in range(len(bargs) + 1):
                core = app_of(bh, bargs[:j])
                rest = bargs[j:]
                for i in sorted(accs):
                    if i <= len(aargs) and alpha_eq(aargs[i - 1], core):
                        kids = []
                        ok = True
                        for bl in rest:
                            d = self.member(bl, depth - 1)
                            if d is None:
                                ok = False
                                break
                            kids.append(d)
                        if ok:
                            return Derivation(
                                "size-base",
                                "approx",
                                b,
                                left=a,
                                context=self.context,
                                children=tuple(kids),
                            )
        if isinstance(a, Lam):
            taken = (
                {v.name for v in self.forbidden}
                | {v.name for v in free_vars(a) | free_vars(b)}
                | set(self.sig)
            )
            z, body = rename_binder(a, taken)
            d = self.approx(body, App(b, z), depth - 1)
            if d is not None:
                return Derivation(
                    "size-lam", "approx", b, left=a, context=self.context, children=(d,)
                )
        for m, dm in self._approx_seeds(a):
            if self._reduces(m, b):
                return Derivation(
                    "size-red", "approx", b, left=a, context=self.context, children=(dm,)
                )
        for m, dm in self._approx_seeds(a):
            d2 = self.approx(m, b, depth - 1)
            if d2 is not None:
                return Derivation(
                    "size-trans",
                    "approx",
                    b,
                    left=a,
                    context=self.context,
                    children=(dm, d2),
                )
        return None

    def _approx_seeds(self, a: Term) -> list[tuple[Term, Derivation]]:
        """Accessible same-type arguments of a: direct size-base facts."""
        out: list[tuple[Term, Derivation]] = []
        if self._full_base(a):
            h, args = spine(a)
            assert isinstance(h, Sym)
            for i in sorted(acc(h.name, self.sig)):
                ai = args[i - 1]
                if typeof(ai) == typeof(a) and not alpha_eq(ai, a):
                    out.append(
                        (
                            ai,
                            Derivation(
                                "size-base", "approx", ai, left=a, context=self.context
                            ),
                        )
                    )
        return out


def cc_ho_member(
    trs: Trs,
    r_view: Iterable[Rule],
    f: str,
    ts: Sequence[Term],
    u: Term,
    budget: Budget = Budget(),
    prec: Optional[Precedence] = None,
    statuses: Optional[Statuses] = None,
) -> Optional[Derivation]:
    """Bounded search for u in the closure of f(t⃗) relative to the rules in
    r_view; returns a derivation or None (None may mean budget)."""
    search = _ClosureSearch(trs, r_view, f, ts, budget, prec, statuses)
    return search.member(u, budget.max_search_depth)


def size_approx_gt(
    trs: Trs,
    r_view: Iterable[Rule],
    f: str,
    ts: Sequence[Term],
    a: Term,
    b: Term,
    budget: Budget = Budget(),
    prec: Optional[Precedence] = None,
    statuses: Optional[Statuses] = None,
) -> Optional[Derivation]:
    """Bounded search for the argument-size comparison a ⊐ b relative to
    f(t⃗) and r_view."""
    search = _ClosureSearch(trs, r_view, f, ts, budget, prec, statuses)
    return search.approx(a, b, budget.max_search_depth)


def orient_rule(
    trs: Trs,
    rule: Rule,
    prec: Optional[Precedence] = None,
    statuses: Optional[Statuses] = None,
    budget: Budget = Budget(),
) -> Optional[Derivation]:
    """Orient one rule: the right side must be in the closure of the left
    side's arguments, with the whole rule set as the reduction view."""
    h, ts = spine(rule.lhs)
    if not isinstance(h, Sym):
        raise ValueError(f"left side must be symbol-headed: {rule.lhs!r}")
    search = _ClosureSearch(trs, trs.rules, h.name, ts, budget, prec, statuses)
    d = search.member(rule.rhs, budget.max_search_depth)
    if d is None:
        return None
    return Derivation("context", "whorco", rule.rhs, left=rule.lhs, children=(d,))


def _pair_ok(l: Term, r: Term) -> bool:
    return (
        not alpha_eq(l, r)
        and typeof(l) == typeof(r)
        and free_vars(r) <= free_vars(l)
    )


def _lfp_pairs(
    trs: Trs,
    prec: Optional[Precedence],
    statuses: Optional[Statuses],
    pool: Sequence[Term],
    budget: Budget,
    stop_at: Optional[tuple[Term, Term]] = None,
    rounds: Optional[int] = None,
) -> dict[tuple[Term, Term], Derivation]:
    """Iterate the closure operator over pool pairs, feeding each round's
    pairs back as the reduction view, up to max_search_depth rounds (or an
    explicit round cap: the feedback view multiplies rewrite fan-out, so
    large pool sweeps are only practical at one round)."""
    lefts = [t for t in pool if isinstance(spine(t)[0], Sym)]
    red_pool = {alpha_key(t): t for t in pool}
    pairs: dict[tuple[Term, Term], Derivation] = {}
    for _ in range(budget.max_search_depth if rounds is None else rounds):
        r_view = [Rule(l, r) for (l, r) in pairs]
        engine = Rewriter(r_view)
        grew = False
        for l in lefts:
            h, ts = spine(l)
            assert isinstance(h, Sym)
            search = None
            for r in pool:
                if (l, r) in pairs or not _pair_ok(l, r):
                    continue
                if search is None:
                    search = _ClosureSearch(
                        trs, r_view, h.name, ts, budget, prec, statuses, engine, red_pool
                    )
                d = search.member(r, budget.max_search_depth)
                if d is not None:
                    pairs[(l, r)] = d
                    grew = True
        if stop_at is not None and stop_at in pairs:
            break
        if not grew:
            break
    return pairs


def whorco_gt(
    trs: Trs,
    prec: Optional[Precedence],
    statuses: Optional[Statuses],
    t: Term,
    u: Term,
    budget: Budget = Budget(),
    pool: Optional[Sequence[Term]] = None,
) -> Optional[Derivation]:
    """Root-level ordering: t = f t⃗ and u is in the closure of t⃗, under the
    bounded fixpoint of the closure operator seeded from the empty relation."""
    if not isinstance(spine(t)[0], Sym) or not _pair_ok(t, u):
        return None
    if pool is None:
        from .enumeration import subterm_closure

        pool = subterm_closure([t, u])
    pairs = _lfp_pairs(trs, prec, statuses, pool, budget, stop_at=(t, u))
    d = pairs.get((t, u))
    if d is None:
        return None
    return Derivation("context", "whorco", u, left=t, children=(d,))


def whorco_pairs(
    trs: Trs,
    prec: Optional[Precedence],
    statuses: Optional[Statuses],
    pool: Sequence[Term],
    budget: Budget = Budget(),
    rounds: Optional[int] = None,
) -> dict[tuple[Term, Term], Derivation]:
    """The full bounded fixpoint relation over a term pool, as root-level
    derivations keyed by pair."""
    raw = _lfp_pairs(trs, prec, statuses, pool, budget, rounds=rounds)
    return {
        (l, r): Derivation("context", "whorco", r, left=l, children=(d,))
        for (l, r), d in raw.items()
    }


def _context_candidates(t: Term, u: Term):
    yield t, u
    if isinstance(t, App) and isinstance(u, App):
        if alpha_eq(t.fun, u.fun):
            yield from _context_candidates(t.arg, u.arg)
        if alpha_eq(t.arg, u.arg):
            yield from _context_candidates(t.fun, u.fun)
    if isinstance(t, Lam) and isinstance(u, Lam) and t.var.ty == u.var.ty:
        taken = {v.name for v in free_vars(t) | free_vars(u)}
        z = Var(fresh_name(t.var.name, taken), t.var.ty)
        yield from _context_candidates(
            substitute(t.body, {t.var: z}), substitute(u.body, {u.var: z})
        )


def horco_gt(
    trs: Trs,
    prec: Optional[Precedence],
    statuses: Optional[Statuses],
    t: Term,
    u: Term,
    budget: Budget = Budget(),
    pool: Optional[Sequence[Term]] = None,
) -> Optional[Derivation]:
    """Context closure of the root-level ordering: some common one-hole
    context of t and u frames a root-level pair."""
    if typeof(t) != typeof(u) or alpha_eq(t, u):
        return None
    for t1, u1 in _context_candidates(t, u):
        d = whorco_gt(trs, prec, statuses, t1, u1, budget, pool)
        if d is not None:
            return Derivation("context", "horco", u, left=t, children=d.children)
    return None


def horco_chain_gt(
    trs: Trs,
    prec: Optional[Precedence],
    statuses: Optional[Statuses],
    t: Term,
    u: Term,
    max_chain: int = 3,
    budget: Budget = Budget(),
    pool: Optional[Sequence[Term]] = None,
    pairs: Optional[dict[tuple[Term, Term], Derivation]] = None,
) -> bool:
    """Is there a chain of at most max_chain context steps from t to u, with
    root pairs drawn from the bounded fixpoint over the pool?"""
    if max_chain < 1 or alpha_eq(t, u) or typeof(t) != typeof(u):
        return False
    from .enumeration import subterm_closure

    if pool is None:
        pool = subterm_closure([t, u])
    if pairs is None:
        pairs = whorco_pairs(trs, prec, statuses, pool, budget)
    by_left: dict[Term, list[Term]] = {}
    for l, r in pairs:
        by_left.setdefault(l, []).append(r)
    cap = max(
        [term_size(t), term_size(u)] + [term_size(s) for s in pool]
    ) + budget.max_term_size_slack
    visited = {t}
    frontier = [t]
    for _ in range(max_chain):
        nxt: list[Term] = []
        for s in frontier:
            for p, sub in subterm_positions(s):
                for r in by_left.get(sub, ()):
                    s2 = replace_at(s, p, r)
                    if alpha_eq(s2, u):
                        return True
                    if s2 not in visited and term_size(s2) <= cap:
                        visited.add(s2)
                        nxt.append(s2)
        if not nxt:
            break
        frontier = nxt
    return False
