"""First-order orderings: RPO, the recursive computability ordering RCO, the
rule-parametric first-order closure, and a finite-universe fixpoint oracle."""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional, Sequence

from .derivations import Budget, Derivation
from .order import Precedence, Status, Cmp, prec_cmp, status_ext, status_of
from .rewriting import Rule, RuleIndex, Trs, reducts_plus
from .terms import (
    Sym,
    Term,
    Var,
    alpha_eq,
    free_vars,
    is_first_order,
    is_strict_subterm,
    spine,
    subterm_positions,
    term_size,
    typeof,
)

Statuses = Mapping[str, Status]


def _require_first_order(*terms: Term):
    for t in terms:
        if not is_first_order(t):
            raise ValueError(f"not a first-order term: {t!r}")


def _ext_with_evidence(
    rel: Callable[[Term, Term], Optional[Derivation]],
    status: Status,
    ts: Sequence[Term],
    us: Sequence[Term],
) -> tuple[bool, list[Derivation]]:
    """Run the status extension, collecting the sub-derivations it consumed."""
    used: list[Derivation] = []

    def probe(a: Term, b: Term) -> bool:
        d = rel(a, b)
        if d is not None:
            used.append(d)
            return True
        return False

    ok = status_ext(probe, status, ts, us)
    return ok, used


class _RpoSolver:
    """Memoized decision procedure for the recursive path ordering."""

    def __init__(self, prec: Precedence, statuses: Statuses):
        self.prec = prec
        self.statuses = statuses
        self.memo: dict[tuple[Term, Term], Optional[Derivation]] = {}

    def gt(self, t: Term, u: Term) -> Optional[Derivation]:
        key = (t, u)
        if key in self.memo:
            return self.memo[key]
        d = self._compute(t, u)
        self.memo[key] = d
        return d

    def ge(self, t: Term, u: Term) -> Optional[Derivation]:
        """Derivation for t > u, or None; alpha-equal counts as holding
        (the caller distinguishes via alpha_eq)."""
        return self.gt(t, u)

    def _compute(self, t: Term, u: Term) -> Optional[Derivation]:
        if isinstance(t, Var):
            return None
        f, ts = spine(t)
        assert isinstance(f, Sym)
        # (1): some argument is >= the whole right side
        for ti in ts:
            if alpha_eq(ti, u):
                return Derivation("rpo1", "rpo", u, left=t)
            d = self.gt(ti, u)
            if d is not None:
                return Derivation("rpo1", "rpo", u, left=t, children=(d,))
        if isinstance(u, Var):
            return None
        g, us = spine(u)
        assert isinstance(g, Sym)
        c = prec_cmp(self.prec, f.name, g.name)
        if c is Cmp.GREATER:
            arg_ds = []
            for uj in us:
                d = self.gt(t, uj)
                if d is None:
                    return None
                arg_ds.append(d)
            return Derivation("rpo2", "rpo", u, left=t, children=tuple(arg_ds))
        if c is Cmp.EQUIVALENT:
            status = status_of(self.prec, self.statuses, f.name)
            ok, ext_ds = _ext_with_evidence(self.gt, status, ts, us)
            if not ok:
                return None
            arg_ds = []
            for uj in us:
                d = self.gt(t, uj)
                if d is None:
                    return None
                arg_ds.append(d)
            return Derivation(
                "rpo3", "rpo", u, left=t, children=tuple(ext_ds) + tuple(arg_ds)
            )
        return None


def rpo_gt(prec: Precedence, statuses: Statuses, t: Term, u: Term) -> Optional[Derivation]:
    """Derivation for t >rpo u, or None. Total on first-order terms."""
    _require_first_order(t, u)
    return _RpoSolver(prec, statuses).gt(t, u)


class _RcoSolver:
    """Memoized decision procedure for the syntax-directed computability ordering."""

    def __init__(self, prec: Precedence, statuses: Statuses):
        self.prec = prec
        self.statuses = statuses
        self.memo: dict[tuple[Term, Term], Optional[Derivation]] = {}

    def gt(self, t: Term, u: Term) -> Optional[Derivation]:
        if isinstance(t, Var):
            return None
        key = (t, u)
        if key in self.memo:
            return self.memo[key]
        d = self._compute(t, u)
        self.memo[key] = d
        return d

    def _compute(self, t: Term, u: Term) -> Optional[Derivation]:
        f, ts = spine(t)
        assert isinstance(f, Sym)
        # (arg)
        for ti in ts:
            if alpha_eq(ti, u):
                return Derivation("arg", "rco", u, left=t)
        if not isinstance(u, Var):
            g, us = spine(u)
            assert isinstance(g, Sym)
            c = prec_cmp(self.prec, f.name, g.name)
            if c is Cmp.GREATER:
                arg_ds = self._all_args(t, us)
                if arg_ds is not None:
                    return Derivation("prec", "rco", u, left=t, children=tuple(arg_ds))
            elif c is Cmp.EQUIVALENT:
                status = status_of(self.prec, self.statuses, f.name)
                ok, ext_ds = _ext_with_evidence(self.gt, status, ts, us)
                if ok:
                    arg_ds = self._all_args(t, us)
                    if arg_ds is not None:
                        return Derivation(
                            "call", "rco", u, left=t, children=tuple(ext_ds) + tuple(arg_ds)
                        )
        # (red) through an argument: f t⃗ > t_i > u
        for ti in ts:
            if isinstance(ti, Var) or alpha_eq(ti, u):
                continue
            d = self.gt(ti, u)
            if d is not None:
                step = Derivation("arg", "rco", ti, left=t)
                return Derivation("red", "rco", u, left=t, children=(step, d))
        return None

    def _all_args(self, t: Term, us: Sequence[Term]) -> Optional[list[Derivation]]:
        out = []
        for uj in us:
            d = self.gt(t, uj)
            if d is None:
                return None
            out.append(d)
        return out


def rco_gt(
    prec: Precedence,
    statuses: Statuses,
    t: Term,
    u: Term,
    budget: Budget = Budget(),
) -> Optional[Derivation]:
    """Derivation for t >rco u, or None. t must be symbol-headed first-order."""
    _require_first_order(t, u)
    if isinstance(t, Var) or not isinstance(spine(t)[0], Sym):
        raise ValueError(f"left side must be symbol-headed: {t!r}")
    del budget  # the syntax-directed search is total; kept for interface parity
    return _RcoSolver(prec, statuses).gt(t, u)


def cc_fo_member(
    trs: Trs,
    f: str,
    ts: Sequence[Term],
    u: Term,
    budget: Budget = Budget(),
) -> Optional[Derivation]:
    """Bounded search for u in the first-order closure of f(t⃗) relative to
    trs's rules; returns a derivation or None (None may mean budget)."""
    sig = trs.signature
    if f not in sig:
        raise ValueError(f"undeclared symbol: {f}")
    from .types import arity

    if arity(sig[f]) != len(ts):
        raise ValueError(f"arity mismatch: {f} expects {arity(sig[f])} arguments")
    from .terms import app_of

    context = app_of(trs.sym(f), ts)
    prec, statuses = trs.precedence, trs.statuses
    size_cap = max((term_size(s) for s in ts), default=1) + budget.max_term_size_slack

    # members derivable without looking at the goal: arguments, their subterms
    # (decomp chains), and bounded forward reducts
    members: dict[Term, Derivation] = {}
    for ti in ts:
        if ti not in members:
            members[ti] = Derivation("arg", "ccfo", ti, context=context)
    for ti in ts:
        for pos, s in subterm_positions(ti):
            if pos and s not in members:
                members[s] = _fo_decomp_chain(context, ti, pos, members)
    for m, md in list(members.items()):
        for v in reducts_plus(trs, m, budget.max_red_steps, size_cap, kind="rules"):
            if v not in members:
                members[v] = Derivation("red", "ccfo", v, context=context, children=(md,))

    def rel(a: Term, b: Term) -> bool:
        # (call)'s argument comparison: strict subterm or bounded rewriting
        return is_strict_subterm(b, a) or any(
            alpha_eq(b, v)
            for v in reducts_plus(trs, a, budget.max_red_steps, size_cap, kind="rules")
        )

    memo: dict[Term, Optional[Derivation]] = {}

    def derive(goal: Term) -> Optional[Derivation]:
        if goal in members:
            return members[goal]
        if goal in memo:
            return memo[goal]
        memo[goal] = None
        result = None
        if not isinstance(goal, Var) and isinstance(spine(goal)[0], Sym):
            g, us = spine(goal)
            c = prec_cmp(prec, f, g.name)
            if c is Cmp.GREATER:
                arg_ds = [derive(uj) for uj in us]
                if all(d is not None for d in arg_ds):
                    result = Derivation(
                        "prec", "ccfo", goal, context=context, children=tuple(arg_ds)
                    )
            elif c is Cmp.EQUIVALENT:
                status = status_of(prec, statuses, f)
                if status_ext(rel, status, list(ts), list(us)):
                    arg_ds = [derive(uj) for uj in us]
                    if all(d is not None for d in arg_ds):
                        result = Derivation(
                            "call", "ccfo", goal, context=context, children=tuple(arg_ds)
                        )
        memo[goal] = result
        return result

    return derive(u)


def _fo_decomp_chain(
    context: Term, ti: Term, pos: tuple[int, ...], members: dict[Term, Derivation]
) -> Derivation:
    """Build nested (decomp) steps from the argument down to the subterm."""
    from .terms import subterm_at

    d = members[ti]
    walked = ti
    for i in pos:
        walked = subterm_at(walked, (i,))
        d = Derivation("decomp", "ccfo", walked, context=context, children=(d,))
    return d


def rco_fixpoint_oracle(
    prec: Precedence,
    statuses: Statuses,
    universe: Iterable[Term],
    budget: Budget = Budget(),
    red_variant: str = "plus",
    use_decomp: bool = True,
) -> frozenset[tuple[Term, Term]]:
    """Kleene iteration of the closure operator over a finite subterm-closed
    universe: R0 = empty, R_{k+1} = CR(R_k) restricted to universe pairs,
    iterated to the (finite) fixpoint.

    red_variant 'plus' uses bounded transitive rewriting in (red) and in the
    (call) argument comparison; 'single' uses one direct R-pair lookup for
    both, per the remark that the fixpoint is unchanged.
    """
    if red_variant not in ("plus", "single"):
        raise ValueError(f"bad red_variant: {red_variant}")
    universe = list(dict.fromkeys(universe))
    uni_set = set(universe)
    for t in universe:
        _require_first_order(t)
        for _, s in subterm_positions(t):
            if s not in uni_set:
                raise ValueError(f"universe not subterm-closed: missing {s!r}")
    size_cap = max((term_size(t) for t in universe), default=1) + budget.max_term_size_slack

    # index universe terms by head symbol for (prec)/(call) conclusions
    by_head: dict[str, list[tuple[Term, tuple[Term, ...]]]] = {}
    lefts: list[tuple[Term, Sym, tuple[Term, ...]]] = []
    for t in universe:
        if isinstance(t, Var):
            continue
        h, args = spine(t)
        assert isinstance(h, Sym)
        by_head.setdefault(h.name, []).append((t, args))
        lefts.append((t, h, args))

    # incremental member sets per left side (monotone across rounds)
    member_sets: dict[Term, set[Term]] = {}
    for t, _, args in lefts:
        ms = set(args)
        if use_decomp:
            for a in args:
                ms.update(s for _, s in subterm_positions(a))
        member_sets[t] = ms

    pairs: set[tuple[Term, Term]] = set()
    while True:
        # type-mismatched pairs can arise across sorts via (prec); they can
        # never fire as typed rewrite steps, so skip them when rewriting
        rules = [
            Rule(l, r)
            for l, r in pairs
            if typeof(l) == typeof(r) and free_vars(r) <= free_vars(l)
        ]

        if red_variant == "plus":
            index = RuleIndex(rules)
            one_memo: dict[Term, list[Term]] = {}
            reach_memo: dict[Term, list[Term]] = {}

            def onestep(v: Term) -> list[Term]:
                if v not in one_memo:
                    one_memo[v] = [
                        w for w in index.steps(v) if term_size(w) <= size_cap
                    ]
                return one_memo[v]

            def reachable(a: Term) -> list[Term]:
                # breadth-first bounded closure with per-round shared steps
                if a not in reach_memo:
                    seen = {a}
                    frontier = [a]
                    out: list[Term] = []
                    for _ in range(budget.max_red_steps):
                        nxt: list[Term] = []
                        for v in frontier:
                            for w in onestep(v):
                                if w not in seen:
                                    seen.add(w)
                                    out.append(w)
                                    nxt.append(w)
                        if not nxt:
                            break
                        frontier = nxt
                    reach_memo[a] = out
                return reach_memo[a]

            def red_of(m: Term) -> Iterable[Term]:
                return (v for v in reachable(m) if v in uni_set)

            def rel(a: Term, b: Term) -> bool:
                return is_strict_subterm(b, a) or any(alpha_eq(b, v) for v in reachable(a))

        else:

            def red_of(m: Term) -> Iterable[Term]:
                return (r for l, r in pairs if alpha_eq(l, m))

            def rel(a: Term, b: Term) -> bool:
                return (a, b) in pairs

        new_pairs: set[tuple[Term, Term]] = set()
        for t, h, args in lefts:
            ms = member_sets[t]
            status = status_of(prec, statuses, h.name)
            changed = True
            while changed:
                changed = False
                for m in list(ms):
                    for v in red_of(m):
                        if v not in ms:
                            ms.add(v)
                            changed = True
                    if use_decomp and not isinstance(m, Var):
                        for _, s in subterm_positions(m):
                            if s not in ms:
                                ms.add(s)
                                changed = True
                for gname, candidates in by_head.items():
                    c = prec_cmp(prec, h.name, gname)
                    if c is Cmp.NONE:
                        continue
                    for cand, cargs in candidates:
                        if cand in ms or not all(a in ms for a in cargs):
                            continue
                        if c is Cmp.GREATER or status_ext(rel, status, args, cargs):
                            ms.add(cand)
                            changed = True
            new_pairs.update((t, u) for u in ms)

        if new_pairs == pairs:
            return frozenset(pairs)
        pairs = new_pairs
