"""Independent re-checking of derivation trees.

Every node is verified locally: its children are validated first, then the
node's own inference is re-established from scratch using only the children's
conclusions as facts, the precedence/status tables, and bounded rewriting.
Nothing here calls the search procedures that emitted the tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .derivations import Budget, Derivation
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
    is_strict_subterm,
    spine,
    substitute,
    term_size,
    typeof,
)
from .types import Base, acc, arity

Statuses = Mapping[str, Status]

# labels each judgement kind may carry
_ALLOWED = {
    "rpo": {"rpo1", "rpo2", "rpo3"},
    "rco": {"arg", "prec", "call", "red"},
    "ccfo": {"arg", "decomp", "red", "prec", "call"},
    "cc": {"arg", "decomp", "red", "var", "prec", "lam", "app", "call"},
    "approx": {"size-base", "size-lam", "size-red", "size-trans"},
    "horpo": {f"horpo{i}" for i in range(1, 8)},
    "whorco": {"context"},
    "horco": {"context"},
}


@dataclass(frozen=True)
class ValidationFailure:
    node: Derivation
    message: str

    def __str__(self) -> str:
        return f"{self.message} [at {self.node.rule}: {self.node.conclusion()}]"


def validate_derivation(
    d: Derivation,
    trs: Optional[Trs] = None,
    prec: Optional[Precedence] = None,
    statuses: Optional[Statuses] = None,
    budget: Budget = Budget(),
    extra_pairs: Iterable[tuple[Term, Term]] = (),
) -> Optional[ValidationFailure]:
    """Re-check a derivation tree; None means every node verified.

    trs supplies the signature, rules, and default tables; rpo/horpo trees
    can instead pass prec/statuses directly. extra_pairs extends the
    reduction view (for trees emitted while a pair relation was fed back)."""
    if trs is not None:
        prec = trs.precedence if prec is None else prec
        statuses = trs.statuses if statuses is None else statuses
    if prec is None:
        prec = Precedence.of(())
    if statuses is None:
        statuses = {}
    rules = list(trs.rules) if trs is not None else []
    for l, r in extra_pairs:
        if typeof(l) == typeof(r) and free_vars(r) <= free_vars(l):
            if isinstance(spine(l)[0], Sym):
                rules.append(Rule(l, r))
    checker = _Checker(trs, prec, statuses, budget, rules)
    return checker.check(d)


class _Checker:
    def __init__(
        self,
        trs: Optional[Trs],
        prec: Precedence,
        statuses: Statuses,
        budget: Budget,
        rules: list[Rule],
    ):
        self.trs = trs
        self.prec = prec
        self.statuses = statuses
        self.budget = budget
        self.engine = Rewriter(rules)

    def check(self, d: Derivation) -> Optional[ValidationFailure]:
        for c in d.children:
            bad = self.check(c)
            if bad is not None:
                return bad
        if d.rule not in _ALLOWED.get(d.kind, ()):
            return ValidationFailure(d, f"label {d.rule} not valid for kind {d.kind}")
        try:
            return self._node(d)
        except (TypeError, ValueError, IndexError) as e:
            return ValidationFailure(d, f"ill-formed node: {e}")

    def _node(self, d: Derivation) -> Optional[ValidationFailure]:
        match d.kind:
            case "rpo":
                return self._rpo(d)
            case "rco":
                return self._rco(d)
            case "ccfo":
                return self._ccfo(d)
            case "cc":
                return self._cc(d)
            case "approx":
                return self._approx(d)
            case "horpo":
                return self._horpo(d)
            case "whorco" | "horco":
                return self._context(d)
        return ValidationFailure(d, f"unknown kind {d.kind}")

    # --- shared pieces

    def _reaches(self, a: Term, b: Term) -> bool:
        cap = max(term_size(a), term_size(b)) + self.budget.max_term_size_slack
        bk = alpha_key(b)
        return any(
            alpha_key(v) == bk
            for v in self.engine.reachable(a, self.budget.max_red_steps, cap)
        )

    def _sym_spine(self, t: Optional[Term]):
        if t is None:
            return None
        h, args = spine(t)
        return (h.name, args) if isinstance(h, Sym) else None

    def _facts(self, d: Derivation, kinds: tuple[str, ...]) -> set:
        out = set()
        for c in d.children:
            if c.kind in kinds and c.left is not None:
                out.add((alpha_key(c.left), alpha_key(c.right)))
        return out

    def _full_base(self, t: Term):
        """(head name, args) when t is a fully applied base-typed symbol."""
        if self.trs is None:
            return None
        sp = self._sym_spine(t)
        if sp is None:
            return None
        g, args = sp
        if g not in self.trs.signature:
            return None
        if len(args) != arity(self.trs.signature[g]):
            return None
        if not isinstance(typeof(t), Base):
            return None
        return g, args

    # --- first-order path ordering

    def _rpo(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.left is None:
            return ValidationFailure(d, "comparison node lacks a left side")
        sp = self._sym_spine(d.left)
        if sp is None:
            return ValidationFailure(d, "left side must be symbol-headed")
        f, ts = sp
        if any(c.kind != d.kind for c in d.children):
            return ValidationFailure(d, "child judgement kind differs")
        facts = self._facts(d, (d.kind,))

        def fact(a: Term, b: Term) -> bool:
            return (alpha_key(a), alpha_key(b)) in facts

        if d.rule == "rpo1":
            if any(alpha_eq(ti, d.right) or fact(ti, d.right) for ti in ts):
                return None
            return ValidationFailure(d, "no argument covers the right side")
        spu = self._sym_spine(d.right)
        if spu is None:
            return ValidationFailure(d, "right side must be symbol-headed")
        g, us = spu
        c = prec_cmp(self.prec, f, g)
        if d.rule == "rpo2":
            if c is not Cmp.GREATER:
                return ValidationFailure(d, f"precedence does not order {f} above {g}")
        else:
            if c is not Cmp.EQUIVALENT:
                return ValidationFailure(d, f"{f} and {g} are not equivalent")
            status = status_of(self.prec, self.statuses, f)
            if not status_ext(fact, status, list(ts), list(us)):
                return ValidationFailure(d, "status extension not re-established")
        for uj in us:
            if not fact(d.left, uj):
                return ValidationFailure(d, f"right argument {uj} not dominated")
        return None

    # --- first-order computability ordering

    def _rco(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.left is None:
            return ValidationFailure(d, "comparison node lacks a left side")
        sp = self._sym_spine(d.left)
        if sp is None:
            return ValidationFailure(d, "left side must be symbol-headed")
        f, ts = sp
        if any(c.kind != d.kind for c in d.children):
            return ValidationFailure(d, "child judgement kind differs")
        facts = self._facts(d, (d.kind,))

        def fact(a: Term, b: Term) -> bool:
            return (alpha_key(a), alpha_key(b)) in facts

        match d.rule:
            case "arg":
                if any(alpha_eq(ti, d.right) for ti in ts):
                    return None
                return ValidationFailure(d, "right side is not an argument")
            case "red":
                if len(d.children) != 2:
                    return ValidationFailure(d, "expected step and continuation")
                step, rest = d.children
                if step.rule != "arg" or step.left is None or not alpha_eq(step.left, d.left):
                    return ValidationFailure(d, "first child must drop to an argument")
                if rest.left is None or not alpha_eq(rest.left, step.right):
                    return ValidationFailure(d, "continuation starts from the wrong term")
                if not alpha_eq(rest.right, d.right):
                    return ValidationFailure(d, "continuation ends at the wrong term")
                return None
        spu = self._sym_spine(d.right)
        if spu is None:
            return ValidationFailure(d, "right side must be symbol-headed")
        g, us = spu
        c = prec_cmp(self.prec, f, g)
        if d.rule == "prec":
            if c is not Cmp.GREATER:
                return ValidationFailure(d, f"precedence does not order {f} above {g}")
        else:
            if c is not Cmp.EQUIVALENT:
                return ValidationFailure(d, f"{f} and {g} are not equivalent")
            status = status_of(self.prec, self.statuses, f)
            if not status_ext(fact, status, list(ts), list(us)):
                return ValidationFailure(d, "status extension not re-established")
        for uj in us:
            if not fact(d.left, uj):
                return ValidationFailure(d, f"right argument {uj} not dominated")
        return None

    # --- first-order closure membership

    def _ccfo(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.context is None:
            return ValidationFailure(d, "membership node lacks a context")
        sp = self._sym_spine(d.context)
        if sp is None:
            return ValidationFailure(d, "context must be symbol-headed")
        f, ts = sp
        for c in d.children:
            if c.kind != d.kind or c.context is None or not alpha_eq(c.context, d.context):
                return ValidationFailure(d, "child context differs")

        match d.rule:
            case "arg":
                if any(alpha_eq(ti, d.right) for ti in ts):
                    return None
                return ValidationFailure(d, "right side is not an argument")
            case "decomp":
                if len(d.children) != 1:
                    return ValidationFailure(d, "expected one child")
                from .terms import children as direct

                if any(alpha_eq(s, d.right) for s in direct(d.children[0].right)):
                    return None
                return ValidationFailure(d, "not a direct subterm of the child member")
            case "red":
                if len(d.children) != 1:
                    return ValidationFailure(d, "expected one child")
                if self._reaches(d.children[0].right, d.right):
                    return None
                return ValidationFailure(d, "no bounded rewrite path to the member")

        spu = self._sym_spine(d.right)
        if spu is None:
            return ValidationFailure(d, "right side must be symbol-headed")
        g, us = spu
        c = prec_cmp(self.prec, f, g)
        if d.rule == "prec":
            if c is not Cmp.GREATER:
                return ValidationFailure(d, f"precedence does not order {f} above {g}")
        else:
            if c is not Cmp.EQUIVALENT:
                return ValidationFailure(d, f"{f} and {g} are not equivalent")
            status = status_of(self.prec, self.statuses, f)

            def rel(a: Term, b: Term) -> bool:
                return is_strict_subterm(b, a) or self._reaches(a, b)

            if not status_ext(rel, status, list(ts), list(us)):
                return ValidationFailure(d, "argument comparison not re-established")
        members = {alpha_key(c2.right) for c2 in d.children}
        for uj in us:
            if alpha_key(uj) not in members:
                return ValidationFailure(d, f"argument {uj} lacks a membership child")
        return None

    # --- higher-order closure membership

    def _cc(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.context is None:
            return ValidationFailure(d, "membership node lacks a context")
        sp = self._sym_spine(d.context)
        if sp is None:
            return ValidationFailure(d, "context must be symbol-headed")
        f, ts = sp
        for c in d.children:
            if c.kind not in ("cc", "approx"):
                return ValidationFailure(d, "child judgement kind differs")
            if c.context is None or not alpha_eq(c.context, d.context):
                return ValidationFailure(d, "child context differs")
        cc_kids = [c for c in d.children if c.kind == "cc"]
        if d.rule != "call" and len(cc_kids) != len(d.children):
            return ValidationFailure(d, "size comparisons only feed recursive calls")

        match d.rule:
            case "arg":
                if any(alpha_eq(ti, d.right) for ti in ts):
                    return None
                return ValidationFailure(d, "right side is not an argument")
            case "var":
                if isinstance(d.right, Var) and d.right not in free_vars(d.context):
                    return None
                return ValidationFailure(d, "not a variable fresh for the context")
            case "prec":
                if isinstance(d.right, Sym) and prec_cmp(
                    self.prec, f, d.right.name
                ) is Cmp.GREATER:
                    return None
                return ValidationFailure(d, "not a symbol below the context head")
            case "decomp":
                if len(cc_kids) != 1:
                    return ValidationFailure(d, "expected one membership child")
                fb = self._full_base(cc_kids[0].right)
                if fb is None:
                    return ValidationFailure(d, "child member is not fully applied")
                g, args = fb
                for i in acc(g, self.trs.signature):
                    if alpha_eq(args[i - 1], d.right):
                        return None
                return ValidationFailure(d, "not an accessible argument of the child")
            case "red":
                if len(cc_kids) != 1:
                    return ValidationFailure(d, "expected one membership child")
                if self._reaches(cc_kids[0].right, d.right):
                    return None
                return ValidationFailure(d, "no bounded rewrite path to the member")
            case "lam":
                if not isinstance(d.right, Lam) or len(cc_kids) != 1:
                    return ValidationFailure(d, "expected an abstraction with one child")
                body = cc_kids[0].right
                extra = [
                    v for v in free_vars(body) - free_vars(d.right)
                    if v.ty == d.right.var.ty
                ]
                if not extra:
                    taken = {v.name for v in free_vars(body) | free_vars(d.context)}
                    extra = [Var(fresh_name("z", taken), d.right.var.ty)]
                for v in extra:
                    if v not in free_vars(d.context) and alpha_eq(Lam(v, body), d.right):
                        return None
                return ValidationFailure(d, "child body does not rebind to the member")
            case "app":
                if len(cc_kids) != 2:
                    return ValidationFailure(d, "expected two membership children")
                built = App(cc_kids[0].right, cc_kids[1].right)
                if alpha_eq(built, d.right):
                    return None
                return ValidationFailure(d, "children do not assemble the member")
            case "call":
                return self._cc_call(d, f, ts)
        return ValidationFailure(d, f"unhandled label {d.rule}")

    def _cc_call(
        self, d: Derivation, f: str, ts: tuple[Term, ...]
    ) -> Optional[ValidationFailure]:
        fb = self._full_base(d.right)
        if fb is None:
            return ValidationFailure(d, "call target is not fully applied and base")
        g, us = fb
        if prec_cmp(self.prec, f, g) is not Cmp.EQUIVALENT:
            return ValidationFailure(d, f"{f} and {g} are not equivalent")
        ap_facts = self._facts(d, ("approx",))

        def rel(a: Term, b: Term) -> bool:
            return (alpha_key(a), alpha_key(b)) in ap_facts or self._reaches(a, b)

        status = status_of(self.prec, self.statuses, f)
        if not status_ext(rel, status, list(ts), list(us)):
            return ValidationFailure(d, "argument comparison not re-established")
        members = {alpha_key(c.right) for c in d.children if c.kind == "cc"}
        for uj in us:
            if alpha_key(uj) in members:
                continue
            if any(rel(ti, uj) for ti in ts):
                continue
            return ValidationFailure(d, f"argument {uj} neither member nor dominated")
        return None

    # --- argument size comparison

    def _approx(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.left is None or d.context is None:
            return ValidationFailure(d, "size comparison lacks left side or context")
        if typeof(d.left) != typeof(d.right):
            return ValidationFailure(d, "size comparison across different types")

        match d.rule:
            case "size-base":
                fb = self._full_base(d.left)
                if fb is None:
                    return ValidationFailure(d, "left side is not fully applied and base")
                h, aargs = fb
                for c in d.children:
                    if c.kind != "cc" or c.context is None or not alpha_eq(
                        c.context, d.context
                    ):
                        return ValidationFailure(d, "child context differs")
                members = {alpha_key(c.right) for c in d.children}
                bh, bargs = spine(d.right)
                accs = acc(h, self.trs.signature)
                for j in range(len(bargs) + 1):
                    core = app_of(bh, bargs[:j])
                    rest = bargs[j:]
                    if not all(alpha_key(b) in members for b in rest):
                        continue
                    if any(
                        i <= len(aargs) and alpha_eq(aargs[i - 1], core) for i in accs
                    ):
                        return None
                return ValidationFailure(d, "no accessible peeling of the right side")
            case "size-lam":
                if not isinstance(d.left, Lam) or len(d.children) != 1:
                    return ValidationFailure(d, "expected an abstraction with one child")
                c = d.children[0]
                if c.kind != "approx" or c.context is None or not alpha_eq(
                    c.context, d.context
                ):
                    return ValidationFailure(d, "child context differs")
                if not isinstance(c.right, App) or not isinstance(c.right.arg, Var):
                    return ValidationFailure(d, "child right is not `target z`")
                z = c.right.arg
                if z in free_vars(d.right) | free_vars(d.context):
                    return ValidationFailure(d, "probe variable is not fresh")
                if not alpha_eq(c.right.fun, d.right):
                    return ValidationFailure(d, "child target differs")
                if not alpha_eq(c.left, substitute(d.left.body, {d.left.var: z})):
                    return ValidationFailure(d, "child body does not match the binder")
                return None
            case "size-red":
                if len(d.children) != 1:
                    return ValidationFailure(d, "expected one child")
                c = d.children[0]
                if c.kind != "approx" or not alpha_eq(c.left, d.left):
                    return ValidationFailure(d, "child compares the wrong terms")
                if self._reaches(c.right, d.right):
                    return None
                return ValidationFailure(d, "no bounded rewrite path to the target")
            case "size-trans":
                if len(d.children) != 2:
                    return ValidationFailure(d, "expected two children")
                c1, c2 = d.children
                if c1.kind != "approx" or c2.kind != "approx":
                    return ValidationFailure(d, "child judgement kind differs")
                if not alpha_eq(c1.left, d.left) or not alpha_eq(c2.left, c1.right):
                    return ValidationFailure(d, "children do not chain")
                if not alpha_eq(c2.right, d.right):
                    return ValidationFailure(d, "chain ends at the wrong term")
                return None
        return ValidationFailure(d, f"unhandled label {d.rule}")

    # --- higher-order path ordering

    def _horpo(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.left is None:
            return ValidationFailure(d, "comparison node lacks a left side")
        t, u = d.left, d.right
        if typeof(t) != typeof(u):
            return ValidationFailure(d, "sides have different types")
        if any(c.kind != "horpo" for c in d.children):
            return ValidationFailure(d, "child judgement kind differs")
        facts = self._facts(d, ("horpo",))

        def fact(a: Term, b: Term) -> bool:
            return (alpha_key(a), alpha_key(b)) in facts

        def ge(a: Term, b: Term) -> bool:
            return alpha_eq(a, b) or fact(a, b)

        h, ts = spine(t)

        def p_covered(uj: Term) -> bool:
            # the standard side condition: the whole left side or one of its
            # arguments dominates uj (weakly for arguments)
            return fact(t, uj) or any(ge(tj, uj) for tj in ts)

        match d.rule:
            case "horpo1":
                if isinstance(h, Sym) and any(ge(ti, u) for ti in ts):
                    return None
                return ValidationFailure(d, "no argument covers the right side")
            case "horpo2" | "horpo3" | "horpo4":
                if not isinstance(h, Sym):
                    return ValidationFailure(d, "left side must be symbol-headed")
                spu = self._sym_spine(u)
                if spu is None:
                    return ValidationFailure(d, "right side must be symbol-headed")
                g, us = spu
                c = prec_cmp(self.prec, h.name, g)
                if d.rule == "horpo2":
                    if c is not Cmp.GREATER:
                        return ValidationFailure(
                            d, f"precedence does not order {h.name} above {g}"
                        )
                    if all(p_covered(uj) for uj in us):
                        return None
                    return ValidationFailure(d, "some right argument is uncovered")
                if c is not Cmp.EQUIVALENT:
                    return ValidationFailure(d, f"{h.name} and {g} are not equivalent")
                status = status_of(self.prec, self.statuses, h.name)
                if d.rule == "horpo3":
                    if status is not Status.MUL:
                        return ValidationFailure(d, "multiset case under a lexicographic status")
                    if status_ext(fact, status, list(ts), list(us)):
                        return None
                    return ValidationFailure(d, "multiset extension not re-established")
                if status is Status.MUL:
                    return ValidationFailure(d, "lexicographic case under a multiset status")
                if not status_ext(fact, status, list(ts), list(us)):
                    return ValidationFailure(d, "lexicographic extension not re-established")
                if all(p_covered(uj) for uj in us):
                    return None
                return ValidationFailure(d, "some right argument is uncovered")
            case "horpo5":
                if not isinstance(h, Sym) or not isinstance(u, App):
                    return ValidationFailure(d, "needs a symbol-headed left and applied right")
                g, us = spine(u)
                for j in range(len(us)):
                    parts = [app_of(g, us[:j])] + list(us[j:])
                    if all(p_covered(p) for p in parts):
                        return None
                return ValidationFailure(d, "no flattening of the right side is covered")
            case "horpo6":
                if not isinstance(t, App) or not isinstance(u, App):
                    return ValidationFailure(d, "both sides must be applications")
                e1, e2 = alpha_eq(t.fun, u.fun), alpha_eq(t.arg, u.arg)
                if e1 and e2:
                    return ValidationFailure(d, "no strict component")
                if (e1 or fact(t.fun, u.fun)) and (e2 or fact(t.arg, u.arg)):
                    return None
                return ValidationFailure(d, "componentwise comparison fails")
            case "horpo7":
                if (
                    not isinstance(t, Lam)
                    or not isinstance(u, Lam)
                    or t.var.ty != u.var.ty
                    or len(d.children) != 1
                ):
                    return ValidationFailure(d, "expected same-binder abstractions")
                c = d.children[0]
                cands = [
                    v
                    for v in (free_vars(c.left) | free_vars(c.right))
                    - (free_vars(t) | free_vars(u))
                    if v.ty == t.var.ty
                ]
                if not cands:
                    taken = {v.name for v in free_vars(c.left) | free_vars(c.right)}
                    cands = [Var(fresh_name("z", taken), t.var.ty)]
                for v in cands:
                    if alpha_eq(Lam(v, c.left), t) and alpha_eq(Lam(v, c.right), u):
                        return None
                return ValidationFailure(d, "bodies do not rebind to the two sides")
        return ValidationFailure(d, f"unhandled label {d.rule}")

    # --- root orientation and its context closure

    def _hole_candidates(self, t: Term, u: Term):
        yield t, u
        if isinstance(t, App) and isinstance(u, App):
            if alpha_eq(t.fun, u.fun):
                yield from self._hole_candidates(t.arg, u.arg)
            if alpha_eq(t.arg, u.arg):
                yield from self._hole_candidates(t.fun, u.fun)
        if isinstance(t, Lam) and isinstance(u, Lam) and t.var.ty == u.var.ty:
            taken = {v.name for v in free_vars(t) | free_vars(u)}
            z = Var(fresh_name(t.var.name, taken), t.var.ty)
            yield from self._hole_candidates(
                substitute(t.body, {t.var: z}), substitute(u.body, {u.var: z})
            )

    def _context(self, d: Derivation) -> Optional[ValidationFailure]:
        if d.left is None:
            return ValidationFailure(d, "orientation node lacks a left side")
        if len(d.children) != 1 or d.children[0].kind != "cc":
            return ValidationFailure(d, "expected one closure membership child")
        t, u = d.left, d.right
        if typeof(t) != typeof(u):
            return ValidationFailure(d, "sides have different types")
        if alpha_eq(t, u):
            return ValidationFailure(d, "sides are equal")
        if not free_vars(u) <= free_vars(t):
            return ValidationFailure(d, "right side has extra free variables")
        c = d.children[0]
        if c.context is None:
            return ValidationFailure(d, "membership child lacks a context")
        if d.kind == "whorco":
            if alpha_eq(c.context, t) and alpha_eq(c.right, u):
                return None
            return ValidationFailure(d, "membership does not frame the root pair")
        for t1, u1 in self._hole_candidates(t, u):
            if not isinstance(spine(t1)[0], Sym) or alpha_eq(t1, u1):
                continue
            if alpha_eq(c.context, t1) and alpha_eq(c.right, u1):
                return None
        return ValidationFailure(d, "no common context frames the membership")
