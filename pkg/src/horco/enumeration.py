"""Bounded exhaustive enumeration of well-typed terms, for oracles and fuzzing."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .terms import App, Lam, Sym, Term, Var, app_of, fresh_name
from .types import Arrow, SimpleType, arrow_of, flatten, subtypes


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


class _Enumerator:
    def __init__(self, signature: Mapping[str, SimpleType], vars: tuple[Var, ...], lambdas: bool):
        self.syms = tuple(Sym(n, t) for n, t in signature.items())
        self.vars = vars
        self.lambdas = lambdas
        taken = set(signature) | {v.name for v in vars}
        self.binder_names = [fresh_name(f"x{i}", taken) for i in range(1, 33)]
        pool: set[SimpleType] = set()
        for t in list(signature.values()) + [v.ty for v in vars]:
            pool |= subtypes(t)
        self.type_pool = pool
        self.memo: dict[tuple, tuple[Term, ...]] = {}

    def exact(self, ty: SimpleType, n: int, scope: tuple[Var, ...]) -> tuple[Term, ...]:
        key = (ty, n, scope)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out: list[Term] = []
        for head in (*self.syms, *self.vars, *scope):
            args, base = flatten(head.ty)
            for k in range(len(args) + 1):
                if arrow_of(args[k:], base) != ty:
                    continue
                if k == 0:
                    if n == 1:
                        out.append(head)
                    continue
                for sizes in _compositions(n - 1, k):
                    for combo in self._tuples(args[:k], sizes, scope):
                        out.append(app_of(head, combo))
        if self.lambdas:
            if isinstance(ty, Arrow) and n >= 2:
                x = Var(self.binder_names[len(scope)], ty.left)
                for body in self.exact(ty.right, n - 1, (*scope, x)):
                    out.append(Lam(x, body))
            out.extend(self._redexes(ty, n, scope))
        result = tuple(out)
        self.memo[key] = result
        return result

    def _redexes(self, ty: SimpleType, n: int, scope: tuple[Var, ...]) -> Iterator[Term]:
        # beta-redex heads: an abstraction applied to k >= 1 arguments, the
        # abstraction and argument types drawn from the signature's type pool
        pool = sorted(self.type_pool | subtypes(ty), key=str)
        for k in range(1, n - 2 + 1):
            for arg_tys in self._type_combos(pool, k):
                lam_ty = arrow_of(arg_tys, ty)
                for sizes in _compositions(n, k + 1):
                    if sizes[0] < 2:
                        continue
                    for head in self.exact(lam_ty, sizes[0], scope):
                        if not isinstance(head, Lam):
                            continue
                        for combo in self._tuples(arg_tys, sizes[1:], scope):
                            yield app_of(head, combo)

    def _type_combos(self, pool: list[SimpleType], k: int) -> Iterator[tuple[SimpleType, ...]]:
        if k == 0:
            yield ()
            return
        for ty in pool:
            for rest in self._type_combos(pool, k - 1):
                yield (ty, *rest)

    def _tuples(
        self, tys: tuple[SimpleType, ...], sizes: tuple[int, ...], scope: tuple[Var, ...]
    ) -> Iterator[tuple[Term, ...]]:
        if not tys:
            yield ()
            return
        for first in self.exact(tys[0], sizes[0], scope):
            for rest in self._tuples(tys[1:], sizes[1:], scope):
                yield (first, *rest)


def enumerate_terms(
    signature: Mapping[str, SimpleType],
    ty: SimpleType,
    max_size: int,
    vars: Iterable[Var] = (),
    lambdas: bool = False,
) -> Iterator[Term]:
    """Yield every well-typed term of the given type with at most max_size
    variable/symbol/abstraction nodes, exactly once up to alpha, smallest first.

    Without `lambdas` only applicative terms over the signature and variable
    pool are produced. With it, abstractions (and beta redexes over the
    signature's subtype pool) are included as well.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    enum = _Enumerator(dict(signature), tuple(vars), lambdas)
    for n in range(1, max_size + 1):
        yield from enum.exact(ty, n, ())


def subterm_closure(terms: Iterable[Term]) -> list[Term]:
    """Deduplicated subterm closure, in a deterministic order."""
    from .terms import subterm_positions

    seen: set[Term] = set()
    out: list[Term] = []
    for t in terms:
        for _, s in subterm_positions(t):
            if s not in seen:
                seen.add(s)
                out.append(s)
    out.sort(key=lambda t: (len(repr(t)), repr(t)))
    return out
