from __future__ import annotations

import itertools

from horco.types import (
    Arrow,
    Base,
    Polarity,
    acc,
    arity,
    arrow_of,
    flatten,
    occurs_only_positively,
    pos_of_base,
    pos_signed,
    subtypes,
)

B = Base("B")
C = Base("C")


def _signed_occurrences(ty):
    """Every base-sort occurrence as (position, sort-name, sign).

    Independent of the implementation: plain structural recursion where the
    left of an arrow flips the sign and extends the position with 1, the
    right keeps the sign and extends with 2.
    """
    out = []

    def walk(ty, pos, sign):
        if isinstance(ty, Base):
            out.append((pos, ty.name, sign))
        else:
            walk(ty.left, pos + (1,), -sign)
            walk(ty.right, pos + (2,), sign)

    walk(ty, (), 1)
    return out


def _acc_oracle(name, signature):
    """Accessible argument indices: the result sort may not occur negatively."""
    args, result = flatten(signature[name])
    good = set()
    for i, arg_ty in enumerate(args, start=1):
        occs = _signed_occurrences(arg_ty)
        if all(sign == 1 for _, base, sign in occs if base == result.name):
            good.add(i)
    return frozenset(good)


def _type_catalogue(depth=2):
    tys = [B, C]
    for _ in range(depth):
        tys = list(dict.fromkeys(tys + [Arrow(l, r) for l in tys for r in tys]))
    return tys


CATALOGUE = _type_catalogue()


def test_catalogue_is_large_enough():
    assert len(CATALOGUE) == 38


def test_flatten_arrow_of_roundtrip():
    for ty in CATALOGUE:
        args, result = flatten(ty)
        assert isinstance(result, Base)
        assert arrow_of(args, result) == ty
        assert arity(ty) == len(args)


def test_subtypes_contains_self_and_parts():
    for ty in CATALOGUE:
        st = subtypes(ty)
        assert ty in st
        if isinstance(ty, Arrow):
            assert subtypes(ty.left) <= st
            assert subtypes(ty.right) <= st


def test_pos_signed_matches_occurrence_oracle():
    for ty in CATALOGUE:
        occs = _signed_occurrences(ty)
        assert pos_signed(ty, Polarity.POSITIVE) == {p for p, _, s in occs if s == 1}
        assert pos_signed(ty, Polarity.NEGATIVE) == {p for p, _, s in occs if s == -1}


def test_pos_of_base_matches_occurrence_oracle():
    for ty in CATALOGUE:
        for base in (B, C):
            expected = {p for p, n, _ in _signed_occurrences(ty) if n == base.name}
            assert pos_of_base(base, ty) == expected


def test_occurs_only_positively_matches_oracle():
    for ty in CATALOGUE:
        for base in (B, C):
            expected = all(
                s == 1 for _, n, s in _signed_occurrences(ty) if n == base.name
            )
            assert occurs_only_positively(base, ty) == expected


def test_acc_matches_oracle_on_catalogue():
    # One symbol per catalogue type that ends in a base sort.
    signature = {f"f{i}": ty for i, ty in enumerate(CATALOGUE)}
    for name in signature:
        assert acc(name, signature) == _acc_oracle(name, signature)


def test_acc_known_cases():
    L, D, P = Base("L"), Base("D"), Base("P")
    sig = {
        "m": Arrow(B, Arrow(B, B)),
        "fcons": Arrow(Arrow(B, B), Arrow(L, L)),
        "lapply": Arrow(B, Arrow(L, B)),
        "sigma": Arrow(Arrow(D, P), P),
        "h": Arrow(Arrow(B, B), B),
    }
    assert acc("m", sig) == {1, 2}
    # (B -> B) has no L at all, so it is accessible in an L-valued symbol.
    assert acc("fcons", sig) == {1, 2}
    assert acc("lapply", sig) == {1, 2}
    # P occurs only positively in D -> P.
    assert acc("sigma", sig) == {1}
    # B occurs negatively in B -> B, so the functional argument is barred.
    assert acc("h", sig) == frozenset()


def test_positions_disjoint_and_exhaustive():
    for ty in CATALOGUE:
        pos = pos_signed(ty, Polarity.POSITIVE)
        neg = pos_signed(ty, Polarity.NEGATIVE)
        assert not (pos & neg)
        all_bases = {p for p, _, _ in _signed_occurrences(ty)}
        assert pos | neg == all_bases


def test_arrow_right_associativity_of_arrow_of():
    ty = arrow_of((B, C, B), C)
    assert ty == Arrow(B, Arrow(C, Arrow(B, C)))
    assert flatten(ty) == ((B, C, B), C)


def test_types_are_hashable_values():
    seen = set()
    for ty in itertools.chain(CATALOGUE, CATALOGUE):
        seen.add(ty)
    assert len(seen) == len(CATALOGUE)
