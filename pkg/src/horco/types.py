"""Simple types and polarity analysis (signed positions, accessible arguments)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

Position = tuple[int, ...]


class SimpleType:
    """Base class for simple types: base sorts and arrows."""

    __slots__ = ()


@dataclass(frozen=True)
class Base(SimpleType):
    name: str

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Arrow(SimpleType):
    left: SimpleType
    right: SimpleType

    def __str__(self) -> str:
        left = f"({self.left})" if isinstance(self.left, Arrow) else str(self.left)
        return f"{left} -> {self.right}"

    def __repr__(self) -> str:
        return str(self)


def arrow_of(args: tuple[SimpleType, ...], result: SimpleType) -> SimpleType:
    """Build T1 -> ... -> Tn -> result."""
    ty = result
    for a in reversed(args):
        ty = Arrow(a, ty)
    return ty


def flatten(ty: SimpleType) -> tuple[tuple[SimpleType, ...], Base]:
    """Split a type into (argument types, output base sort)."""
    args = []
    while isinstance(ty, Arrow):
        args.append(ty.left)
        ty = ty.right
    assert isinstance(ty, Base)
    return tuple(args), ty


def arity(ty: SimpleType) -> int:
    return len(flatten(ty)[0])


def subtypes(ty: SimpleType) -> frozenset[SimpleType]:
    """All subtypes of ty, including ty itself."""
    out = {ty}
    if isinstance(ty, Arrow):
        out |= subtypes(ty.left) | subtypes(ty.right)
    return frozenset(out)


class Polarity(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


def pos_signed(ty: SimpleType, delta: Polarity) -> frozenset[Position]:
    """Positions of base-sort occurrences in ty carrying sign delta.

    A base occurrence is positive when it sits under an even number of
    left-of-arrow steps; pos_signed(T, POSITIVE) and pos_signed(T, NEGATIVE)
    partition the base positions of T.
    """
    match ty:
        case Base():
            return frozenset([()]) if delta is Polarity.POSITIVE else frozenset()
        case Arrow(left=l, right=r):
            return frozenset((1, *p) for p in pos_signed(l, delta.flip())) | frozenset(
                (2, *p) for p in pos_signed(r, delta)
            )
    raise TypeError(f"not a simple type: {ty!r}")


def pos_of_base(base: Base, ty: SimpleType) -> frozenset[Position]:
    """Positions of all occurrences of the sort `base` in ty."""
    match ty:
        case Base():
            return frozenset([()]) if ty == base else frozenset()
        case Arrow(left=l, right=r):
            return frozenset((1, *p) for p in pos_of_base(base, l)) | frozenset(
                (2, *p) for p in pos_of_base(base, r)
            )
    raise TypeError(f"not a simple type: {ty!r}")


def occurs_only_positively(base: Base, ty: SimpleType) -> bool:
    return pos_of_base(base, ty) <= pos_signed(ty, Polarity.POSITIVE)


def acc_indices(ty: SimpleType) -> frozenset[int]:
    """Accessible argument positions of a symbol with the given type.

    For f : T1 -> ... -> Tn -> B, argument i is accessible when the output
    sort B occurs only positively in Ti. Indices are 1-based.
    """
    args, base = flatten(ty)
    return frozenset(i for i, t in enumerate(args, 1) if occurs_only_positively(base, t))


def acc(name: str, signature: Mapping[str, SimpleType]) -> frozenset[int]:
    """Accessible argument positions of a declared symbol."""
    if name not in signature:
        raise ValueError(f"undeclared symbol: {name}")
    return acc_indices(signature[name])
