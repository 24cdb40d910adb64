"""Filler/role decompositions of strings and trees.

``bind_string`` reverses order: the last feature of a string of length p
sits at string position 1 and the first one at position p.  The Fock-space
layer undoes the reversal when it maps bindings to vectors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .terms import Feature, FeatureString, Indicator, Leaf, Tree


class RoleKind(enum.Enum):
    STRING = "s"
    LEFT = "r0"
    RIGHT = "r1"
    MOTHER = "r2"
    STACK = "p"


@dataclass(frozen=True)
class Role:
    kind: RoleKind
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind in (RoleKind.STRING, RoleKind.STACK) and self.index < 1:
            raise ValueError(f"{self.kind.value} roles are indexed from 1")

    def __str__(self) -> str:
        if self.kind in (RoleKind.STRING, RoleKind.STACK):
            return f"{self.kind.value}{self.index}"
        return self.kind.value

    def sort_key(self) -> tuple[int, int]:
        order = [RoleKind.LEFT, RoleKind.RIGHT, RoleKind.MOTHER, RoleKind.STRING, RoleKind.STACK]
        return order.index(self.kind), self.index


R0 = Role(RoleKind.LEFT)
R1 = Role(RoleKind.RIGHT)
R2 = Role(RoleKind.MOTHER)


def s(i: int) -> Role:
    return Role(RoleKind.STRING, i)


def p(k: int) -> Role:
    return Role(RoleKind.STACK, k)


Filler = Union[Feature, Indicator, "Structure"]


@dataclass(frozen=True)
class Binding:
    filler: Filler
    role: Role


Structure = frozenset  # frozenset[Binding]


def bind_string(x: FeatureString) -> frozenset[Binding]:
    n = len(x)
    return frozenset(Binding(f, s(n - i)) for i, f in enumerate(x.items))


def bind_tree(t: Tree) -> frozenset[Binding]:
    if isinstance(t, Leaf):
        return bind_string(t.label)
    return frozenset(
        {
            Binding(t.indicator, R2),
            Binding(bind_tree(t.left), R0),
            Binding(bind_tree(t.right), R1),
        }
    )


def depth(b: frozenset[Binding]) -> int:
    """Nesting depth; a flat string structure has depth 1, the empty set 0."""
    if not b:
        return 0
    return max(depth(x.filler) + 1 if isinstance(x.filler, frozenset) else 1 for x in b)


def render(b: frozenset[Binding]) -> str:
    """Nested set literal such as ``{(>, r2), ({(f, s1)}, r0), ...}``."""

    def filler(f: Filler) -> str:
        if isinstance(f, frozenset):
            return render(f)
        return str(f)

    def key(x: Binding) -> tuple:
        return x.role.sort_key()

    if not b:
        return "{}"
    return "{" + ", ".join(f"({filler(x.filler)}, {x.role})" for x in sorted(b, key=key)) + "}"
