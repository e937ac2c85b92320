"""Finite abelian groups and their GF(2) group algebra.

A group is presented as an explicit product of cyclic factors
``Z_{d1} x ... x Z_{dt}``; elements are exponent vectors.  Two presentations
of isomorphic groups are distinct objects on purpose: parity-check column
indices depend on the element enumeration, which is fixed to mixed-radix
order with the last coordinate varying fastest.

Group-algebra elements carry coefficients in GF(2), so an element is just
the set of group elements appearing with coefficient one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GroupMismatchError
from .gf2 import BitMatrix

__all__ = [
    "FiniteAbelianGroup",
    "GroupAlgebraElement",
    "regular_representation",
    "algebra_to_matrix",
    "shift",
    "subgroup_closure",
]


class FiniteAbelianGroup:
    """Product of cyclic groups with a fixed element enumeration.

    The enumeration ``g_0, ..., g_{n-1}`` runs in mixed-radix order (last
    exponent fastest), so index 0 is always the identity.
    """

    __slots__ = ("cyclic_orders", "order")

    def __init__(self, cyclic_orders: Sequence[int]):
        orders = tuple(int(d) for d in cyclic_orders)
        for d in orders:
            if d < 2:
                raise ValueError(f"cyclic order must be >= 2, got {d}")
        self.cyclic_orders = orders
        n = 1
        for d in orders:
            n *= d
        self.order = n

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.cyclic_orders)

    def validate(self, g: Sequence[int]) -> tuple[int, ...]:
        g = tuple(int(x) for x in g)
        if len(g) != len(self.cyclic_orders):
            raise ValueError(
                f"element has {len(g)} coordinates, group has {len(self.cyclic_orders)}"
            )
        for x, d in zip(g, self.cyclic_orders):
            if not 0 <= x < d:
                raise ValueError(f"exponent {x} out of range for cyclic order {d}")
        return g

    def mul(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(g, h, self.cyclic_orders))

    def inv(self, g: Sequence[int]) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(g, self.cyclic_orders))

    def index_of(self, g: Sequence[int]) -> int:
        idx = 0
        for x, d in zip(g, self.cyclic_orders):
            idx = idx * d + x
        return idx

    def element_of(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.order:
            raise ValueError(f"index {idx} out of range for group of order {self.order}")
        out = []
        for d in reversed(self.cyclic_orders):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def elements(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteAbelianGroup) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self) -> int:
        return hash(self.cyclic_orders)

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({list(self.cyclic_orders)})"


@dataclass(frozen=True)
class GroupAlgebraElement:
    """GF(2) group-algebra element: the set of group elements with coefficient 1."""

    group: FiniteAbelianGroup
    support: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        validated = frozenset(self.group.validate(g) for g in self.support)
        object.__setattr__(self, "support", validated)

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def is_zero(self) -> bool:
        return not self.support

    def contains_identity(self) -> bool:
        return self.group.identity in self.support

    def sorted_support(self) -> list[tuple[int, ...]]:
        """Support in enumeration order (deterministic)."""
        return sorted(self.support, key=self.group.index_of)

    def __repr__(self) -> str:
        return f"GroupAlgebraElement({self.sorted_support()})"


def regular_representation(group: FiniteAbelianGroup, g: Sequence[int]) -> BitMatrix:
    """Permutation matrix of left multiplication by g.

    Entry (i, j) is 1 iff ``g_i = g * g_j`` in the fixed enumeration; the
    identity therefore maps to the identity matrix.
    """
    g = group.validate(g)
    n = group.order
    ginv = group.inv(g)
    words = []
    for i in range(n):
        gi = group.element_of(i)
        words.append(1 << group.index_of(group.mul(ginv, gi)))
    return BitMatrix(n, n, words)


def algebra_to_matrix(x: GroupAlgebraElement) -> BitMatrix:
    """GF(2) sum of regular representations over the support of x."""
    group = x.group
    n = group.order
    inv_support = [group.inv(g) for g in x.sorted_support()]
    words = []
    for i in range(n):
        gi = group.element_of(i)
        w = 0
        for ginv in inv_support:
            w ^= 1 << group.index_of(group.mul(ginv, gi))
        words.append(w)
    return BitMatrix(n, n, words)


def shift(x: GroupAlgebraElement, h: Sequence[int]) -> GroupAlgebraElement:
    """Translate the support of x by h: every g becomes h*g."""
    h = x.group.validate(h)
    return GroupAlgebraElement(x.group, frozenset(x.group.mul(h, g) for g in x.support))


def subgroup_closure(group: FiniteAbelianGroup, generators: Iterable[Sequence[int]]) -> set:
    """Subgroup generated by the given elements, as a set of exponent tuples."""
    gens = [group.validate(g) for g in generators]
    closure = {group.identity}
    frontier = [group.identity]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = group.mul(cur, g)
            if nxt not in closure:
                closure.add(nxt)
                frontier.append(nxt)
    return closure
