"""Embedding of two-block codes on integer-lattice quotients.

The non-identity support elements of a normalized pair (a, b) define a
Z-linear map from Z^(r+s) onto the group: basis vector i goes to the i-th
a-support element for i < r and to the (i-r)-th b-support element after.
For an indecomposable code the map is onto, its kernel is a full-rank
sublattice with quotient size |G|, and assigning the j-th and (n+j)-th
qubits to the canonical representative of the preimage of g_j puts two
qubits on every vertex with all checks confined to radius-1 balls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .codes import TwoBlockCode
from .errors import (
    InternalConsistencyError,
    NonSurjectiveError,
    NotNormalizedError,
)
from .gf2 import BitMatrix
from .groups import FiniteAbelianGroup, GroupAlgebraElement, subgroup_closure
from .lattices import (
    DEFAULT_QUOTIENT_BUDGET,
    IntegerLattice,
    ParallelotopePartition,
    enumerate_quotient,
    kernel_of_mod_map,
    quotient_distance,
    slab_index,
)

__all__ = [
    "PsiMap",
    "QubitLayout",
    "build_psi",
    "apply_psi",
    "is_surjective",
    "kernel_lattice",
    "qubit_layout",
    "verify_locality",
]


@dataclass(frozen=True)
class PsiMap:
    """Ordered generator list defining the map Z^(r+s) -> G."""

    group: FiniteAbelianGroup
    generators: tuple[tuple[int, ...], ...]
    r: int
    s: int

    @property
    def dim(self) -> int:
        return self.r + self.s


def build_psi(a: GroupAlgebraElement, b: GroupAlgebraElement) -> PsiMap:
    """Generator map of a normalized pair: a-support first, then b-support.

    Within each support the group-enumeration order is used; the identity is
    excluded on both sides, so the dimension is the generator weight minus 2.
    """
    if a.group != b.group:
        raise NotNormalizedError("a and b live in different groups")
    if not (a.contains_identity() and b.contains_identity()):
        raise NotNormalizedError("build_psi requires the identity in both supports")
    identity = a.group.identity
    gens_a = [g for g in a.sorted_support() if g != identity]
    gens_b = [g for g in b.sorted_support() if g != identity]
    return PsiMap(a.group, tuple(gens_a + gens_b), len(gens_a), len(gens_b))


def apply_psi(psi: PsiMap, x: Sequence[int]) -> tuple[int, ...]:
    """Image of an integer coefficient vector under the generator map."""
    if len(x) != psi.dim:
        raise ValueError(f"coefficient vector must have length {psi.dim}")
    orders = psi.group.cyclic_orders
    acc = [0] * len(orders)
    for coeff, gen in zip(x, psi.generators):
        for c, e in enumerate(gen):
            acc[c] += coeff * e
    return tuple(v % d for v, d in zip(acc, orders))


def is_surjective(psi: PsiMap) -> bool:
    """True iff the generators generate the whole group."""
    return len(subgroup_closure(psi.group, psi.generators)) == psi.group.order


def kernel_lattice(psi: PsiMap) -> IntegerLattice:
    """Kernel of the generator map as a full-rank sublattice of Z^D.

    Only defined for surjective maps (decompose the code first otherwise);
    the lattice determinant then equals the group order.
    """
    if not is_surjective(psi):
        raise NonSurjectiveError("generators do not span the group; decompose first")
    rows = kernel_of_mod_map(
        [list(g) for g in psi.generators], list(psi.group.cyclic_orders)
    )
    lattice = IntegerLattice(rows)
    if lattice.det_abs != psi.group.order:
        raise InternalConsistencyError("kernel lattice determinant differs from |G|")
    return lattice


@dataclass(frozen=True)
class QubitLayout:
    """Two qubits per vertex of Z^D / ker(psi).

    ``vertices[j]`` is the canonical representative carrying qubits j and
    n + j; it is the unique reduced preimage of the j-th group element.
    """

    psi: PsiMap
    lattice: IntegerLattice
    vertices: tuple[tuple[int, ...], ...]
    qubits_per_vertex: int = 2

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_of_qubit(self, qubit: int) -> tuple[int, ...]:
        return self.vertices[qubit % self.n]

    def qubits_by_slab(self, partition: ParallelotopePartition) -> list[list[int]]:
        """Qubit indices per slab; both qubits of a vertex share its slab."""
        out: list[list[int]] = [[] for _ in range(partition.mu)]
        for j, vertex in enumerate(self.vertices):
            k = slab_index(partition, vertex)
            out[k].append(j)
            out[k].append(j + self.n)
        return [sorted(qs) for qs in out]

    def to_json(self) -> dict:
        return {
            "kernel_basis": [list(r) for r in self.lattice.basis],
            "vertices": [list(v) for v in self.vertices],
            "qubits_per_vertex": self.qubits_per_vertex,
        }


def qubit_layout(
    code: TwoBlockCode, psi: PsiMap, budget: int = DEFAULT_QUOTIENT_BUDGET
) -> QubitLayout:
    """Bijection between group elements and quotient vertices.

    Enumerating the canonical quotient representatives and pushing each one
    through the generator map inverts the induced isomorphism in one pass;
    the canonical representative of a preimage coset is unique, so this
    matches a per-element linear solve followed by reduction.
    """
    if code.group != psi.group:
        raise NotNormalizedError("layout requires the code's own generator map")
    lattice = kernel_lattice(psi)
    group = psi.group
    n = group.order
    vertices: list[tuple[int, ...] | None] = [None] * n
    for rep in enumerate_quotient(lattice, budget):
        idx = group.index_of(apply_psi(psi, rep))
        if vertices[idx] is not None:
            raise InternalConsistencyError("generator map is not injective on the quotient")
        vertices[idx] = rep
    if any(v is None for v in vertices):
        raise InternalConsistencyError("generator map misses group elements")
    return QubitLayout(psi, lattice, tuple(vertices))


def _row_support_vertices(row_word: int, layout: QubitLayout) -> set:
    n = layout.n
    vertices = set()
    w = row_word
    while w:
        j = (w & -w).bit_length() - 1
        vertices.add(layout.vertices[j % n])
        w &= w - 1
    return vertices


def verify_locality(code, layout: QubitLayout, rho) -> tuple[bool, int]:
    """Check every stabilizer generator against a radius-rho ball.

    For each check row the support vertices are collected and measured in
    the quotient metric from the row's center vertex (the preimage of the
    row's group element, itself always in the support for normalized
    two-block codes).  Externally supplied CSS codes are accepted for
    verification on an existing layout; rows beyond the vertex count are
    measured from their first support vertex instead.
    Returns the verdict and the exact maximal squared radius encountered.
    """
    rho = Fraction(rho)
    css = code.css if hasattr(code, "css") else code
    lattice = layout.lattice
    max_sq = 0
    cache: dict = {}

    def dist_sq(v: tuple, center: tuple) -> int:
        delta = tuple(a - b for a, b in zip(v, center))
        if delta not in cache:
            cache[delta] = quotient_distance(lattice, v, center)
        return cache[delta]

    for matrix in (css.h_x, css.h_z):
        for i, word in enumerate(matrix.row_words):
            if word == 0:
                continue
            support = sorted(_row_support_vertices(word, layout))
            center = layout.vertices[i] if i < layout.n else support[0]
            for v in support:
                max_sq = max(max_sq, dist_sq(v, center))
    return max_sq <= rho * rho, max_sq
