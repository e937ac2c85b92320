"""Exact integer-lattice machinery on top of rational arithmetic.

Everything here is exact: normal forms and quotient enumeration run on
integers, Gram-Schmidt data and slab coordinates are Fractions, and every
inequality that would involve a square root is checked on squares (or D-th
powers).  Shortest-vector and closest-vector problems are solved by
exhaustive enumeration with exact pruning bounds after an LLL preprocessing
pass, which keeps the supported dimension small (the default budget is
D <= 8) but makes every reported quantity certifiable.

The central object built here is a basis of a full-rank sublattice of Z^D
whose first D-1 vectors span a hyperplane sublattice of minimal volume
(equivalently, of volume det * ||shortest dual vector||), which maximizes
the length of the last Gram-Schmidt vector.  Slicing the fundamental domain
across that direction into an even number of slabs of width at least 2*rho
is what the distance-bound argument consumes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bounds import hermite
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    InternalConsistencyError,
    NotApplicableError,
)
from .ratmath import ceil_decimal_str, frac_isqrt, sqrt_upper

__all__ = [
    "hermite_normal_form",
    "smith_normal_form",
    "kernel_of_mod_map",
    "IntegerLattice",
    "enumerate_quotient",
    "quotient_distance",
    "shortest_vector",
    "GoodBasis",
    "good_basis",
    "ParallelotopePartition",
    "build_partition",
    "slab_index",
    "count_integral_points",
    "random_lattice",
]

MAX_ENUM_DIM = 8
DEFAULT_QUOTIENT_BUDGET = 10**6


# ---------------------------------------------------------------------------
# integer matrix plumbing


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [
        [sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for ra in a
    ]


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _hnf_upper(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [[int(x) for x in r] for r in m]
    u = _identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if h[i][c]), None)
        if piv is None:
            continue
        h[r], h[piv] = h[piv], h[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            h[r], h[i] = (
                [x * s + y * t for s, t in zip(h[r], h[i])],
                [-q * s + p * t for s, t in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [-q * s + p * t for s, t in zip(u[r], u[i])],
            )
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [s - q * t for s, t in zip(h[i], h[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def hermite_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]]]:
    """Lower-triangular row HNF: returns (H, U) with U unimodular, U @ m = H.

    For square nonsingular input H has positive diagonal and every
    below-diagonal entry reduced modulo the diagonal of its column.
    Zero rows (rank-deficient input) surface at the top of H.
    """
    rev = [list(reversed(r)) for r in m]
    h2, u2 = _hnf_upper(rev)
    h = [list(reversed(r)) for r in reversed(h2)]
    u = [list(r) for r in reversed(u2)]
    return h, u


def smith_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form: (S, U, V) with U @ m @ V = S, S diagonal, d_i | d_{i+1}."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    s = [[int(x) for x in r] for r in m]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        s[dst] = [a + c * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + c * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(rows, cols):
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] and (piv is None or abs(s[i][j]) < abs(s[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        while True:
            if s[t][t] < 0:
                s[t] = [-x for x in s[t]]
                u[t] = [-x for x in u[t]]
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % s[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1
    return s, u, v


def kernel_of_mod_map(
    vectors: Sequence[Sequence[int]], moduli: Sequence[int]
) -> list[list[int]]:
    """Basis of {x in Z^k : sum_i x_i * vectors[i] = 0 mod moduli}, as rows.

    This is the relation lattice of k generators of the abelian group
    Z_{m_1} x ... x Z_{m_t}; it always has full rank k.
    """
    k = len(vectors)
    t = len(moduli)
    if k == 0:
        return []
    stacked = [[int(x) for x in vec] for vec in vectors]
    for vec in stacked:
        if len(vec) != t:
            raise DimensionMismatchError("generator length does not match moduli")
    stacked += [[moduli[i] if j == i else 0 for j in range(t)] for i in range(t)]
    h, u = hermite_normal_form(stacked)
    rows = [u[i][:k] for i in range(len(h)) if not any(h[i])]
    if len(rows) != k:
        raise InternalConsistencyError("relation lattice has unexpected rank")
    return rows


# ---------------------------------------------------------------------------
# lattices, quotients, enumeration


class IntegerLattice:
    """Full-rank sublattice of Z^D given by integer basis rows."""

    __slots__ = ("dim", "basis", "det", "det_abs", "_hnf", "_red_gso")

    def __init__(self, basis: Sequence[Sequence[int]]):
        rows = [[int(x) for x in r] for r in basis]
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise DimensionMismatchError("basis must be square and nonempty")
        det = _det_bareiss(rows)
        if det == 0:
            raise ValueError("basis is singular")
        self.dim = d
        self.basis = tuple(tuple(r) for r in rows)
        self.det = det
        self.det_abs = abs(det)
        self._hnf = None
        self._red_gso = None

    @property
    def quotient_size(self) -> int:
        """|Z^D / Lambda| = |det|."""
        return self.det_abs

    def hnf(self) -> tuple[tuple[int, ...], ...]:
        if self._hnf is None:
            h, _ = hermite_normal_form([list(r) for r in self.basis])
            self._hnf = tuple(tuple(r) for r in h)
        return self._hnf

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset representative of v under the lattice HNF."""
        h = self.hnf()
        w = [int(x) for x in v]
        if len(w) != self.dim:
            raise DimensionMismatchError("vector dimension mismatch")
        for i in reversed(range(self.dim)):
            q = w[i] // h[i][i]
            if q:
                w = [a - q * b for a, b in zip(w, h[i])]
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def _reduced_basis_gso(self):
        if self._red_gso is None:
            reduced = _lll_reduce([list(r) for r in self.basis])
            self._red_gso = (reduced, _gram_schmidt(reduced))
        return self._red_gso

    def __repr__(self) -> str:
        return f"IntegerLattice(dim={self.dim}, det={self.det})"


def enumerate_quotient(
    lattice: IntegerLattice, budget: int = DEFAULT_QUOTIENT_BUDGET
) -> list[tuple[int, ...]]:
    """All canonical coset representatives of Z^D / Lambda, HNF box order."""
    n = lattice.det_abs
    if n > budget:
        raise BudgetExceededError(f"quotient size {n} exceeds budget {budget}")
    h = lattice.hnf()
    return list(itertools.product(*(range(h[i][i]) for i in range(lattice.dim))))


def _gram_schmidt(rows: Sequence[Sequence[int]]):
    """Exact GSO: returns (orthogonal vectors, mu coefficients, squared norms)."""
    d = len(rows)
    gs: list[list[Fraction]] = []
    mu = [[Fraction(0)] * d for _ in range(d)]
    norms: list[Fraction] = []
    for i in range(d):
        w = [Fraction(x) for x in rows[i]]
        for j in range(i):
            m = sum(a * b for a, b in zip(rows[i], gs[j])) / norms[j]
            mu[i][j] = m
            w = [a - m * b for a, b in zip(w, gs[j])]
        gs.append(w)
        norm = sum(a * a for a in w)
        if norm == 0:
            raise ValueError("rows are linearly dependent")
        norms.append(norm)
    return gs, mu, norms


def _round_frac(c: Fraction) -> int:
    """Nearest integer, ties rounded up."""
    return (2 * c.numerator + c.denominator) // (2 * c.denominator)


def _lll_reduce(rows: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)):
    """Exact-rational LLL; returns a reduced basis of the same lattice."""
    b = [[int(x) for x in r] for r in rows]
    d = len(b)
    if d <= 1:
        return b
    gs, mu, norms = _gram_schmidt(b)
    k = 1
    while k < d:
        for j in range(k - 1, -1, -1):
            m = mu[k][j]
            if 2 * abs(m.numerator) > m.denominator:
                q = _round_frac(m)
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for jj in range(j):
                    mu[k][jj] -= q * mu[j][jj]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            gs, mu, norms = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def _enumerate_min(lattice: IntegerLattice, target: Sequence[int] | None, collect: bool):
    """Exact minimum of ||x @ B - target||^2 over integer x.

    With target None the zero vector is excluded (shortest-vector problem)
    and, when collect is set, every optimal lattice vector is returned.
    Pruning uses exact Fraction arithmetic over the LLL-reduced basis.
    """
    reduced, (gs, mu, norms) = lattice._reduced_basis_gso()
    d = lattice.dim
    if target is None:
        tc = [Fraction(0)] * d
        best = min(Fraction(_dot(row, row)) for row in reduced)
    else:
        tc = [
            sum(a * g for a, g in zip(target, gs[j])) / norms[j] for j in range(d)
        ]
        # Babai nearest-plane gives a finite starting radius.
        best = Fraction(0)
        xs0 = [0] * d
        for j in reversed(range(d)):
            c = tc[j] - sum(mu[i][j] * xs0[i] for i in range(j + 1, d))
            xs0[j] = _round_frac(c)
            best += norms[j] * (xs0[j] - c) ** 2
    hits: list[tuple[int, ...]] = []
    xs = [0] * d

    def visit(acc: Fraction):
        nonlocal best, hits
        if target is None and not any(xs):
            return
        if acc < best:
            best = acc
            hits = [tuple(xs)] if collect else []
        elif collect and acc == best:
            hits.append(tuple(xs))

    def rec(j: int, acc: Fraction):
        nonlocal best
        if j < 0:
            visit(acc)
            return
        c = tc[j] - sum(mu[i][j] * xs[i] for i in range(j + 1, d))
        x0 = _round_frac(c)
        x = x0
        while True:
            term = norms[j] * (x - c) ** 2
            if acc + term > best:
                if x >= c:
                    break
            else:
                xs[j] = x
                rec(j - 1, acc + term)
            x += 1
        x = x0 - 1
        while True:
            term = norms[j] * (x - c) ** 2
            if acc + term > best:
                if x <= c:
                    break
            else:
                xs[j] = x
                rec(j - 1, acc + term)
            x -= 1
        xs[j] = 0

    if target is None and collect:
        # Ties at the initial radius must be collected, so seed nothing and
        # let enumeration rediscover the basis vectors.
        pass
    rec(d - 1, Fraction(0))
    vectors = [
        tuple(sum(x * row[i] for x, row in zip(xv, reduced)) for i in range(d))
        for xv in hits
    ]
    return best, vectors


def quotient_distance(
    lattice: IntegerLattice,
    p: Sequence[int],
    q: Sequence[int],
    max_dim: int = MAX_ENUM_DIM,
) -> int:
    """Exact squared Euclidean distance between [p] and [q] in Z^D / Lambda."""
    if lattice.dim > max_dim:
        raise BudgetExceededError(f"CVP enumeration limited to dimension {max_dim}")
    if len(p) != lattice.dim or len(q) != lattice.dim:
        raise DimensionMismatchError("point dimension mismatch")
    t = [int(a) - int(b) for a, b in zip(p, q)]
    if not any(t):
        return 0
    best, _ = _enumerate_min(lattice, t, collect=False)
    if best.denominator != 1:
        raise InternalConsistencyError("integral CVP produced a non-integer norm")
    return int(best)


def shortest_vector(lattice: IntegerLattice, max_dim: int = MAX_ENUM_DIM) -> tuple[int, ...]:
    """A nonzero lattice vector of minimal norm.

    Tie-break: among all minimal vectors, after negating so the first
    nonzero coordinate is positive, the lexicographically smallest wins.
    """
    if lattice.dim > max_dim:
        raise BudgetExceededError(f"SVP enumeration limited to dimension {max_dim}")
    _, vectors = _enumerate_min(lattice, None, collect=True)
    canonical = set()
    for v in vectors:
        lead = next(x for x in v if x)
        canonical.add(tuple(-x for x in v) if lead < 0 else v)
    return min(canonical)


# ---------------------------------------------------------------------------
# the distance-bound basis and slab partition


@dataclass(frozen=True)
class GoodBasis:
    """Lattice basis whose leading D-1 vectors span a minimal hyperplane.

    The minimality makes the last Gram-Schmidt vector as long as possible:
    its squared length times the D-th power of the Hermite constant is at
    least n^2 (checked exactly on construction, along with the volume
    factorization and the hyperplane-volume bound).
    """

    lattice: IntegerLattice
    vectors: tuple[tuple[int, ...], ...]
    gram_schmidt: tuple[tuple[Fraction, ...], ...]
    hyperplane_vol_sq: Fraction
    last_len_sq: Fraction

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def quotient_size(self) -> int:
        return self.lattice.det_abs

    def to_json(self) -> dict:
        return {
            "basis": [list(v) for v in self.vectors],
            "hyperplane_vol_sq": [
                self.hyperplane_vol_sq.numerator,
                self.hyperplane_vol_sq.denominator,
            ],
            "last_gs_len_sq": [self.last_len_sq.numerator, self.last_len_sq.denominator],
        }


def _frac_inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    d = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(i == j) for j in range(d)] for i, r in enumerate(rows)]
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(d):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[d:] for row in a]


def _adjugate_transpose(lattice: IntegerLattice) -> list[list[int]]:
    """Rows generate det * (dual lattice); integer by construction."""
    inv = _frac_inverse(lattice.basis)
    d = lattice.dim
    out = []
    for i in range(d):
        row = [inv[j][i] * lattice.det_abs for j in range(d)]
        if any(x.denominator != 1 for x in row):
            raise InternalConsistencyError("adjugate is not integral")
        out.append([int(x) for x in row])
    return out


def good_basis(lattice: IntegerLattice, max_dim: int = MAX_ENUM_DIM) -> GoodBasis:
    """Basis whose first D-1 vectors span a minimal-volume hyperplane sublattice.

    The hyperplane is found through the dual lattice: a shortest dual vector
    w (scaled integral) is computed by enumeration, the sublattice
    Lambda with w-orthogonal coordinates is extracted as a full integer
    kernel (hence saturated), and a Smith-form transform completes it to a
    basis of the whole lattice.
    """
    if lattice.dim > max_dim:
        raise BudgetExceededError(f"good_basis enumeration limited to dimension {max_dim}")
    d = lattice.dim
    n = lattice.det_abs
    if d == 1:
        vec = ((n,),)
        return GoodBasis(lattice, vec, ((Fraction(n),),), Fraction(1), Fraction(n * n))
    dual_scaled = IntegerLattice(_adjugate_transpose(lattice))
    w = shortest_vector(dual_scaled, max_dim=max_dim)
    # Coefficient rows c with c @ (B w^T) = 0 give Lambda ∩ w-perp.
    z = [_dot(row, w) for row in lattice.basis]
    h_z, u_z = hermite_normal_form([[x] for x in z])
    coeff = [u_z[i] for i in range(d) if h_z[i][0] == 0]
    if len(coeff) != d - 1:
        raise InternalConsistencyError("hyperplane kernel has wrong rank")
    s, _, v = smith_normal_form(coeff)
    if any(s[i][i] != 1 for i in range(d - 1)):
        raise InternalConsistencyError("hyperplane sublattice is not saturated")
    v_inv_frac = _frac_inverse(v)
    if any(x.denominator != 1 for row in v_inv_frac for x in row):
        raise InternalConsistencyError("Smith transform is not unimodular")
    v_inv = [[int(x) for x in row] for row in v_inv_frac]
    vectors = _mat_mul(v_inv, [list(r) for r in lattice.basis])
    # Orientation is free; pin each vector's first nonzero entry positive so
    # slab coordinates are reproducible.
    for i, vec in enumerate(vectors):
        lead = next(x for x in vec if x)
        if lead < 0:
            vectors[i] = [-x for x in vec]
    gs, _, norms = _gram_schmidt(vectors)
    hyper = Fraction(1)
    for nm in norms[: d - 1]:
        hyper *= nm
    last = norms[d - 1]
    w_norm_sq = _dot(w, w)
    if hyper != w_norm_sq:
        raise InternalConsistencyError("hyperplane volume disagrees with dual norm")
    total = hyper * last
    if total != n * n:
        raise InternalConsistencyError("Gram-Schmidt volume factorization failed")
    gamma = hermite(d).gamma_pow_d
    if hyper**d > gamma * Fraction(n) ** (2 * (d - 1)):
        raise InternalConsistencyError("hyperplane volume exceeds the Hermite bound")
    if last**d * gamma < n * n:
        raise InternalConsistencyError("last Gram-Schmidt vector is too short")
    return GoodBasis(
        lattice,
        tuple(tuple(r) for r in vectors),
        tuple(tuple(r) for r in gs),
        hyper,
        last,
    )


@dataclass(frozen=True)
class ParallelotopePartition:
    """Slicing of the fundamental domain into mu slabs along the last basis vector.

    Slab k collects the quotient points whose last good-basis coordinate,
    reduced modulo 1, lies in [k/mu, (k+1)/mu); the geometric width of a
    slab is ||last GS vector|| / mu.
    """

    basis: GoodBasis
    rho: Fraction
    mu: int
    lambda_sq: Fraction
    last_coordinate_form: tuple[Fraction, ...]

    @property
    def lattice(self) -> IntegerLattice:
        return self.basis.lattice

    def slab_of(self, p: Sequence[int]) -> int:
        return slab_index(self, p)

    def populations(self, budget: int = DEFAULT_QUOTIENT_BUDGET) -> list[int]:
        """Exact number of quotient points in each slab (sums to n)."""
        counts = [0] * self.mu
        for p in enumerate_quotient(self.lattice, budget):
            counts[slab_index(self, p)] += 1
        if sum(counts) != self.lattice.det_abs:
            raise InternalConsistencyError("slab populations do not sum to n")
        return counts

    def count_bound_decimal(self) -> str:
        """Upper enclosure of the per-slab point bound n/mu + n*sqrt(D)/l."""
        n = self.lattice.det_abs
        d = self.lattice.dim
        value = Fraction(n, self.mu) + n * sqrt_upper(Fraction(d) / self.basis.last_len_sq)
        return ceil_decimal_str(value)

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "rho": [self.rho.numerator, self.rho.denominator],
            "lambda_sq": [self.lambda_sq.numerator, self.lambda_sq.denominator],
            "point_bound": self.count_bound_decimal(),
        }


def build_partition(basis: GoodBasis, rho) -> ParallelotopePartition:
    """Slab partition with an even slab count mu and width in [2 rho, 4 rho).

    Requires the applicability condition n^(1/D) >= 8 rho sqrt(gamma_D),
    verified exactly as n^2 >= (8 rho)^(2D) gamma_D^D; outside it the slab
    arithmetic below has no guarantees and a NotApplicableError is raised.
    """
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    d = basis.dim
    n = basis.quotient_size
    gamma = hermite(d).gamma_pow_d
    threshold = (8 * rho) ** (2 * d) * gamma
    if Fraction(n * n) < threshold:
        raise NotApplicableError(
            f"applicability fails: n^2 = {n * n} < (8 rho)^(2D) gamma_D^D "
            f"= {threshold.numerator}/{threshold.denominator}"
        )
    # mu = floor(l / 2 rho), made even by decrement; computed on squares.
    t = frac_isqrt(basis.last_len_sq / (4 * rho * rho))
    mu = t if t % 2 == 0 else t - 1
    if mu < 2:
        raise InternalConsistencyError("applicability should force mu >= 2")
    lambda_sq = basis.last_len_sq / (mu * mu)
    if lambda_sq < 4 * rho * rho or lambda_sq >= 16 * rho * rho:
        raise InternalConsistencyError("slab width escaped [2 rho, 4 rho)")
    inv = _frac_inverse(basis.vectors)
    last_col = tuple(inv[i][d - 1] for i in range(d))
    return ParallelotopePartition(basis, rho, mu, lambda_sq, last_col)


def slab_index(partition: ParallelotopePartition, p: Sequence[int]) -> int:
    """Slab of quotient point p: floor(mu * frac(last good-basis coordinate))."""
    if len(p) != partition.basis.dim:
        raise DimensionMismatchError("point dimension mismatch")
    coord = Fraction(sum(a * c for a, c in zip(p, partition.last_coordinate_form)))
    frac = coord - (coord.numerator // coord.denominator)
    scaled = frac * partition.mu
    return scaled.numerator // scaled.denominator


def count_integral_points(
    partition: ParallelotopePartition,
    k: int,
    budget: int = DEFAULT_QUOTIENT_BUDGET,
) -> int:
    """Exact number of quotient points in slab k.

    The count is certified against the volume argument: any excess of the
    count over n/mu must have square at most n^2 D / ||u*_D||^2, an exact
    rational comparison equivalent to count <= (n/l)(lambda + sqrt(D)).
    """
    if not 0 <= k < partition.mu:
        raise ValueError(f"slab index {k} out of range")
    count = partition.populations(budget)[k]
    n = partition.lattice.det_abs
    d = partition.lattice.dim
    excess = count - Fraction(n, partition.mu)
    if excess > 0 and excess * excess > Fraction(n * n * d) / partition.basis.last_len_sq:
        raise InternalConsistencyError("slab population exceeds the volume bound")
    return count


def random_lattice(rng, dim: int, *, max_diag: int = 20, ops: int = 30, max_det: int | None = None) -> IntegerLattice:
    """Seeded random full-rank lattice: diagonal scaled by elementary row ops.

    Diagonal entries are uniform in [1, max_diag] (resampled until the
    determinant fits under max_det, when given); the unimodular factor is a
    product of at most `ops` additions of a small multiple (in [-3, 3]) of
    one row to another, so the determinant stays the diagonal product.
    """
    while True:
        diag = [rng.randint(1, max_diag) for _ in range(dim)]
        det = 1
        for x in diag:
            det *= x
        if max_det is None or det <= max_det:
            break
    rows = [[diag[i] if i == j else 0 for j in range(dim)] for i in range(dim)]
    for _ in range(ops):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        c = rng.randint(-3, 3)
        if c:
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return IntegerLattice(rows)
