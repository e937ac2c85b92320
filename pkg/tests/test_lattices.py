import random
from fractions import Fraction

import pytest

from twoblock.bounds import hermite
from twoblock.errors import BudgetExceededError, NotApplicableError
from twoblock.lattices import (
    IntegerLattice,
    build_partition,
    count_integral_points,
    enumerate_quotient,
    good_basis,
    hermite_normal_form,
    kernel_of_mod_map,
    quotient_distance,
    random_lattice,
    shortest_vector,
    slab_index,
    smith_normal_form,
)

import oracles


def mat_mul(a, b):
    return [
        [sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for ra in a
    ]


def diag_lattice(*entries):
    d = len(entries)
    return IntegerLattice(
        [[entries[i] if i == j else 0 for j in range(d)] for i in range(d)]
    )


class TestHermiteNormalForm:
    def test_identity(self):
        h, u = hermite_normal_form([[1, 0], [0, 1]])
        assert h == [[1, 0], [0, 1]]
        assert u == [[1, 0], [0, 1]]

    def test_diagonal_fixed_point(self):
        h, _ = hermite_normal_form([[3, 0], [0, 3]])
        assert h == [[3, 0], [0, 3]]

    def test_random_self_verifying(self):
        rng = random.Random(21)
        for _ in range(25):
            m = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
            if oracles.det_fraction(m) == 0:
                continue
            h, u = hermite_normal_form(m)
            assert mat_mul(u, m) == h
            assert abs(oracles.det_fraction(u)) == 1
            assert abs(oracles.det_fraction(h)) == abs(oracles.det_fraction(m))
            # Lower-triangular with positive diagonal, reduced below.
            for i in range(3):
                assert h[i][i] > 0
                for j in range(i + 1, 3):
                    assert h[i][j] == 0
                for j in range(i):
                    assert 0 <= h[i][j] < h[j][j]


class TestSmithNormalForm:
    def test_already_diagonal(self):
        s, u, v = smith_normal_form([[2, 0], [0, 4]])
        assert s == [[2, 0], [0, 4]]

    def test_spec_pair(self):
        m = [[2, 1], [0, 2]]
        s, u, v = smith_normal_form(m)
        assert s == [[1, 0], [0, 4]]
        assert mat_mul(mat_mul(u, m), v) == s

    def test_random_divisibility_and_identity(self):
        rng = random.Random(22)
        for _ in range(25):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
            s, u, v = smith_normal_form(m)
            assert mat_mul(mat_mul(u, m), v) == s
            assert abs(oracles.det_fraction(u)) == 1
            assert abs(oracles.det_fraction(v)) == 1
            diag = [s[i][i] for i in range(min(rows, cols))]
            for i in range(rows):
                for j in range(cols):
                    if i != j:
                        assert s[i][j] == 0
            for a, b in zip(diag, diag[1:]):
                if a:
                    assert b % a == 0
                else:
                    assert b == 0
            if rows == cols:
                prod = 1
                for x in diag:
                    prod *= x
                assert prod == abs(oracles.det_fraction(m))


class TestKernelOfModMap:
    def test_standard_torus(self):
        rows = kernel_of_mod_map([[1, 0], [0, 1]], [3, 3])
        lat = IntegerLattice(rows)
        assert lat.det_abs == 9
        assert lat.contains([3, 0]) and lat.contains([0, 3])
        assert not lat.contains([1, 0])

    def test_single_generator(self):
        rows = kernel_of_mod_map([[1]], [4])
        assert IntegerLattice(rows).det_abs == 4

    def test_relations_annihilate(self):
        rng = random.Random(23)
        for _ in range(10):
            orders = rng.choice([[6], [2, 4], [3, 5]])
            gens = [
                [rng.randrange(d) for d in orders]
                for _ in range(rng.randint(1, 3))
            ]
            rows = kernel_of_mod_map(gens, orders)
            for row in rows:
                acc = [0] * len(orders)
                for c, g in zip(row, gens):
                    acc = [x + c * e for x, e in zip(acc, g)]
                assert all(x % d == 0 for x, d in zip(acc, orders))


class TestQuotient:
    def test_three_by_three(self):
        reps = enumerate_quotient(diag_lattice(3, 3))
        assert reps == [(i, j) for i in range(3) for j in range(3)]

    def test_z_cross_5z(self):
        reps = enumerate_quotient(IntegerLattice([[1, 0], [0, 5]]))
        assert reps == [(0, j) for j in range(5)]

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            enumerate_quotient(diag_lattice(100, 100), budget=100)

    def test_pairwise_non_congruent_det_12(self):
        rng = random.Random(24)
        lat = random_lattice(rng, 2, max_diag=4, max_det=12)
        while lat.det_abs != 12:
            lat = random_lattice(rng, 2, max_diag=4, max_det=12)
        reps = enumerate_quotient(lat)
        assert len(reps) == 12
        # Membership oracle: difference solves to integral coefficients.
        inv = oracles.frac_inverse([list(r) for r in lat.basis])
        for i in range(12):
            for j in range(i + 1, 12):
                delta = [a - b for a, b in zip(reps[i], reps[j])]
                coeffs = [
                    sum(Fraction(delta[r]) * inv[r][c] for r in range(2))
                    for c in range(2)
                ]
                assert any(c.denominator != 1 for c in coeffs)


class TestQuotientDistance:
    def test_same_point(self):
        lat = diag_lattice(3, 3)
        assert quotient_distance(lat, (1, 2), (1, 2)) == 0

    def test_wraparound(self):
        lat = diag_lattice(3, 3)
        assert quotient_distance(lat, (0, 0), (2, 0)) == 1

    def test_against_boxed_oracle(self):
        rng = random.Random(25)
        for _ in range(12):
            dim = rng.choice([2, 3])
            lat = random_lattice(rng, dim, max_diag=5, ops=5)
            p = [rng.randint(-8, 8) for _ in range(dim)]
            q = [rng.randint(-8, 8) for _ in range(dim)]
            expected = oracles.boxed_min_distance(
                [list(r) for r in lat.basis], [a - b for a, b in zip(p, q)]
            )
            assert quotient_distance(lat, p, q) == expected

    def test_metric_axioms(self):
        rng = random.Random(26)
        lat = random_lattice(rng, 2, max_diag=8, ops=10)
        pts = [tuple(rng.randint(-6, 6) for _ in range(2)) for _ in range(6)]
        for a in pts:
            for b in pts:
                dab = quotient_distance(lat, a, b)
                assert dab == quotient_distance(lat, b, a)
                if lat.reduce(a) == lat.reduce(b):
                    assert dab == 0
                for c in pts:
                    dac = quotient_distance(lat, a, c)
                    dcb = quotient_distance(lat, c, b)
                    # Exact triangle inequality on squares:
                    # sqrt(dab) <= sqrt(dac) + sqrt(dcb).
                    assert dab <= dac + dcb or (dab - dac - dcb) ** 2 <= 4 * dac * dcb


class TestShortestVector:
    def test_tie_break_3z(self):
        assert shortest_vector(diag_lattice(3, 3)) == (0, 3)

    def test_z_cross_5z(self):
        assert shortest_vector(IntegerLattice([[1, 0], [0, 5]])) == (1, 0)

    def test_against_boxed_oracle_3d(self):
        rng = random.Random(27)
        for _ in range(6):
            lat = random_lattice(rng, 3, max_diag=10, ops=5)
            v = shortest_vector(lat)
            norm = sum(x * x for x in v)
            assert lat.contains(v)
            assert norm == oracles.boxed_shortest_norm_sq(
                [list(r) for r in lat.basis]
            )


class TestGoodBasis:
    def test_square_24(self):
        gb = good_basis(diag_lattice(24, 24))
        assert gb.hyperplane_vol_sq == 576
        assert gb.last_len_sq == 576

    def test_z_cross_nz(self):
        for n in (5, 9, 14):
            gb = good_basis(IntegerLattice([[1, 0], [0, n]]))
            assert gb.vectors[0] == (1, 0)
            assert gb.last_len_sq == n * n

    def test_dimension_one(self):
        gb = good_basis(IntegerLattice([[-7]]))
        assert gb.vectors == ((7,),)
        assert gb.hyperplane_vol_sq == 1
        assert gb.last_len_sq == 49

    def test_rankin_minimality_against_oracle(self):
        rng = random.Random(28)
        checked = 0
        while checked < 12:
            dim = rng.choice([2, 3])
            lat = random_lattice(rng, dim, max_diag=6, ops=5, max_det=200)
            gb = good_basis(lat)
            expected = oracles.min_hyperplane_volume_sq(
                [list(r) for r in lat.basis]
            )
            assert gb.hyperplane_vol_sq == expected
            checked += 1

    def test_invariants_random(self):
        rng = random.Random(29)
        for _ in range(15):
            dim = rng.choice([2, 3, 4])
            lat = random_lattice(rng, dim, max_diag=10, ops=12, max_det=2000)
            gb = good_basis(lat)
            n = lat.det_abs
            prod = Fraction(1)
            for gs_vec in gb.gram_schmidt:
                prod *= sum(x * x for x in gs_vec)
            assert prod == n * n
            gamma = hermite(dim).gamma_pow_d
            assert gb.hyperplane_vol_sq**dim <= gamma * Fraction(n) ** (2 * (dim - 1))
            assert gb.last_len_sq**dim * gamma >= n * n
            # The good basis spans the same lattice.
            for vec in gb.vectors:
                assert lat.contains(vec)
            assert IntegerLattice([list(v) for v in gb.vectors]).det_abs == n


class TestPartition:
    def test_24_square_rho_one(self):
        gb = good_basis(diag_lattice(24, 24))
        part = build_partition(gb, 1)
        assert part.mu == 12
        assert part.lambda_sq == 4
        counts = part.populations()
        assert counts == [48] * 12

    def test_odd_floor_decrement(self):
        gb = good_basis(diag_lattice(14, 14))
        part = build_partition(gb, 1)
        assert part.mu == 6
        assert part.lambda_sq == Fraction(49, 9)

    def test_not_applicable(self):
        gb = good_basis(diag_lattice(3, 3))
        with pytest.raises(NotApplicableError):
            build_partition(gb, 1)

    def test_slab_index_examples(self):
        gb = good_basis(diag_lattice(24, 24))
        part = build_partition(gb, 1)
        assert slab_index(part, (0, 0)) == 0
        assert slab_index(part, (0, 13)) == 6
        # Well-defined on cosets.
        assert slab_index(part, (24, 13 - 24)) == 6

    def test_rational_rho(self):
        gb = good_basis(diag_lattice(30, 30))
        part = build_partition(gb, Fraction(3, 2))
        assert part.mu % 2 == 0 and part.mu >= 2
        assert part.lambda_sq >= 4 * Fraction(9, 4)
        assert part.lambda_sq < 16 * Fraction(9, 4)

    def test_populations_sum_and_bound(self):
        rng = random.Random(30)
        built = 0
        for _ in range(60):
            lat = random_lattice(rng, 2, max_diag=20, max_det=2000)
            gb = good_basis(lat)
            try:
                part = build_partition(gb, 1)
            except NotApplicableError:
                continue
            built += 1
            counts = part.populations()
            assert sum(counts) == lat.det_abs
            for k in range(part.mu):
                assert count_integral_points(part, k) == counts[k]
        assert built >= 3

    def test_near_uniform_on_orthogonal(self):
        gb = good_basis(IntegerLattice([[1, 0], [0, 74]]))
        part = build_partition(gb, 1)
        counts = part.populations()
        n, mu = 74, part.mu
        for c in counts:
            assert abs(c - n / mu) <= 1


class TestRandomLattice:
    def test_determinism(self):
        a = random_lattice(random.Random(31), 3)
        b = random_lattice(random.Random(31), 3)
        assert a.basis == b.basis

    def test_det_bound(self):
        rng = random.Random(32)
        for _ in range(20):
            lat = random_lattice(rng, 3, max_det=100)
            assert 1 <= lat.det_abs <= 100
