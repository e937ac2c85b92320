import random
from fractions import Fraction

import pytest

import twoblock as tb
from twoblock.cleaning import (
    PauliOperator,
    StabilizerCodeView,
    _clean_unchecked,
    clean,
    css_sector_logical_in_region,
    localize_logical,
    logical_in_region,
    symplectic_commutes,
)
from twoblock.errors import CleaningPreconditionError, InternalConsistencyError
from twoblock.lattices import ParallelotopePartition, _frac_inverse, good_basis

import oracles
from conftest import make_toric, sample_two_block


def view_of(code):
    return StabilizerCodeView.from_css(code.css)


def manual_partition(gb, mu, rho=1):
    """Partition with a chosen slab count, bypassing the applicability gate.

    Only legitimate in tests: localization itself re-verifies the slab-spread
    hypothesis on the concrete partition.
    """
    inv = _frac_inverse(gb.vectors)
    d = gb.dim
    last_col = tuple(inv[i][d - 1] for i in range(d))
    return ParallelotopePartition(
        gb, Fraction(rho), mu, gb.last_len_sq / (mu * mu), last_col
    )


def region_logicals_oracle(code, region):
    """All nontrivial logical Paulis supported in the region, exhaustively."""
    n = code.num_qubits
    hx = code.css.h_x
    hz = code.css.h_z
    rows = [(w, 0) for w in hx.row_words] + [(0, w) for w in hz.row_words]
    span_rows = [
        [(vec >> j) & 1 for j in range(2 * n)]
        for vec in (x | (z << n) for x, z in rows)
    ]
    members = oracles.rowspace_vectors(span_rows, 2 * n)
    found = []
    region = sorted(region)
    m = len(region)
    for xm in range(1 << m):
        x = sum(((xm >> c) & 1) << q for c, q in enumerate(region))
        for zm in range(1 << m):
            z = sum(((zm >> c) & 1) << q for c, q in enumerate(region))
            if x == 0 and z == 0:
                continue
            commutes = all(
                (bin(x & rz).count("1") + bin(z & rx).count("1")) % 2 == 0
                for rx, rz in rows
            )
            if commutes and (x | (z << n)) not in members:
                found.append((x, z))
    return found


class TestSymplecticCommutes:
    def test_same_qubit_anticommutes(self):
        x1 = PauliOperator(3, x_part=0b001)
        z1 = PauliOperator(3, z_part=0b001)
        assert not symplectic_commutes(x1, z1)

    def test_disjoint_commute(self):
        x1 = PauliOperator(3, x_part=0b001)
        z2 = PauliOperator(3, z_part=0b010)
        assert symplectic_commutes(x1, z2)

    def test_self_commutes(self):
        rng = random.Random(41)
        for _ in range(20):
            p = PauliOperator(8, rng.getrandbits(8), rng.getrandbits(8))
            assert symplectic_commutes(p, p)


class TestLogicalInRegion:
    def test_whole_block_finds_logical(self):
        code = make_toric(3, 3)
        view = view_of(code)
        op = logical_in_region(view, range(code.num_qubits))
        assert op is not None
        assert view.is_logical(op)

    def test_empty_region(self):
        view = view_of(make_toric(3, 3))
        assert logical_in_region(view, []) is None

    def test_toric_column_weight_three(self):
        code = make_toric(3, 3)
        group = code.group
        n = group.order
        column = [group.index_of((i, 0)) for i in range(3)]
        region = column + [q + n for q in column]
        view = view_of(code)
        op = logical_in_region(view, region)
        assert op is not None
        assert view.is_logical(op)
        assert op.acts_trivially_on(set(range(2 * n)) - set(region))
        # Exhaustive 2^6 x 2^6 sweep over region operators.
        all_logicals = region_logicals_oracle(code, region)
        assert all_logicals
        assert min(bin(x | z).count("1") for x, z in all_logicals) == 3

    def test_none_means_none(self, rng):
        # Whenever the search returns None the exhaustive oracle agrees.
        code = make_toric(3, 3)
        view = view_of(code)
        for _ in range(6):
            region = rng.sample(range(code.num_qubits), 4)
            got = logical_in_region(view, region)
            oracle = region_logicals_oracle(code, region)
            assert (got is not None) == bool(oracle)

    def test_css_fast_path_verdict_agreement(self, rng):
        for _ in range(6):
            code = sample_two_block(rng, n_max=8, weight=4)
            view = view_of(code)
            if view.k == 0:
                continue
            for _ in range(8):
                size = rng.randint(0, code.num_qubits)
                region = rng.sample(range(code.num_qubits), size)
                general = logical_in_region(view, region)
                sector = css_sector_logical_in_region(code.css, region)
                assert (general is None) == (sector is None)
                if sector is not None:
                    assert view.is_logical(sector)
                    assert sector.acts_trivially_on(
                        set(range(code.num_qubits)) - set(region)
                    )


class TestClean:
    def test_empty_region_identity(self):
        code = make_toric(3, 3)
        view = view_of(code)
        op = logical_in_region(view, range(code.num_qubits))
        assert clean(view, op, []) == op

    def test_already_trivial_region(self):
        # Any 2-qubit region is logical-free (d = 3), so a zero stabilizer
        # combination suffices and the operator comes back unchanged.
        code = make_toric(3, 3)
        view = view_of(code)
        op = logical_in_region(view, range(code.num_qubits))
        free = [q for q in range(code.num_qubits) if op.acts_trivially_on([q])][:2]
        cleaned = clean(view, op, free)
        assert cleaned == op

    def test_clean_toric_slab(self):
        code = make_toric(3, 3)
        group = code.group
        n = group.order
        view = view_of(code)
        op = logical_in_region(view, range(code.num_qubits))
        # Clean on one torus row (no logical fits in it).
        row = [group.index_of((0, j)) for j in range(3)]
        region = row + [q + n for q in row]
        if logical_in_region(view, region) is None:
            cleaned = clean(view, op, region)
            assert cleaned.acts_trivially_on(region)
            diff = cleaned.compose(op)
            assert view.in_stabilizer_span(diff)
            assert view.is_logical(cleaned)

    def test_precondition_violation_reported(self):
        code = make_toric(3, 3)
        view = view_of(code)
        op = logical_in_region(view, range(code.num_qubits))
        with pytest.raises(CleaningPreconditionError):
            clean(view, op, range(code.num_qubits))

    def test_non_logical_rejected(self):
        code = make_toric(3, 3)
        view = view_of(code)
        stab = view.rows[0]
        with pytest.raises(ValueError):
            clean(view, stab, [0, 1])

    def test_randomized_cleaning_property(self, rng):
        cleaned_count = 0
        while cleaned_count < 12:
            code = sample_two_block(rng, n_max=8, weight=4)
            view = view_of(code)
            if view.k == 0:
                continue
            op = logical_in_region(view, range(code.num_qubits))
            size = rng.randint(1, code.num_qubits // 2)
            region = rng.sample(range(code.num_qubits), size)
            if logical_in_region(view, region) is not None:
                with pytest.raises(CleaningPreconditionError):
                    clean(view, op, region)
                continue
            cleaned = clean(view, op, region)
            assert cleaned.acts_trivially_on(region)
            assert view.is_logical(cleaned)
            assert view.in_stabilizer_span(cleaned.compose(op))
            cleaned_count += 1


class TestLocalize:
    def _pipeline(self, code):
        psi = tb.build_psi(code.a, code.b)
        layout = tb.qubit_layout(code, psi)
        lat = layout.lattice
        return layout, good_basis(lat)

    def test_toric_9_full_run(self):
        code = make_toric(9, 9)
        layout, gb = self._pipeline(code)
        partition = tb.build_partition(gb, 1)
        view = view_of(code)
        slab, op = localize_logical(view, partition, layout)
        populations = partition.populations()
        assert view.is_logical(op)
        slab_set = set(layout.qubits_by_slab(partition)[slab])
        assert set(op.support()) <= slab_set
        assert op.weight <= 2 * populations[slab]

    def test_short_circuit_on_odd_slab(self):
        # The toric slab hosting a full torus row short-circuits step one.
        code = make_toric(9, 9)
        layout, gb = self._pipeline(code)
        partition = tb.build_partition(gb, 1)
        view = view_of(code)
        slab, op = localize_logical(view, partition, layout)
        assert slab % 2 == 1
        assert logical_in_region(view, layout.qubits_by_slab(partition)[slab]) is not None

    def test_cleaning_sweep_path(self):
        # Bicycle code over Z_5 whose mu = 2 partition has no logical in the
        # odd slab: localization must clean and factor.
        g = tb.FiniteAbelianGroup([5])
        a = tb.GroupAlgebraElement(g, frozenset([(0,), (1,)]))
        b = tb.GroupAlgebraElement(g, frozenset([(0,), (3,)]))
        code = tb.build_two_block(g, a, b)
        layout, gb = self._pipeline(code)
        partition = manual_partition(gb, 2)
        view = view_of(code)
        slabs = layout.qubits_by_slab(partition)
        assert logical_in_region(view, slabs[1]) is None
        slab, op = localize_logical(view, partition, layout)
        assert slab == 0
        assert view.is_logical(op)
        assert set(op.support()) <= set(slabs[0])
        d = tb.distance(code.css).d
        assert d.resolved and d.value <= op.weight

    def test_slab_spread_violation_is_hard_error(self):
        code = make_toric(5, 5)
        layout, gb = self._pipeline(code)
        partition = manual_partition(gb, 10)
        view = view_of(code)
        with pytest.raises(InternalConsistencyError):
            localize_logical(view, partition, layout)

    def test_k_zero_rejected(self):
        g = tb.FiniteAbelianGroup([16])
        e = tb.GroupAlgebraElement(g, frozenset([(0,)]))
        a = tb.GroupAlgebraElement(g, frozenset([(0,), (1,)]))
        code = tb.build_two_block(g, a, e)
        view = view_of(code)
        layout, gb = self._pipeline(code)
        partition = manual_partition(gb, 2)
        if view.k == 0:
            with pytest.raises(ValueError):
                localize_logical(view, partition, layout)

    def test_weight_at_least_distance(self):
        code = make_toric(4, 4)
        layout, gb = self._pipeline(code)
        partition = manual_partition(gb, 2)
        view = view_of(code)
        slab, op = localize_logical(view, partition, layout)
        d = tb.distance(code.css).d
        assert d.value <= op.weight


class TestRestrictedRowCleaning:
    def test_restricted_rows_limit_collateral_damage(self):
        # Restricting the solver to rows touching the region means the
        # cleaned operator can differ from the input only on the footprint
        # of those rows.
        g = tb.FiniteAbelianGroup([5])
        a = tb.GroupAlgebraElement(g, frozenset([(0,), (1,)]))
        b = tb.GroupAlgebraElement(g, frozenset([(0,), (3,)]))
        code = tb.build_two_block(g, a, b)
        psi = tb.build_psi(code.a, code.b)
        layout = tb.qubit_layout(code, psi)
        gb = good_basis(layout.lattice)
        partition = manual_partition(gb, 2)
        view = view_of(code)
        slabs = layout.qubits_by_slab(partition)
        assert logical_in_region(view, slabs[1]) is None
        op = logical_in_region(view, range(code.num_qubits))
        mask1 = sum(1 << q for q in slabs[1])
        rows1 = [
            r for r, row in enumerate(view.rows) if (row.x_part | row.z_part) & mask1
        ]
        cleaned = _clean_unchecked(view, op, slabs[1], rows1)
        assert cleaned.acts_trivially_on(slabs[1])
        footprint = 0
        for r in rows1:
            footprint |= view.rows[r].x_part | view.rows[r].z_part
        diff_support = (cleaned.x_part ^ op.x_part) | (cleaned.z_part ^ op.z_part)
        assert diff_support & ~footprint == 0
