import random

import pytest

import twoblock as tb


def make_toric(lx: int, ly: int) -> tb.TwoBlockCode:
    """Generalized toric code: a = e + x, b = e + y on Z_lx x Z_ly."""
    group = tb.FiniteAbelianGroup([lx, ly])
    a = tb.GroupAlgebraElement(group, frozenset([(0, 0), (1, 0)]))
    b = tb.GroupAlgebraElement(group, frozenset([(0, 0), (0, 1)]))
    return tb.build_two_block(group, a, b)


def sample_two_block(rng: random.Random, n_min=2, n_max=30, weight=4) -> tb.TwoBlockCode:
    """Seeded random normalized two-block code (identity in both supports)."""
    from twoblock.cli import _sample_code

    n_min = max(n_min, -(-weight // 2))  # supports of size <= n each
    group, a, b = _sample_code(rng, n_min, max(n_max, n_min), weight)
    return tb.build_two_block(group, a, b)


@pytest.fixture
def rng():
    return random.Random(0xC0DE)
