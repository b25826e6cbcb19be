from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolspec.core import BooleanFunction, PointSet, from_points, support, wht
from boolspec.generators import affine_subspace, coordinate_subspace
from boolspec.stats import (
    energy_naive,
    energy_representation,
    energy_spectral,
    influence_counts,
    representation_counts,
    total_influence_spectral,
    weighted_square_sum,
)

from conftest import boolean_functions
from oracles import pair_influence, quadruple_energy, squared_difference_influence


def test_energy_naive_examples(ball3):
    assert energy_naive(PointSet(3, [])).value == 0
    assert energy_naive(PointSet(2, range(4))).value == 64
    assert energy_naive(support(ball3)).value == 40
    assert quadruple_energy([0, 1, 2, 4]) == 40


def test_energy_representation_examples():
    assert energy_representation(PointSet(3, [0])).value == 1
    A = PointSet(2, [0, 1, 2])
    r = representation_counts(A)
    dense = [r[s] for s in range(4)]
    assert dense == [3, 2, 2, 2]
    assert energy_representation(A).value == 21
    assert energy_representation(coordinate_subspace(3, 1)).value == 64


def test_representation_dense_and_sparse_agree():
    # |A|^2 > 2^n takes the dense path, below it the Counter path
    dense = representation_counts(PointSet(3, [0, 1, 2, 3, 5]))
    sparse = representation_counts(PointSet(8, [0, 1, 2, 3, 5]))
    assert isinstance(dense, np.ndarray) and isinstance(sparse, Counter)
    assert {s: int(v) for s, v in enumerate(dense) if v} == dict(sparse)


def test_energy_spectral_examples(ball3):
    assert energy_spectral(from_points(2, range(4))).value == 64
    assert energy_spectral(ball3).value == 40
    assert int(np.sum(wht(ball3).coeffs.astype(object) ** 4)) == 320
    for n in (1, 5, 11):
        assert energy_spectral(from_points(n, [(1 << n) - 1])).value == 1


def test_energy_exhaustive_small_n():
    for n in (1, 2, 3):
        for t in range(1 << (1 << n)):
            f = BooleanFunction.from_int(n, t)
            A = support(f)
            e = energy_naive(A).value
            assert energy_representation(A).value == e
            assert energy_spectral(f).value == e
            if n <= 2:
                assert quadruple_energy(A) == e
            m = len(A)
            if m:
                assert m * m <= e <= m ** 3


@settings(max_examples=60, deadline=None)
@given(boolean_functions(min_n=4, max_n=7))
def test_energy_three_routes_agree(f):
    A = support(f)
    e = energy_naive(A).value
    assert energy_representation(A).value == e
    assert energy_spectral(f).value == e


@pytest.mark.parametrize("n, k", [(3, 0), (4, 2), (6, 3), (7, 7)])
def test_subspace_energy_is_cube(n, k):
    A = coordinate_subspace(n, k)
    assert energy_representation(A).value == len(A) ** 3


def test_affine_subspaces_saturate_upper_bound():
    A = affine_subspace(5, [0b00011, 0b10100], shift=0b01000)
    assert energy_naive(A).value == len(A) ** 3


def test_upper_bound_only_for_affine_subspaces():
    # exhaustive on n=3: E = |A|^3 exactly for cosets of subgroups
    for size in (1, 2, 4, 8):
        for pts in combinations(range(8), size):
            e = energy_representation(PointSet(3, pts)).value
            closed = all(a ^ b ^ c in pts for a in pts for b in pts for c in pts)
            assert (e == size ** 3) == closed


def test_influence_examples(ball3):
    prof = influence_counts(from_points(3, range(8)))
    assert prof.d == (0, 0, 0) and prof.total_influence == 0
    n = 4
    dictator = from_points(n, [x for x in range(16) if not x >> (n - 1) & 1])
    prof = influence_counts(dictator)
    assert prof.d == (0, 0, 0, 16)
    assert prof.total_influence == 1
    prof = influence_counts(ball3)
    assert list(prof.d) == pair_influence(3, ball3.bits.tolist()) == [4, 4, 4]
    assert prof.total_influence == Fraction(3, 2)
    assert prof.influence(1) == Fraction(1, 2)


def test_total_influence_spectral_examples(ball3):
    assert total_influence_spectral(wht(from_points(2, range(4)))) == 0
    assert total_influence_spectral(wht(from_points(2, [0, 1]))) == 1
    assert total_influence_spectral(wht(ball3)) == Fraction(3, 2)


def test_influence_identity_exhaustive():
    for n in (1, 2, 3):
        for t in range(1 << (1 << n)):
            f = BooleanFunction.from_int(n, t)
            prof = influence_counts(f)
            assert 4 * weighted_square_sum(wht(f)) == prof.total << n
            assert list(prof.d) == squared_difference_influence(n, f.bits.tolist())


@settings(max_examples=150, deadline=None)
@given(boolean_functions(max_n=12))
def test_influence_identity_random(f):
    prof = influence_counts(f)
    assert 4 * weighted_square_sum(wht(f)) == prof.total << f.n
    assert total_influence_spectral(wht(f)) == prof.total_influence
    assert all(d % 2 == 0 and 0 <= d <= 1 << f.n for d in prof.d)
    assert prof.total_influence <= f.n


@settings(max_examples=50, deadline=None)
@given(st.integers(4, 9), st.data())
def test_energy_bounds(n, data):
    pts = data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=40))
    e = energy_representation(PointSet(n, sorted(pts))).value
    assert len(pts) ** 2 <= e <= len(pts) ** 3
