from fractions import Fraction

import numpy as np
import pytest

from boolspec.core import BoolSpecError, BooleanFunction
from boolspec.exhaustive import _chunk, enumerate_all, sampled, summarize, table_bits
from boolspec.uncertainty import theorem_check


def test_n1_by_hand():
    s = enumerate_all(1)
    assert s.functions_checked == 4 and s.constant_functions == 2
    assert s.violations == 0 and s.classical_violations == 0
    # both singletons: |A|=1, E=1, D=2, s=2 -> 3*1*2 <= 128*1*2*4
    assert s.min_ratio == Fraction(1024, 6)
    assert s.argmin_tables == [1, 2]
    assert s.min_ratio_multi is None
    assert s.classical_equality_count == 3  # two singletons and the all-ones function
    assert s.classical_equality_singletons == 2 and s.classical_equality_constants == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_no_violations(n):
    s = enumerate_all(n)
    assert s.functions_checked == 1 << (1 << n)
    assert s.constant_functions == 2
    assert s.violations == 0 and s.violation_tables == []
    assert s.classical_violations == 0
    assert s.equality_cases == []
    if n > 1:
        # codimension-one cosets are the optimum for every small n
        assert s.min_ratio == s.min_ratio_multi == Fraction(512, 3)


def test_summary_matches_per_function_oracle():
    n = 3
    s = enumerate_all(n)
    ratios = {}
    for t in range(1, 255):
        c = theorem_check(BooleanFunction.from_int(n, t)).comparison
        ratios.setdefault(Fraction(c.rhs, c.lhs), []).append(t)
    best = min(ratios)
    assert s.min_ratio == best
    assert s.argmin_tables == sorted(ratios[best])
    # only the 6 coordinate half-spaces; tilted hyperplanes carry more influence
    assert s.argmin_tables == [15, 51, 85, 170, 204, 240]


def test_merge_is_chunking_independent():
    whole = _chunk(3, 0, 256)
    pieces = [_chunk(3, a, min(a + 37, 256)) for a in range(0, 256, 37)]
    left = pieces[0]
    for p in pieces[1:]:
        left = left.merge(p)
    right = pieces[-1]
    for p in reversed(pieces[:-1]):
        right = p.merge(right)
    assert left == right == whole
    a, b, c = _chunk(2, 0, 5), _chunk(2, 5, 11), _chunk(2, 11, 16)
    assert a.merge(b).merge(c) == a.merge(b.merge(c)) == c.merge(a).merge(b)


def test_merge_rejects_mismatched_runs():
    with pytest.raises(ValueError):
        _chunk(2, 0, 4).merge(_chunk(3, 0, 4))


def test_workers_do_not_change_result():
    assert enumerate_all(4, workers=2) == enumerate_all(4)


def test_violation_detection_path():
    # feed a fabricated batch through the summary to check flagged tables
    n = 2
    tables = np.array([0b0110, 0b1111], dtype=np.int64)
    s = summarize(n, tables, table_bits(n, tables), "exhaustive")
    assert s.functions_checked == 2 and s.constant_functions == 1
    assert s.violations == 0


def test_n_too_large():
    with pytest.raises(BoolSpecError, match="use sampled mode"):
        enumerate_all(5)


def test_sampled_deterministic_and_clean():
    a = sampled(6, 300, seed=12)
    assert a == sampled(6, 300, seed=12)
    assert a != sampled(6, 300, seed=13)
    assert a.functions_checked == 300 and a.violations == 0 and a.classical_violations == 0
    assert all(0 <= t < 1 << 64 for t in a.argmin_tables)


def test_sampled_large_n_uses_exact_integers():
    s = sampled(14, 3, seed=5)
    assert s.functions_checked == 3 and s.violations == 0
    assert s.min_ratio is not None and s.min_ratio > 1
