import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolspec.core import BoolSpecError, BooleanFunction, from_points
from boolspec.generators import coordinate_subspace, sidon_greedy
from boolspec.uncertainty import (
    cauchy_step,
    cauchy_step_check,
    classical_check,
    corollary_report,
    final_step_sides,
    function_stats,
    optimal_radius,
    optimal_radius_cubed,
    theorem_check,
    truncation_bound,
    weight_sum,
)

from conftest import boolean_functions


def test_theorem_ball(ball3):
    rep = theorem_check(ball3)
    assert (rep.comparison.lhs, rep.comparison.rhs) == (1536, 1536000)
    assert rep.comparison.relation == "<" and rep.comparison.holds
    assert rep.comparison.float_ratio == 1000.0
    assert not rep.degenerate
    assert rep.optimal_radius == pytest.approx(0.6, rel=1e-12)
    assert (rep.classical.lhs, rep.classical.rhs) == (20, 8)


def test_theorem_constant_is_degenerate():
    rep = theorem_check(from_points(2, range(4)))
    assert rep.degenerate
    assert (rep.comparison.lhs, rep.comparison.rhs) == (768, 0)
    assert not rep.comparison.holds
    assert rep.optimal_radius is None


def test_theorem_singleton():
    rep = theorem_check(from_points(2, [3]))
    assert rep.energy == 1 and rep.influence_numerator == 4 and rep.spectral_support == 4
    assert (rep.comparison.lhs, rep.comparison.rhs) == (12, 8192)


def test_theorem_empty_support():
    with pytest.raises(BoolSpecError, match="empty support"):
        theorem_check(from_points(3, []))
    with pytest.raises(BoolSpecError, match="empty support"):
        classical_check(from_points(3, []))


def test_classical_examples(ball3):
    c = classical_check(from_points(5, range(32)))
    assert (c.lhs, c.rhs, c.relation, c.holds) == (32, 32, "=", True)
    c = classical_check(from_points(5, [7]))
    assert (c.lhs, c.rhs, c.holds) == (32, 32, True)
    c = classical_check(ball3)
    assert (c.lhs, c.rhs, c.relation, c.holds) == (20, 8, ">", True)


def test_optimal_radius_examples(ball3):
    assert optimal_radius_cubed(ball3) == Fraction(27, 125)
    assert optimal_radius(ball3) == pytest.approx(0.6, rel=1e-12)
    dictator = from_points(2, [0, 2])
    st_ = function_stats(dictator)
    assert (st_.energy, st_.total_influence, st_.spectral_support) == (8, 1, 2)
    assert optimal_radius(dictator) == pytest.approx(0.375 ** (1 / 3), rel=1e-12)
    assert optimal_radius(dictator) == pytest.approx(0.7211, abs=1e-4)
    with pytest.raises(BoolSpecError, match="degenerate"):
        optimal_radius(from_points(3, range(8)))


def test_optimal_radius_scaling(ball3):
    # R^3 is proportional to I^2: scaling I by 8 multiplies R by 8^(2/3) = 4
    st_ = function_stats(ball3)
    scaled = type(st_)(**{**st_.__dict__, "influence_total": 8 * st_.influence_total})
    assert optimal_radius_cubed(scaled) == 64 * optimal_radius_cubed(st_)
    assert optimal_radius(scaled) == pytest.approx(4 * optimal_radius(st_), rel=1e-12)


def test_truncation_bound_examples(ball3):
    t = truncation_bound(ball3, 0.6)
    assert t.term1 == pytest.approx(0.625, rel=1e-12)
    assert t.term2 == pytest.approx(0.625, rel=1e-12)
    assert t.lhs == 0.5 and t.holds
    t = truncation_bound(from_points(2, range(4)), 1.0)
    assert t.lhs == 1.0 and t.term2 == 0.0
    assert t.term1 == pytest.approx(math.sqrt(1 / 3))
    assert not t.holds
    with pytest.raises(BoolSpecError):
        truncation_bound(ball3, 0.0)


def test_truncation_bound_large_radius_holds(ball3):
    f = from_points(4, [1, 2, 3, 9, 12])
    values = [truncation_bound(f, R) for R in (1e2, 1e4, 1e6)]
    assert all(v.holds for v in values)
    assert values[0].term1 < values[1].term1 < values[2].term1
    assert values[0].term2 > values[1].term2 > values[2].term2


def test_weight_sum_examples():
    assert weight_sum(0.6).sum == 0 and weight_sum(0.6).holds
    ws = weight_sum(2)
    assert ws.sum == Fraction(1, 4) and ws.bound == Fraction(2, 3) and ws.holds
    ws = weight_sum(10)
    assert ws.sum == Fraction(285, 100) and ws.holds


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-6, max_value=100, allow_nan=False))
def test_weight_sum_closed_form(R):
    ws = weight_sum(R)
    r = Fraction(R)
    m = math.floor(r)
    closed = m - Fraction(m * (m + 1)) / r + Fraction(m * (m + 1) * (2 * m + 1), 6) / (r * r)
    assert ws.sum == closed
    assert ws.holds


def test_cauchy_step_examples(ball3):
    assert cauchy_step(from_points(3, range(8)), 2).left == 0
    assert cauchy_step_check(from_points(3, range(8)), 2)
    cs = cauchy_step(ball3, 2)
    assert cs.left == Fraction(3, 32)
    assert cs.fourth == Fraction(320, 4 ** 6)
    assert cs.level_weights_sq == weight_sum(2).sum
    assert cs.holds


@settings(max_examples=150, deadline=None)
@given(boolean_functions(max_n=8), st.floats(min_value=0.01, max_value=8))
def test_cauchy_step_holds(f, R):
    cs = cauchy_step(f, R)
    assert cs.holds
    # float restatement with the absolute slack used for diagnostics
    assert float(cs.left) <= math.sqrt(cs.weights_sq) * math.sqrt(cs.fourth) + 1e-12


def test_radius_balances_terms_and_final_algebra(rng):
    for n in range(2, 9):
        for _ in range(10):
            f = BooleanFunction.from_bits(rng.integers(0, 2, 1 << n))
            if f.is_constant():
                continue
            R = optimal_radius(f)
            t = truncation_bound(f, R)
            assert abs(t.term1 - t.term2) <= 1e-9 * t.term2
            left, right = final_step_sides(f)
            assert left == pytest.approx(right, rel=1e-9)


def test_corollary_subspace():
    f = from_points(8, coordinate_subspace(8, 1))
    c = corollary_report(f)
    assert c.eta == pytest.approx(10 / 7, rel=1e-12)
    assert not c.in_range and c.chain_holds is None
    assert c.size_ratio == 8 / 128


def test_corollary_ball(ball3):
    c = corollary_report(ball3)
    assert c.eta == pytest.approx(math.log(120) / math.log(4) - 2, rel=1e-12)
    assert c.eta == pytest.approx(1.4534, abs=1e-4)
    assert not c.in_range


def test_corollary_eta_recovers_energy(rng):
    for n in range(3, 10):
        f = BooleanFunction.from_bits(rng.integers(0, 2, 1 << n))
        st_ = function_stats(f)
        c = corollary_report(st_)
        assert st_.cardinality ** (2 + c.eta) / n == pytest.approx(st_.energy, rel=1e-9)
        assert c.exponent == pytest.approx(2 / (1 - c.eta))
        assert c.implied_constant == pytest.approx(
            st_.cardinality / st_.spectral_support ** c.exponent, rel=1e-9)


def test_corollary_sidon_in_range():
    # E = 3m^2 - 2m, so eta ~ ln(3n) / ln m, below 1 once m > 3n
    m = 64
    pts, complete = sidon_greedy(16, m, seed=3)
    assert complete
    c = corollary_report(from_points(16, pts))
    assert c.eta == pytest.approx(math.log(16 * (3 * m * m - 2 * m)) / math.log(m) - 2)
    assert c.in_range and c.chain_holds is True


def test_corollary_errors():
    with pytest.raises(BoolSpecError):
        corollary_report(from_points(3, [5]))
    with pytest.raises(BoolSpecError):
        corollary_report(from_points(2, range(4)))


def test_theorem_exhaustive_n3_nonstrict():
    for t in range(1, 255):
        rep = theorem_check(BooleanFunction.from_int(3, t))
        assert rep.comparison.holds and rep.classical.holds
