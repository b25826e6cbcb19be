"""Support inequalities for Boolean functions and the diagnostics of their
proof chain.

Main inequality, cross-multiplied to integers (D = I(f) * 2^n):

    3 |A|^3 2^n  <=  128 E(A) D |supp fhat|^2

Verdicts are exact; only the radius-dependent diagnostics use floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .core import BoolSpecError, BooleanFunction, Spectrum, power_sum, wht
from .stats import energy, influence_counts, squared_level_weights


@dataclass(frozen=True)
class FunctionStats:
    """The integer statistics every inequality here is built from."""

    n: int
    cardinality: int
    energy: int
    influence_total: int  # D
    spectral_support: int
    fourth_moment: int  # sum_S k_S^4
    level_weights: tuple[int, ...]  # sum_{|S|=j} k_S^2

    @property
    def total_influence(self) -> Fraction:
        return Fraction(self.influence_total, 1 << self.n)

    @property
    def degenerate(self) -> bool:
        return self.influence_total == 0


def function_stats(f: BooleanFunction, spectrum: Spectrum | None = None,
                   energy_algorithm: str = "spectral") -> FunctionStats:
    s = spectrum if spectrum is not None else wht(f)
    if energy_algorithm == "spectral":
        e = energy(s, "spectral").value
    else:
        e = energy(f, energy_algorithm).value
    return FunctionStats(
        n=f.n,
        cardinality=f.cardinality,
        energy=e,
        influence_total=influence_counts(f).total,
        spectral_support=int(np.count_nonzero(s.coeffs)),
        fourth_moment=power_sum(s.coeffs, 4),
        level_weights=tuple(squared_level_weights(s)),
    )


def _stats(f) -> FunctionStats:
    return f if isinstance(f, FunctionStats) else function_stats(f)


@dataclass(frozen=True)
class ExactComparison:
    """Cross-multiplied inequality between non-negative integers.

    ``claim`` is the asserted direction: "<=" (lhs <= rhs) or ">=".
    """

    lhs: int
    rhs: int
    claim: str = "<="

    @property
    def relation(self) -> str:
        return "<" if self.lhs < self.rhs else "=" if self.lhs == self.rhs else ">"

    @property
    def holds(self) -> bool:
        """Non-strict verdict of the claim."""
        return self.lhs <= self.rhs if self.claim == "<=" else self.lhs >= self.rhs

    @property
    def strict(self) -> bool:
        return self.holds and self.lhs != self.rhs

    @property
    def float_ratio(self) -> float:
        if self.lhs == 0:
            return math.inf
        return float(Fraction(self.rhs, self.lhs))


@dataclass(frozen=True)
class TheoremReport:
    cardinality: int
    energy: int
    influence_numerator: int
    spectral_support: int
    comparison: ExactComparison
    degenerate: bool
    optimal_radius: float | None
    classical: ExactComparison


def theorem_comparison(st: FunctionStats) -> ExactComparison:
    lhs = 3 * st.cardinality ** 3 << st.n
    rhs = 128 * st.energy * st.influence_total * st.spectral_support ** 2
    return ExactComparison(lhs, rhs)


def classical_check(f) -> ExactComparison:
    """|A| * |supp fhat| against |G| = 2^n."""
    st = _stats(f)
    if st.cardinality == 0:
        raise BoolSpecError("empty support")
    return ExactComparison(st.cardinality * st.spectral_support, 1 << st.n, ">=")


def theorem_check(f) -> TheoremReport:
    st = _stats(f)
    if st.cardinality == 0:
        raise BoolSpecError("empty support")
    return TheoremReport(
        cardinality=st.cardinality,
        energy=st.energy,
        influence_numerator=st.influence_total,
        spectral_support=st.spectral_support,
        comparison=theorem_comparison(st),
        degenerate=st.degenerate,
        optimal_radius=None if st.degenerate else optimal_radius(st),
        classical=classical_check(st),
    )


def optimal_radius_cubed(f) -> Fraction:
    """R^3 = 3 2^{3n} I^2 / (16 E |supp fhat|^2), exact."""
    st = _stats(f)
    if st.cardinality == 0:
        raise BoolSpecError("empty support")
    if st.degenerate:
        raise BoolSpecError("degenerate: zero influence")
    # 2^{3n} I^2 = 2^n D^2
    return Fraction(3 * st.influence_total ** 2 << st.n,
                    16 * st.energy * st.spectral_support ** 2)


def optimal_radius(f) -> float:
    """Radius balancing the two terms of ``truncation_bound``."""
    return float(optimal_radius_cubed(f)) ** (1.0 / 3.0)


class TruncationBound(NamedTuple):
    lhs: float
    term1: float
    term2: float
    holds: bool


def truncation_bound(f, R: float) -> TruncationBound:
    """Measure |A|/2^n against
    |supp fhat| sqrt(R/3) sqrt(E/2^{3n}) + I/(4R).

    Reported, never asserted: the bound omits the S = {} term and fails
    for spectra concentrated there (constants, for one).
    """
    if not R > 0:
        raise BoolSpecError(f"radius must be positive, got {R}")
    st = _stats(f)
    lhs = st.cardinality / (1 << st.n)
    term1 = st.spectral_support * math.sqrt(R / 3) * math.sqrt(st.energy / 8.0 ** st.n)
    term2 = float(st.total_influence) / (4 * R)
    return TruncationBound(lhs, term1, term2, lhs <= term1 + term2)


class WeightSum(NamedTuple):
    sum: Fraction
    bound: Fraction
    holds: bool


def weight_sum(R) -> WeightSum:
    """sum_{s=1}^{floor R} (1 - s/R)^2 against R/3, in exact rationals."""
    r = Fraction(R)
    if r <= 0:
        raise BoolSpecError(f"radius must be positive, got {R}")
    total = sum(((1 - Fraction(s) / r) ** 2 for s in range(1, math.floor(r) + 1)), Fraction(0))
    return WeightSum(total, r / 3, total <= r / 3)


class CauchyStep(NamedTuple):
    left: Fraction  # sum_{1<=|S|<=R} (1 - |S|/R) fhat(S)^2
    weights_sq: Fraction  # sum over sets S of (1 - |S|/R)^2
    fourth: Fraction  # sum_S fhat(S)^4
    level_weights_sq: Fraction  # same weights summed over levels s, as in weight_sum
    holds: bool
    holds_by_level: bool


def cauchy_step(f, R) -> CauchyStep:
    """Both sides of the Cauchy-Schwarz step, squared and exact.

    ``holds`` compares against the weights summed over sets S (the
    Cauchy-Schwarz form); ``holds_by_level`` uses the per-level sum from
    ``weight_sum`` and is a report only.
    """
    r = Fraction(R)
    if r <= 0:
        raise BoolSpecError(f"radius must be positive, got {R}")
    st = _stats(f)
    scale = Fraction(1, 1 << (2 * st.n))
    left = Fraction(0)
    w_sets = Fraction(0)
    w_levels = Fraction(0)
    for j in range(1, min(math.floor(r), st.n) + 1):
        w = 1 - Fraction(j) / r
        left += w * st.level_weights[j] * scale
        w_sets += w * w * math.comb(st.n, j)
        w_levels += w * w
    fourth = Fraction(st.fourth_moment, 1 << (4 * st.n))
    return CauchyStep(left, w_sets, fourth, w_levels,
                      left * left <= w_sets * fourth,
                      left * left <= w_levels * fourth)


def cauchy_step_check(f, R) -> bool:
    return cauchy_step(f, R).holds


def final_step_sides(f) -> tuple[float, float]:
    """(2 I / R*)^3 2^{3n} and 128 E |supp fhat|^2 I / 3 at the optimal radius."""
    st = _stats(f)
    R = optimal_radius(st)
    i = float(st.total_influence)
    left = (2 * i / R) ** 3 * 8.0 ** st.n
    right = 128 * st.energy * st.spectral_support ** 2 * i / 3
    return left, right


@dataclass(frozen=True)
class CorollaryReport:
    eta: float
    exponent: float
    implied_constant: float
    in_range: bool
    size_ratio: float  # n / |A|
    chain_holds: bool | None  # checked only when in_range


def corollary_report(f) -> CorollaryReport:
    """Solve E(A) = |A|^{2+eta} / n for eta and report the support-size
    exponent 2/(1-eta) with its empirical constant."""
    st = _stats(f)
    if st.cardinality <= 1:
        raise BoolSpecError("corollary needs |A| >= 2")
    if st.degenerate:
        raise BoolSpecError("degenerate: zero influence")
    eta = math.log(st.n * st.energy) / math.log(st.cardinality) - 2
    exponent = 2 / (1 - eta) if eta != 1 else math.inf
    try:
        log_const = math.log(st.cardinality) - exponent * math.log(st.spectral_support)
        implied = math.exp(log_const)
    except (OverflowError, ValueError):
        implied = math.inf if exponent < 0 else 0.0
    in_range = 0 < eta < 1
    chain = None
    if in_range:
        # |A|^3 <= (128/3) E I |supp fhat|^2 with I <= n
        chain = (theorem_comparison(st).holds
                 and st.influence_total <= st.n << st.n
                 and 3 * st.cardinality ** 3 <= 128 * st.energy * st.n * st.spectral_support ** 2)
    return CorollaryReport(eta, exponent, implied, in_range, st.n / st.cardinality, chain)
