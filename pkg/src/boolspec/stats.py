"""Additive energy and influence, each by independent routes."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    BooleanFunction,
    InternalCheckError,
    PointSet,
    Spectrum,
    from_points,
    popcounts,
    power_sum,
    wht,
)

ALGORITHMS = ("naive", "representation", "spectral")


@dataclass(frozen=True)
class EnergyValue:
    value: int
    algorithm: str

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class InfluenceProfile:
    """Per-coordinate disagreement counts ``d[i] = #{x : f(x) != f(x ^ e_(i+1))}``."""

    n: int
    d: tuple[int, ...]

    @property
    def total(self) -> int:
        """D = sum of d_i, i.e. total influence times 2^n."""
        return sum(self.d)

    def influence(self, i: int) -> Fraction:
        """Influence of coordinate i (1-based)."""
        return Fraction(self.d[i - 1], 1 << self.n)

    @property
    def total_influence(self) -> Fraction:
        return Fraction(self.total, 1 << self.n)


def _as_points(A) -> PointSet:
    if isinstance(A, BooleanFunction):
        return PointSet(A.n, np.flatnonzero(A.bits))
    return A


def energy_naive(A) -> EnergyValue:
    """Count triples (a1, a2, a3) in A^3 whose XOR lies in A.

    O(|A|^3) membership tests; this is the ground-truth oracle.
    """
    A = _as_points(A)
    pts = A.points
    if pts.size == 0:
        return EnergyValue(0, "naive")
    member = np.zeros(1 << A.n, dtype=np.int64)
    member[pts] = 1
    total = 0
    for a1 in pts.tolist():
        # every (a2, a3) for this a1, tested against the membership table
        total += int(member[(pts ^ a1)[:, None] ^ pts[None, :]].sum())
    return EnergyValue(total, "naive")


def representation_counts(A) -> np.ndarray | Counter:
    """r(s) = #{(a1, a2) in A^2 : a1 ^ a2 = s}.

    Returns a dense length-2^n array when |A|^2 exceeds 2^n, otherwise a
    Counter keyed by s.
    """
    A = _as_points(A)
    pts = A.points
    m = pts.size
    if m * m > 1 << A.n:
        r = np.zeros(1 << A.n, dtype=np.int64)
        rows = max(1, (1 << 22) // max(m, 1))
        for start in range(0, m, rows):
            block = pts[start:start + rows, None] ^ pts[None, :]
            r += np.bincount(block.ravel(), minlength=1 << A.n)
        return r
    return Counter((pts[:, None] ^ pts[None, :]).ravel().tolist())


def energy_representation(A) -> EnergyValue:
    """E(A) = sum_s r(s)^2."""
    r = representation_counts(A)
    if isinstance(r, Counter):
        return EnergyValue(sum(v * v for v in r.values()), "representation")
    return EnergyValue(power_sum(r, 2), "representation")


def energy_spectral(f) -> EnergyValue:
    """E(A) = (sum_S k_S^4) / 2^n."""
    if isinstance(f, PointSet):
        f = from_points(f.n, f)
    s = f if isinstance(f, Spectrum) else wht(f)
    fourth = power_sum(s.coeffs, 4)
    quotient, rem = divmod(fourth, 1 << s.n)
    if rem:
        raise InternalCheckError(
            f"spectral energy not divisible by 2^n: sum k^4 = {fourth}, n = {s.n}")
    return EnergyValue(quotient, "spectral")


def energy(A, algorithm: str = "spectral") -> EnergyValue:
    if algorithm == "naive":
        return energy_naive(A)
    if algorithm == "representation":
        return energy_representation(A)
    if algorithm == "spectral":
        return energy_spectral(A)
    raise ValueError(f"unknown energy algorithm {algorithm!r}")


def influence_counts(f: BooleanFunction) -> InfluenceProfile:
    """Disagreement counts along each direction via XOR of shifted tables."""
    bits = f.bits
    d = []
    for i in range(f.n):
        h = 1 << i
        v = bits.reshape(-1, 2, h)
        d.append(2 * int(np.count_nonzero(v[:, 0, :] != v[:, 1, :])))
    return InfluenceProfile(f.n, tuple(d))


def weighted_square_sum(s: Spectrum) -> int:
    """sum_S popcount(S) * k_S^2, exact."""
    k = s.coeffs
    nz = np.flatnonzero(k)
    w = popcounts(s.n)[nz]
    sq = k[nz] * k[nz]
    if sq.size and int(sq.max()) * s.n * sq.size >= 1 << 62:
        return sum(a * b for a, b in zip(w.tolist(), sq.tolist()))
    return int(np.sum(w * sq))


def total_influence_spectral(s: Spectrum) -> Fraction:
    """I(f) = 4 * sum_S |S| k_S^2 / 4^n."""
    return Fraction(4 * weighted_square_sum(s), 1 << (2 * s.n))


def squared_level_weights(s: Spectrum) -> list[int]:
    """W[j] = sum_{|S| = j} k_S^2 for j = 0..n."""
    return _bincount_exact(popcounts(s.n), s.coeffs * s.coeffs, s.n + 1)


def _bincount_exact(labels: np.ndarray, values: np.ndarray, length: int) -> list[int]:
    out = [0] * length
    if values.size and int(values.max()) * values.size < 1 << 62:
        sums = np.zeros(length, dtype=np.int64)
        np.add.at(sums, labels, values)
        return sums.tolist()
    for lab, val in zip(labels.tolist(), values.tolist()):
        out[lab] += val
    return out
