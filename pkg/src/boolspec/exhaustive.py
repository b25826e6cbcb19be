"""Exhaustive (n <= 4) and sampled verification over truth tables."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import BoolSpecError, InternalCheckError, butterfly, check_dimension, power_sum
from .prng import SplitMix64, derive_seed

MAX_EXHAUSTIVE_N = 4
CHUNK = 1 << 14


@dataclass
class ExhaustiveSummary:
    n: int
    mode: str = "exhaustive"
    functions_checked: int = 0
    constant_functions: int = 0
    violations: int = 0
    violation_tables: list[int] = field(default_factory=list)
    equality_cases: list[int] = field(default_factory=list)
    classical_violations: int = 0
    classical_violation_tables: list[int] = field(default_factory=list)
    classical_equality_count: int = 0
    classical_equality_singletons: int = 0
    classical_equality_constants: int = 0
    # best rhs/lhs over non-constant f, as a reduced fraction
    min_ratio: Fraction | None = None
    argmin_tables: list[int] = field(default_factory=list)
    # same restricted to |A| >= 2 (the search objective's domain)
    min_ratio_multi: Fraction | None = None
    argmin_multi_tables: list[int] = field(default_factory=list)

    def merge(self, other: ExhaustiveSummary) -> ExhaustiveSummary:
        """Combine two chunk summaries; associative and commutative."""
        if (self.n, self.mode) != (other.n, other.mode):
            raise ValueError("cannot merge summaries of different runs")
        out = ExhaustiveSummary(self.n, self.mode)
        for name in ("functions_checked", "constant_functions", "violations",
                     "classical_violations", "classical_equality_count",
                     "classical_equality_singletons", "classical_equality_constants"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        for name in ("violation_tables", "equality_cases", "classical_violation_tables"):
            setattr(out, name, sorted(getattr(self, name) + getattr(other, name)))
        out.min_ratio, out.argmin_tables = _merge_min(
            self.min_ratio, self.argmin_tables, other.min_ratio, other.argmin_tables)
        out.min_ratio_multi, out.argmin_multi_tables = _merge_min(
            self.min_ratio_multi, self.argmin_multi_tables,
            other.min_ratio_multi, other.argmin_multi_tables)
        return out


def _merge_min(r1, t1, r2, t2):
    if r1 is None:
        return r2, list(t2)
    if r2 is None or r1 < r2:
        return r1, list(t1)
    if r2 < r1:
        return r2, list(t2)
    return r1, sorted(t1 + t2)


def table_bits(n: int, tables: np.ndarray) -> np.ndarray:
    """Unpack truth-table integers (< 2^64) into a (count, 2^n) 0/1 matrix."""
    shifts = np.arange(1 << n, dtype=np.uint64)
    return ((tables.astype(np.uint64)[:, None] >> shifts) & np.uint64(1)).astype(np.int64)


def batch_statistics(n: int, bits: np.ndarray):
    """|A|, E(A), D and |supp fhat| for each row of a 0/1 matrix."""
    k = butterfly(bits)
    card = bits.sum(axis=1)
    if 5 * n < 62:
        fourth = (k ** 4).sum(axis=1)
    else:
        fourth = np.array([power_sum(row, 4) for row in k], dtype=object)
    if np.any(fourth % (1 << n)):
        raise InternalCheckError("spectral energy not divisible by 2^n")
    energy = fourth >> n
    d_total = np.zeros(bits.shape[0], dtype=np.int64)
    for i in range(n):
        h = 1 << i
        v = bits.reshape(bits.shape[0], -1, 2, h)
        d_total += 2 * np.count_nonzero(v[:, :, 0, :] != v[:, :, 1, :], axis=(1, 2))
    supp = np.count_nonzero(k, axis=1)
    return card, energy, d_total, supp


def summarize(n: int, tables: np.ndarray, bits: np.ndarray, mode: str) -> ExhaustiveSummary:
    size = 1 << n
    card, energy, d_total, supp = batch_statistics(n, bits)
    out = ExhaustiveSummary(n, mode, functions_checked=int(tables.size))

    constant = (card == 0) | (card == size)
    out.constant_functions = int(constant.sum())
    live = ~constant
    # products stay below 2^40 for n <= 4; sampled mode reaches 2^{8n+7}, so go to Python ints there
    if n <= MAX_EXHAUSTIVE_N:
        lhs = 3 * card ** 3 * size
        rhs = 128 * energy * d_total * supp ** 2
    else:
        lhs = np.array([3 * int(c) ** 3 * size for c in card], dtype=object)
        rhs = np.array([128 * int(e) * int(d) * int(s) ** 2
                        for e, d, s in zip(energy, d_total, supp)], dtype=object)

    bad = live & (lhs > rhs)
    out.violations = int(bad.sum())
    out.violation_tables = [int(t) for t in tables[bad]]
    out.equality_cases = [int(t) for t in tables[live & (lhs == rhs)]]

    nonzero = card > 0
    cl = card * supp
    out.classical_violations = int((nonzero & (cl < size)).sum())
    out.classical_violation_tables = [int(t) for t in tables[nonzero & (cl < size)]]
    eq = nonzero & (cl == size)
    out.classical_equality_count = int(eq.sum())
    out.classical_equality_singletons = int((eq & (card == 1)).sum())
    out.classical_equality_constants = int((eq & (card == size)).sum())

    out.min_ratio, out.argmin_tables = _min_ratio(tables, lhs, rhs, live)
    out.min_ratio_multi, out.argmin_multi_tables = _min_ratio(tables, lhs, rhs, live & (card >= 2))
    return out


def _min_ratio(tables, lhs, rhs, mask):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None, []
    ratios = {}
    for i in idx.tolist():
        ratios.setdefault(Fraction(int(rhs[i]), int(lhs[i])), []).append(int(tables[i]))
    best = min(ratios)
    return best, sorted(ratios[best])


def _chunk(n: int, start: int, stop: int) -> ExhaustiveSummary:
    tables = np.arange(start, stop, dtype=np.int64)
    return summarize(n, tables, table_bits(n, tables), "exhaustive")


def enumerate_all(n: int, workers: int = 1) -> ExhaustiveSummary:
    """Check every truth table on n <= 4 variables.

    Tables are processed in contiguous integer ranges; ``workers > 1``
    farms the ranges out to processes. The merged summary does not
    depend on the chunking.
    """
    check_dimension(n)
    if n > MAX_EXHAUSTIVE_N:
        raise BoolSpecError(f"n={n} too large for full enumeration; use sampled mode")
    total = 1 << (1 << n)
    bounds = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk, [n] * len(bounds), *zip(*bounds)))
    else:
        parts = [_chunk(n, a, b) for a, b in bounds]
    result = parts[0]
    for part in parts[1:]:
        result = result.merge(part)
    return result


def sampled(n: int, count: int, seed: int) -> ExhaustiveSummary:
    """Same assertions as ``enumerate_all`` on ``count`` seeded random tables.

    Table j is drawn from the stream seeded by derive_seed(seed, j); the
    top bit of each output decides one entry.
    """
    check_dimension(n)
    if count < 1:
        raise BoolSpecError("sample count must be positive")
    rows = max(1, min(256, (1 << 22) >> n))
    parts = []
    for start in range(0, count, rows):
        stop = min(start + rows, count)
        bits = np.empty((stop - start, 1 << n), dtype=np.int64)
        for j in range(start, stop):
            u = SplitMix64(derive_seed(seed, j)).u64_array(1 << n)
            bits[j - start] = (u >> np.uint64(63)).astype(np.int64)
        tables = np.empty(stop - start, dtype=object)
        tables[:] = [int.from_bytes(np.packbits(row.astype(bool), bitorder="little").tobytes(),
                                    "little") for row in bits]
        parts.append(summarize(n, tables, bits, "sampled"))
    result = parts[0]
    for part in parts[1:]:
        result = result.merge(part)
    return result
