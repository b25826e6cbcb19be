"""Exact representation of Boolean functions on F_2^n and the integer
Walsh-Hadamard transform.

Index convention: coordinate i (1-based) of a vector is bit i-1 of its
integer index; a subset S of [n] is encoded as the analogous bitmask.
Fourier data is stored unnormalized, ``k_S = 2^n * fhat(S)``, so every
identity is an integer equation.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_MAX_N = 24


class BoolSpecError(ValueError):
    """Invalid input to a boolspec operation."""


class InternalCheckError(RuntimeError):
    """An exact identity failed; indicates an implementation bug."""


def max_n() -> int:
    """Largest supported dimension (``BOOLSPEC_MAX_N`` overrides the default)."""
    env = os.environ.get("BOOLSPEC_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise BoolSpecError(f"BOOLSPEC_MAX_N must be an integer, got {env!r}")
    return DEFAULT_MAX_N


def check_dimension(n: int) -> int:
    limit = max_n()
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= limit:
        raise BoolSpecError(f"dimension n={n} outside [1, {limit}]")
    return int(n)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PointSet:
    """Sorted, duplicate-free subset of F_2^n."""

    n: int
    points: np.ndarray

    def __post_init__(self):
        check_dimension(self.n)
        pts = np.unique(np.asarray(self.points, dtype=np.int64))
        if pts.size and (pts[0] < 0 or pts[-1] >= 1 << self.n):
            raise BoolSpecError(f"point out of range for n={self.n}")
        object.__setattr__(self, "points", _readonly(pts))

    def __len__(self) -> int:
        return int(self.points.size)

    def __iter__(self):
        return iter(self.points.tolist())

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.points, x)
        return bool(i < self.points.size and self.points[i] == x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.points, other.points)

    def __hash__(self) -> int:
        return hash((self.n, self.points.tobytes()))

    def __repr__(self) -> str:
        body = self.points.tolist() if len(self) <= 16 else f"<{len(self)} points>"
        return f"PointSet(n={self.n}, points={body})"

    def tolist(self) -> list[int]:
        return self.points.tolist()


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Indicator function of a subset A of F_2^n.

    ``table`` holds the packed truth table: bit x lives at byte x // 8,
    bit x % 8 (little-endian within each byte), matching the truth-table
    file format.
    """

    n: int
    table: bytes

    def __post_init__(self):
        check_dimension(self.n)
        nbytes = max(1, (1 << self.n) // 8)
        if len(self.table) != nbytes:
            raise BoolSpecError(
                f"truth table for n={self.n} needs {nbytes} bytes, got {len(self.table)}")
        if self.n < 3 and self.table[0] >> (1 << self.n):
            raise BoolSpecError("padding bits of truth table must be zero")
        object.__setattr__(self, "table", bytes(self.table))

    @classmethod
    def from_bits(cls, bits) -> BooleanFunction:
        bits = np.asarray(bits)
        size = bits.size
        n = size.bit_length() - 1
        if size < 2 or 1 << n != size:
            raise BoolSpecError(f"truth table length {size} is not a power of two >= 2")
        if bits.dtype != bool and np.any((bits != 0) & (bits != 1)):
            raise BoolSpecError("truth table entries must be 0 or 1")
        packed = np.packbits(bits.astype(bool), bitorder="little")
        return cls(n, packed.tobytes())

    @classmethod
    def from_int(cls, n: int, value: int) -> BooleanFunction:
        """Function whose truth table, read as an integer, is ``value``."""
        check_dimension(n)
        if not 0 <= value < 1 << (1 << n):
            raise BoolSpecError(f"truth-table integer out of range for n={n}")
        nbytes = max(1, (1 << n) // 8)
        return cls(n, value.to_bytes(nbytes, "little"))

    @cached_property
    def bits(self) -> np.ndarray:
        """Unpacked 0/1 values as a read-only uint8 array of length 2^n."""
        raw = np.frombuffer(self.table, dtype=np.uint8)
        return _readonly(np.unpackbits(raw, bitorder="little")[: 1 << self.n])

    @property
    def size(self) -> int:
        return 1 << self.n

    @cached_property
    def cardinality(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_constant(self) -> bool:
        return self.cardinality in (0, self.size)

    def to_int(self) -> int:
        return int.from_bytes(self.table, "little")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.n, self.table))

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, |A|={self.cardinality})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Unnormalized Fourier coefficients ``coeffs[S] = k_S``."""

    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_dimension(self.n)
        c = np.array(self.coeffs, dtype=np.int64)
        if c.shape != (1 << self.n,):
            raise BoolSpecError(f"spectrum for n={self.n} needs {1 << self.n} coefficients")
        object.__setattr__(self, "coeffs", _readonly(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    def tolist(self) -> list[int]:
        return self.coeffs.tolist()


def butterfly(values: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard butterfly along the last axis.

    Returns a new int64 array; the input is left untouched. Works on
    batches of shape ``(..., 2^n)``.
    """
    a = np.array(values, dtype=np.int64)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] += hi
        np.subtract(lo, hi, out=hi)
        h *= 2
    return a


def parity_table(n: int, x: int) -> np.ndarray:
    """``parity(S & x)`` for every mask S, as uint8."""
    return (np.bitwise_count(np.arange(1 << n, dtype=np.int64) & x) & 1).astype(np.uint8)


def popcounts(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)


def from_points(n: int, pts) -> BooleanFunction:
    """Indicator function of ``pts`` (a PointSet or any iterable of ints)."""
    check_dimension(n)
    if isinstance(pts, PointSet):
        if pts.n != n:
            raise BoolSpecError(f"point set has n={pts.n}, expected {n}")
        idx = pts.points
    else:
        idx = np.asarray(list(pts) if not isinstance(pts, np.ndarray) else pts, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= 1 << n):
            raise BoolSpecError(f"point out of range for n={n}")
    bits = np.zeros(1 << n, dtype=bool)
    bits[idx] = True
    return BooleanFunction.from_bits(bits)


def support(f: BooleanFunction) -> PointSet:
    return PointSet(f.n, np.flatnonzero(f.bits))


def wht(f: BooleanFunction) -> Spectrum:
    """Integer transform ``k_S = sum_x f(x) (-1)^{parity(S & x)}``."""
    return Spectrum(f.n, butterfly(f.bits))


def inverse_wht(s: Spectrum) -> BooleanFunction:
    """Recover f from its spectrum; rejects spectra of non-Boolean functions."""
    scaled = butterfly(s.coeffs)
    size = 1 << s.n
    ok = (scaled == 0) | (scaled == size)
    if not ok.all():
        x = int(np.flatnonzero(~ok)[0])
        raise BoolSpecError(
            f"not a Boolean spectrum: 2^n*f({x}) = {int(scaled[x])} is not 0 or {size}")
    return BooleanFunction.from_bits(scaled == size)


def spectral_support(s: Spectrum) -> PointSet:
    return PointSet(s.n, np.flatnonzero(s.coeffs))


def xor_convolve(a, b) -> np.ndarray:
    """``c(x) = sum_y a(y) b(x ^ y)`` by direct double sum over the support of a."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise BoolSpecError(f"dimension mismatch: {a.shape} vs {b.shape}")
    idx = np.arange(a.size, dtype=np.int64)
    out = np.zeros(a.size, dtype=np.int64)
    for y in np.flatnonzero(a).tolist():
        out += a[y] * b[idx ^ y]
    return out


def counting_convolution(f, g) -> np.ndarray:
    """Counting convolution ``2^n (f * g)(x)``; operands may be Boolean
    functions or integer arrays of equal length."""
    fa = f.bits if isinstance(f, BooleanFunction) else f
    ga = g.bits if isinstance(g, BooleanFunction) else g
    if isinstance(f, BooleanFunction) and isinstance(g, BooleanFunction) and f.n != g.n:
        raise BoolSpecError(f"dimension mismatch: n={f.n} vs n={g.n}")
    return xor_convolve(fa, ga)


def power_sum(values: np.ndarray, p: int) -> int:
    """Exact ``sum(v**p)``; falls back to Python integers past int64 range."""
    v = np.asarray(values, dtype=np.int64)
    if v.size == 0:
        return 0
    peak = int(np.abs(v).max())
    if peak == 0:
        return 0
    if (peak ** p) * v.size < 1 << 62:
        return int(np.sum(v ** p))
    nz = v[v != 0]
    if p % 2 == 0 and 2 * peak.bit_length() <= 62:
        sq = (nz * nz).tolist()
        half = p // 2
        return sum(x ** half for x in sq)
    return sum(x ** p for x in nz.tolist())
