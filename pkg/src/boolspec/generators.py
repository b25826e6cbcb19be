"""Structured and random subsets of F_2^n."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import BoolSpecError, PointSet, check_dimension
from .prng import SplitMix64

KINDS = ("coordinate_subspace", "affine_subspace", "hamming_ball", "random_density", "sidon_greedy")


def coordinate_subspace(n: int, k: int) -> PointSet:
    """Points whose top k coordinates are zero (codimension k)."""
    check_dimension(n)
    if not 0 <= k <= n:
        raise BoolSpecError(f"codimension k={k} outside [0, {n}]")
    return PointSet(n, np.arange(1 << (n - k), dtype=np.int64))


def gf2_rank(vectors) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                rank += 1
                break
            v ^= pivots[top]
    return rank


def affine_subspace(n: int, basis, shift: int = 0) -> PointSet:
    """span(basis) + shift."""
    check_dimension(n)
    basis = [int(b) for b in basis]
    for v in basis + [shift]:
        if not 0 <= v < 1 << n:
            raise BoolSpecError(f"vector {v} out of range for n={n}")
    if gf2_rank(basis) != len(basis):
        raise BoolSpecError("basis vectors are linearly dependent over F_2")
    pts = np.array([shift], dtype=np.int64)
    for b in basis:
        pts = np.concatenate([pts, pts ^ b])
    return PointSet(n, pts)


def hamming_ball(n: int, center: int, radius: int) -> PointSet:
    check_dimension(n)
    if not 0 <= radius <= n:
        raise BoolSpecError(f"radius {radius} outside [0, {n}]")
    if not 0 <= center < 1 << n:
        raise BoolSpecError(f"center {center} out of range for n={n}")
    xs = np.arange(1 << n, dtype=np.int64)
    return PointSet(n, xs[np.bitwise_count(xs ^ center) <= radius])


def random_density(n: int, p: float, seed: int) -> PointSet:
    """Include each x independently with probability p.

    Draw x uses the (x+1)-th output of a SplitMix64 stream seeded with
    ``seed``; x is included iff ``(u >> 11) / 2^53 < p``.
    """
    check_dimension(n)
    if not 0.0 <= p <= 1.0:
        raise BoolSpecError(f"density p={p} outside [0, 1]")
    u = SplitMix64(seed).random_array(1 << n)
    return PointSet(n, np.flatnonzero(u < p))


def random_order(n: int, rng: SplitMix64) -> np.ndarray:
    """Seeded random permutation of F_2^n (stable sort on random keys)."""
    keys = rng.u64_array(1 << n)
    return np.argsort(keys, kind="stable")


def sidon_greedy(n: int, m: int, seed: int) -> tuple[PointSet, bool]:
    """Greedy Sidon set of target size m; candidates scanned in seeded order.

    Returns the set and whether the target size was reached. A candidate x
    is admissible iff it is not a ^ b ^ c for any a, b, c already chosen,
    which keeps all pairwise XORs of distinct elements distinct.
    """
    check_dimension(n)
    if m < 2:
        raise BoolSpecError("sidon target size m must be >= 2")
    size = 1 << n
    forbidden = np.zeros(size, dtype=bool)
    sums = np.zeros(size, dtype=bool)  # pairwise XORs of chosen points, incl. 0
    sums[0] = True
    chosen: list[int] = []
    order = random_order(n, SplitMix64(seed))
    for x in order.tolist():
        if forbidden[x]:
            continue
        forbidden[np.flatnonzero(sums) ^ x] = True
        chosen.append(x)
        sums[np.array(chosen, dtype=np.int64) ^ x] = True
        if len(chosen) == m:
            break
    return PointSet(n, chosen), len(chosen) == m


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    k: int | None = None
    basis: tuple[int, ...] = ()
    shift: int = 0
    center: int = 0
    radius: int | None = None
    p: float | None = None
    m: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BoolSpecError(f"unknown generator kind {self.kind!r}; choose from {KINDS}")
        required = {
            "coordinate_subspace": ("k",),
            "hamming_ball": ("radius",),
            "random_density": ("p",),
            "sidon_greedy": ("m",),
        }.get(self.kind, ())
        for name in required:
            if getattr(self, name) is None:
                raise BoolSpecError(f"{self.kind} requires parameter {name}")

    def with_seed(self, seed: int) -> GeneratorSpec:
        return replace(self, seed=seed)

    def describe(self) -> str:
        if self.kind == "coordinate_subspace":
            return f"k={self.k}"
        if self.kind == "affine_subspace":
            return f"dim={len(self.basis)}"
        if self.kind == "hamming_ball":
            return f"radius={self.radius}"
        if self.kind == "random_density":
            return f"p={self.p}"
        return f"m={self.m}"


def generate(spec: GeneratorSpec) -> tuple[PointSet, bool]:
    """Build the set described by ``spec``; the flag is False only for an
    unreached Sidon target."""
    if spec.kind == "coordinate_subspace":
        return coordinate_subspace(spec.n, spec.k), True
    if spec.kind == "affine_subspace":
        return affine_subspace(spec.n, spec.basis, spec.shift), True
    if spec.kind == "hamming_ball":
        return hamming_ball(spec.n, spec.center, spec.radius), True
    if spec.kind == "random_density":
        return random_density(spec.n, spec.p, spec.seed), True
    return sidon_greedy(spec.n, spec.m, spec.seed)


def ball_size(n: int, radius: int) -> int:
    return sum(math.comb(n, j) for j in range(radius + 1))
