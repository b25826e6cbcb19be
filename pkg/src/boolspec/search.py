"""Local search for sets that make the support inequality tight.

The objective is the exact pair ``(128 E D s^2, 3 |A|^3 2^n)``; smaller
ratio means tighter. States are compared by cross-multiplication; floats
appear only in the annealing acceptance test and in trace records.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import BoolSpecError, BooleanFunction, PointSet, butterfly, check_dimension, from_points
from .generators import GeneratorSpec, generate
from .prng import SplitMix64, derive_seed
from .stats import influence_counts
from .uncertainty import TheoremReport, theorem_check

DRIFT_GUARD = 1024

Objective = tuple[int, int] | None  # None encodes +infinity


def objective(f: BooleanFunction) -> Objective:
    """Exact (rhs, lhs) pair of the inequality, or None for degenerate
    states (constant f or |A| < 2)."""
    if f.cardinality < 2 or f.is_constant():
        return None
    rep = theorem_check(f)
    return rep.comparison.rhs, rep.comparison.lhs


def better(a: Objective, b: Objective) -> bool:
    """True iff objective a is strictly smaller than b."""
    if a is None:
        return False
    if b is None:
        return True
    return a[0] * b[1] < b[0] * a[1]


def objective_float(obj: Objective) -> float:
    return math.inf if obj is None else obj[0] / obj[1]


def log_ratio(obj: Objective) -> float:
    return math.log(obj[0]) - math.log(obj[1])


class SearchState:
    """Mutable set with incrementally maintained statistics.

    Tracks |A|, the disagreement counts d_i, the representation counts
    r(s), the energy sum r(s)^2 and the integer spectrum.
    """

    def __init__(self, points: PointSet):
        self.n = points.n
        self.bits = np.zeros(1 << self.n, dtype=np.int8)
        self.bits[points.points] = 1
        self._xs = np.arange(1 << self.n, dtype=np.int64)
        self._units = np.left_shift(1, np.arange(self.n, dtype=np.int64))
        self.recompute()

    def recompute(self):
        f = self.function()
        self.cardinality = f.cardinality
        self.d = np.array(influence_counts(f).d, dtype=np.int64)
        pts = np.flatnonzero(self.bits)
        self.r = np.zeros(1 << self.n, dtype=np.int64)
        if pts.size:
            for start in range(0, pts.size, 1024):
                block = pts[start:start + 1024, None] ^ pts[None, :]
                self.r += np.bincount(block.ravel(), minlength=1 << self.n)
        self.energy = int(np.dot(self.r, self.r))
        self.coeffs = butterfly(self.bits)

    def function(self) -> BooleanFunction:
        return BooleanFunction.from_bits(self.bits)

    def points(self) -> PointSet:
        return PointSet(self.n, np.flatnonzero(self.bits))

    @property
    def influence_total(self) -> int:
        return int(self.d.sum())

    @property
    def spectral_support(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def flip(self, x: int):
        """Toggle membership of x; O(|A|) for |A|, d and E, O(2^n) for the spectrum."""
        adding = not self.bits[x]
        others = np.flatnonzero(self.bits)
        if not adding:
            others = others[others != x]
        # pairs (x, a) and (a, x) for a in the rest of the set, plus (x, x)
        idx = others ^ x
        sign = 1 if adding else -1
        old = self.r[idx]
        self.r[idx] = old + 2 * sign
        self.energy += int(np.sum(4 * sign * old + 4))
        r0 = int(self.r[0])
        self.r[0] = r0 + sign
        self.energy += 2 * sign * r0 + 1

        neighbours = x ^ self._units
        self.d += np.where(self.bits[neighbours] != self.bits[x], -2, 2)

        chi = 1 - 2 * (np.bitwise_count(self._xs & x) & 1).astype(np.int64)
        self.coeffs += sign * chi
        self.bits[x] = 1 if adding else 0
        self.cardinality += sign

    def objective(self) -> Objective:
        size = 1 << self.n
        if self.cardinality < 2 or self.cardinality == size:
            return None
        d = self.influence_total
        s = self.spectral_support
        return 128 * self.energy * d * s * s, 3 * self.cardinality ** 3 * size

    def snapshot(self) -> tuple[int, int, int]:
        return self.cardinality, self.influence_total, self.energy


def step(state: PointSet, rng: SplitMix64) -> PointSet:
    """Flip membership of one uniformly chosen point."""
    x = rng.randbelow(1 << state.n)
    pts = state.points
    if x in state:
        return PointSet(state.n, pts[pts != x])
    return PointSet(state.n, np.append(pts, x))


@dataclass(frozen=True)
class SearchConfig:
    n: int
    initial: GeneratorSpec
    max_iterations: int = 500
    restarts: int = 1
    annealing: bool = False
    initial_temperature: float = 1.0
    cooling: float = 0.995
    seed: int = 0
    objective: str = "tightness"

    def __post_init__(self):
        check_dimension(self.n)
        if self.initial.n != self.n:
            raise BoolSpecError("initial generator dimension differs from search dimension")
        if self.max_iterations < 0 or self.restarts < 1:
            raise BoolSpecError("max_iterations must be >= 0 and restarts >= 1")
        if self.objective != "tightness":
            raise BoolSpecError(f"unknown objective {self.objective!r}")
        if self.annealing:
            if not self.initial_temperature > 0:
                raise BoolSpecError("annealing temperature must be positive")
            if not 0 < self.cooling < 1:
                raise BoolSpecError("cooling factor must lie in (0, 1)")


@dataclass(frozen=True)
class TraceRecord:
    restart: int
    iteration: int
    cardinality: int
    objective_float: float
    accepted: bool


@dataclass
class SearchTrace:
    records: list[TraceRecord] = field(default_factory=list)
    best: PointSet | None = None
    best_objective: Objective = None
    best_restart: int = -1

    @property
    def best_report(self) -> TheoremReport | None:
        if self.best is None or len(self.best) == 0:
            return None
        return theorem_check(from_points(self.best.n, self.best))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["restart", "iteration", "cardinality", "objective_float", "accepted"])
        for rec in self.records:
            w.writerow([rec.restart, rec.iteration, rec.cardinality,
                        repr(rec.objective_float), int(rec.accepted)])
        return buf.getvalue()


def _initial_points(config: SearchConfig, restart: int) -> PointSet:
    spec = config.initial
    if spec.kind in ("random_density", "sidon_greedy"):
        spec = spec.with_seed(derive_seed(spec.seed, restart))
    pts, _ = generate(spec)
    return pts


def run_restart(config: SearchConfig, restart: int, check_every: int = DRIFT_GUARD) -> SearchTrace:
    """One hill-climbing / annealing chain.

    ``check_every`` forces a full recomputation after that many accepted
    flips and asserts the incremental statistics matched.
    """
    rng = SplitMix64(derive_seed(config.seed, restart))
    state = SearchState(_initial_points(config, restart))
    size = 1 << config.n
    current = state.objective()
    trace = SearchTrace()
    trace.records.append(TraceRecord(restart, 0, state.cardinality, objective_float(current), True))
    trace.best, trace.best_objective, trace.best_restart = state.points(), current, restart
    temperature = config.initial_temperature
    accepted_flips = 0

    for it in range(1, config.max_iterations + 1):
        x = rng.randbelow(size)
        state.flip(x)
        cand = state.objective()
        if better(cand, current):
            accept = True
        elif config.annealing and cand is not None and current is not None:
            # Metropolis rule; ties (delta == 0) pass, so annealing crosses plateaus
            delta = log_ratio(cand) - log_ratio(current)
            accept = rng.random() < math.exp(-delta / temperature)
        else:
            accept = False
        if accept:
            current = cand
            accepted_flips += 1
            if accepted_flips % check_every == 0:
                expect = state.snapshot(), state.coeffs.copy()
                state.recompute()
                if expect[0] != state.snapshot() or not np.array_equal(expect[1], state.coeffs):
                    raise AssertionError(
                        f"incremental statistics drifted: {expect[0]} vs {state.snapshot()}")
            if better(current, trace.best_objective):
                trace.best, trace.best_objective = state.points(), current
        else:
            state.flip(x)
        trace.records.append(TraceRecord(restart, it, state.cardinality,
                                         objective_float(current), accept))
        if config.annealing:
            temperature *= config.cooling
    return trace


def _run_one(args):
    config, restart, check_every = args
    return run_restart(config, restart, check_every)


def merge_traces(traces: list[SearchTrace]) -> SearchTrace:
    """Concatenate records in restart order; keep the minimum-objective best
    (lowest restart index on ties)."""
    out = SearchTrace()
    for t in sorted(traces, key=lambda t: t.best_restart):
        out.records.extend(t.records)
        if out.best is None or better(t.best_objective, out.best_objective):
            out.best, out.best_objective, out.best_restart = t.best, t.best_objective, t.best_restart
    return out


def run(config: SearchConfig, workers: int = 1, check_every: int = DRIFT_GUARD) -> SearchTrace:
    """Deterministic given the config: restart r uses derive_seed(seed, r)."""
    jobs = [(config, r, check_every) for r in range(config.restarts)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(_run_one, jobs))
    else:
        traces = [_run_one(j) for j in jobs]
    return merge_traces(traces)
