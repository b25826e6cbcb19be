"""Analysis reports and their lossless JSON / CSV encodings.

JSON conventions: exact integers are JSON integers below 2^63 and
decimal strings beyond; power-of-two rationals are
``{"num": ..., "log2_den": ...}``; other rationals ``{"num", "den"}``;
floats live only in ``*_float`` fields, with non-finite values spelled
``"inf"``, ``"-inf"`` or ``"nan"``; truth tables are lowercase hex of the
packed table.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import BooleanFunction, PointSet, from_points, wht
from .exhaustive import ExhaustiveSummary
from .search import SearchTrace
from .stats import ALGORITHMS, InfluenceProfile, energy, influence_counts, total_influence_spectral
from .uncertainty import (
    CorollaryReport,
    ExactComparison,
    TheoremReport,
    TruncationBound,
    cauchy_step,
    corollary_report,
    function_stats,
    theorem_check,
    truncation_bound,
    weight_sum,
)

SCHEMA_VERSION = "1"
INT64_MAX = (1 << 63) - 1


# -- scalar codecs ---------------------------------------------------------

def enc_int(v: int):
    v = int(v)
    return v if -INT64_MAX <= v <= INT64_MAX else str(v)


def dec_int(v) -> int:
    return int(v)


def enc_float(x: float | None):
    if x is None:
        return None
    if math.isfinite(x):
        return float(x)
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def dec_float(v) -> float | None:
    return None if v is None else float(v)


def enc_dyadic(q: Fraction) -> dict:
    den = q.denominator
    if den & (den - 1):
        raise ValueError(f"{q} does not have a power-of-two denominator")
    return {"num": enc_int(q.numerator), "log2_den": den.bit_length() - 1}


def dec_dyadic(d: dict) -> Fraction:
    return Fraction(dec_int(d["num"]), 1 << d["log2_den"])


def enc_fraction(q: Fraction | None):
    if q is None:
        return None
    return {"num": enc_int(q.numerator), "den": enc_int(q.denominator)}


def dec_fraction(d) -> Fraction | None:
    return None if d is None else Fraction(dec_int(d["num"]), dec_int(d["den"]))


def table_hex(n: int, t: int) -> str:
    return BooleanFunction.from_int(n, t).table.hex()


def hex_table(n: int, h: str) -> int:
    return BooleanFunction(n, bytes.fromhex(h)).to_int()


# -- structured codecs -----------------------------------------------------

def enc_comparison(c: ExactComparison) -> dict:
    return {"lhs": enc_int(c.lhs), "rhs": enc_int(c.rhs), "claim": c.claim,
            "relation": c.relation, "holds": c.holds, "ratio_float": enc_float(c.float_ratio)}


def dec_comparison(d: dict) -> ExactComparison:
    return ExactComparison(dec_int(d["lhs"]), dec_int(d["rhs"]), d["claim"])


def enc_theorem(r: TheoremReport, n: int) -> dict:
    return {
        "cardinality": enc_int(r.cardinality),
        "energy": enc_int(r.energy),
        "influence_numerator": enc_int(r.influence_numerator),
        "total_influence": enc_dyadic(Fraction(r.influence_numerator, 1 << n)),
        "spectral_support": enc_int(r.spectral_support),
        "comparison": enc_comparison(r.comparison),
        "degenerate": r.degenerate,
        "optimal_radius_float": enc_float(r.optimal_radius),
        "classical": enc_comparison(r.classical),
    }


def dec_theorem(d: dict) -> TheoremReport:
    return TheoremReport(
        cardinality=dec_int(d["cardinality"]),
        energy=dec_int(d["energy"]),
        influence_numerator=dec_int(d["influence_numerator"]),
        spectral_support=dec_int(d["spectral_support"]),
        comparison=dec_comparison(d["comparison"]),
        degenerate=d["degenerate"],
        optimal_radius=dec_float(d["optimal_radius_float"]),
        classical=dec_comparison(d["classical"]),
    )


def enc_corollary(c: CorollaryReport | None):
    if c is None:
        return None
    return {"eta_float": enc_float(c.eta), "exponent_float": enc_float(c.exponent),
            "implied_constant_float": enc_float(c.implied_constant), "in_range": c.in_range,
            "size_ratio_float": enc_float(c.size_ratio), "chain_holds": c.chain_holds}


def dec_corollary(d) -> CorollaryReport | None:
    if d is None:
        return None
    return CorollaryReport(dec_float(d["eta_float"]), dec_float(d["exponent_float"]),
                           dec_float(d["implied_constant_float"]), d["in_range"],
                           dec_float(d["size_ratio_float"]), d["chain_holds"])


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    cardinality: int
    energy: int
    influence: InfluenceProfile
    spectral_support: int
    theorem: TheoremReport | None
    corollary: CorollaryReport | None
    truncation: TruncationBound | None  # at the optimal radius
    weight_sum_holds: bool | None
    cauchy_holds: bool | None
    energy_by_algorithm: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def analyze(f: BooleanFunction, paranoid: bool = False) -> AnalysisReport:
    """All statistics and inequality verdicts for one function.

    ``paranoid`` adds the naive and representation energies and
    cross-checks them against the spectral value; it never changes the
    reported numbers.
    """
    spectrum = wht(f)
    st = function_stats(f, spectrum)
    warnings = []
    by_alg = {}
    if paranoid:
        by_alg = {alg: energy(f if alg != "spectral" else spectrum, alg).value
                  for alg in ALGORITHMS}
        if len(set(by_alg.values())) != 1:
            raise AssertionError(f"energy algorithms disagree: {by_alg}")
        if total_influence_spectral(spectrum) != st.total_influence:
            raise AssertionError("spectral and combinatorial influence disagree")
    theorem = corollary = trunc = None
    ws = cs = None
    if st.cardinality == 0:
        warnings.append("empty support: inequalities undefined")
    else:
        theorem = theorem_check(st)
        if theorem.degenerate:
            warnings.append("degenerate: constant function has zero influence")
        else:
            R = theorem.optimal_radius
            trunc = truncation_bound(st, R)
            ws = weight_sum(R).holds
            cs = cauchy_step(st, R).holds
            if st.cardinality >= 2:
                corollary = corollary_report(st)
    return AnalysisReport(
        n=f.n, cardinality=st.cardinality, energy=st.energy,
        influence=influence_counts(f), spectral_support=st.spectral_support,
        theorem=theorem, corollary=corollary, truncation=trunc,
        weight_sum_holds=ws, cauchy_holds=cs,
        energy_by_algorithm=by_alg, warnings=tuple(warnings))


def enc_analysis(r: AnalysisReport) -> dict:
    trunc = None
    if r.truncation is not None:
        t = r.truncation
        trunc = {"lhs_float": enc_float(t.lhs), "term1_float": enc_float(t.term1),
                 "term2_float": enc_float(t.term2), "holds": t.holds}
    return {
        "type": "analysis",
        "n": r.n,
        "cardinality": enc_int(r.cardinality),
        "energy": enc_int(r.energy),
        "energy_by_algorithm": {k: enc_int(v) for k, v in r.energy_by_algorithm.items()},
        "influence_counts": [enc_int(d) for d in r.influence.d],
        "influences": [enc_dyadic(r.influence.influence(i)) for i in range(1, r.n + 1)],
        "total_influence": enc_dyadic(r.influence.total_influence),
        "total_influence_float": float(r.influence.total_influence),
        "spectral_support": enc_int(r.spectral_support),
        "theorem": None if r.theorem is None else enc_theorem(r.theorem, r.n),
        "corollary": enc_corollary(r.corollary),
        "truncation_at_optimal_radius": trunc,
        "weight_sum_holds": r.weight_sum_holds,
        "cauchy_step_holds": r.cauchy_holds,
        "warnings": list(r.warnings),
    }


def dec_analysis(d: dict) -> AnalysisReport:
    t = d["truncation_at_optimal_radius"]
    trunc = None if t is None else TruncationBound(
        dec_float(t["lhs_float"]), dec_float(t["term1_float"]), dec_float(t["term2_float"]),
        t["holds"])
    return AnalysisReport(
        n=d["n"], cardinality=dec_int(d["cardinality"]), energy=dec_int(d["energy"]),
        influence=InfluenceProfile(d["n"], tuple(dec_int(x) for x in d["influence_counts"])),
        spectral_support=dec_int(d["spectral_support"]),
        theorem=None if d["theorem"] is None else dec_theorem(d["theorem"]),
        corollary=dec_corollary(d["corollary"]),
        truncation=trunc,
        weight_sum_holds=d["weight_sum_holds"],
        cauchy_holds=d["cauchy_step_holds"],
        energy_by_algorithm={k: dec_int(v) for k, v in d["energy_by_algorithm"].items()},
        warnings=tuple(d["warnings"]),
    )


CSV_FIELDS = ("n", "cardinality", "energy", "influence_numerator", "total_influence_float",
              "spectral_support", "theorem_lhs", "theorem_rhs", "theorem_relation",
              "ratio_float", "degenerate", "classical_lhs", "classical_rhs",
              "optimal_radius_float", "eta_float", "exponent_float",
              "implied_constant_float", "eta_in_range", "size_ratio_float")


def analysis_row(r: AnalysisReport) -> dict:
    th, co = r.theorem, r.corollary
    return {
        "n": r.n, "cardinality": r.cardinality, "energy": r.energy,
        "influence_numerator": r.influence.total,
        "total_influence_float": float(r.influence.total_influence),
        "spectral_support": r.spectral_support,
        "theorem_lhs": th.comparison.lhs if th else "",
        "theorem_rhs": th.comparison.rhs if th else "",
        "theorem_relation": th.comparison.relation if th else "",
        "ratio_float": th.comparison.float_ratio if th else "",
        "degenerate": int(th.degenerate) if th else "",
        "classical_lhs": th.classical.lhs if th else "",
        "classical_rhs": th.classical.rhs if th else "",
        "optimal_radius_float": th.optimal_radius if th and th.optimal_radius else "",
        "eta_float": co.eta if co else "",
        "exponent_float": co.exponent if co else "",
        "implied_constant_float": co.implied_constant if co else "",
        "eta_in_range": int(co.in_range) if co else "",
        "size_ratio_float": co.size_ratio if co else "",
    }


def enc_exhaustive(s: ExhaustiveSummary) -> dict:
    tab = lambda ts: [table_hex(s.n, t) for t in ts]  # noqa: E731
    return {
        "type": "exhaustive",
        "n": s.n,
        "mode": s.mode,
        "functions_checked": s.functions_checked,
        "constant_functions": s.constant_functions,
        "violations": s.violations,
        "violation_tables": tab(s.violation_tables),
        "equality_cases": tab(s.equality_cases),
        "classical_violations": s.classical_violations,
        "classical_violation_tables": tab(s.classical_violation_tables),
        "classical_equality_count": s.classical_equality_count,
        "classical_equality_singletons": s.classical_equality_singletons,
        "classical_equality_constants": s.classical_equality_constants,
        "min_ratio": enc_fraction(s.min_ratio),
        "min_ratio_float": enc_float(float(s.min_ratio)) if s.min_ratio is not None else None,
        "argmin_tables": tab(s.argmin_tables),
        "min_ratio_multi": enc_fraction(s.min_ratio_multi),
        "argmin_multi_tables": tab(s.argmin_multi_tables),
    }


def dec_exhaustive(d: dict) -> ExhaustiveSummary:
    n = d["n"]
    untab = lambda hs: [hex_table(n, h) for h in hs]  # noqa: E731
    return ExhaustiveSummary(
        n=n, mode=d["mode"],
        functions_checked=d["functions_checked"],
        constant_functions=d["constant_functions"],
        violations=d["violations"],
        violation_tables=untab(d["violation_tables"]),
        equality_cases=untab(d["equality_cases"]),
        classical_violations=d["classical_violations"],
        classical_violation_tables=untab(d["classical_violation_tables"]),
        classical_equality_count=d["classical_equality_count"],
        classical_equality_singletons=d["classical_equality_singletons"],
        classical_equality_constants=d["classical_equality_constants"],
        min_ratio=dec_fraction(d["min_ratio"]),
        argmin_tables=untab(d["argmin_tables"]),
        min_ratio_multi=dec_fraction(d["min_ratio_multi"]),
        argmin_multi_tables=untab(d["argmin_multi_tables"]),
    )


@dataclass(frozen=True)
class SearchSummary:
    n: int
    restarts: int
    iterations: int
    trace_length: int
    best: tuple[int, ...]
    best_objective: tuple[int, int] | None
    best_restart: int
    best_report: TheoremReport | None

    @classmethod
    def from_trace(cls, trace: SearchTrace, n: int, restarts: int, iterations: int):
        best = trace.best if trace.best is not None else PointSet(n, [])
        return cls(n, restarts, iterations, len(trace.records), tuple(best.tolist()),
                   trace.best_objective, trace.best_restart, trace.best_report)


def enc_search(s: SearchSummary) -> dict:
    obj = s.best_objective
    return {
        "type": "search",
        "n": s.n,
        "restarts": s.restarts,
        "iterations": s.iterations,
        "trace_length": s.trace_length,
        "best_points": list(s.best),
        "best_objective": None if obj is None else {"rhs": enc_int(obj[0]), "lhs": enc_int(obj[1])},
        "best_objective_float": enc_float(math.inf if obj is None else obj[0] / obj[1]),
        "best_restart": s.best_restart,
        "best_report": None if s.best_report is None else enc_theorem(s.best_report, s.n),
    }


def dec_search(d: dict) -> SearchSummary:
    obj = d["best_objective"]
    return SearchSummary(
        n=d["n"], restarts=d["restarts"], iterations=d["iterations"],
        trace_length=d["trace_length"], best=tuple(d["best_points"]),
        best_objective=None if obj is None else (dec_int(obj["rhs"]), dec_int(obj["lhs"])),
        best_restart=d["best_restart"],
        best_report=None if d["best_report"] is None else dec_theorem(d["best_report"]),
    )


ENCODERS = {AnalysisReport: enc_analysis, ExhaustiveSummary: enc_exhaustive,
            SearchSummary: enc_search}
DECODERS = {"analysis": dec_analysis, "exhaustive": dec_exhaustive, "search": dec_search}


@dataclass(frozen=True)
class ReportEnvelope:
    command: str
    input_digest: str
    payload: object
    timing_ms: float | None = None
    schema_version: str = SCHEMA_VERSION


def input_digest(data: bytes) -> str:
    """64-bit BLAKE2b digest of the canonical input bytes, as hex."""
    return hashlib.blake2b(data, digest_size=8).hexdigest()


def function_digest(f: BooleanFunction) -> str:
    return input_digest(f"n={f.n}\n".encode() + f.table)


def emit(env: ReportEnvelope) -> str:
    doc = {"schema_version": env.schema_version, "command": env.command,
           "input_digest": env.input_digest,
           "payload": ENCODERS[type(env.payload)](env.payload)}
    if env.timing_ms is not None:
        doc["timing"] = {"wall_ms_float": env.timing_ms}
    return json.dumps(doc, indent=2) + "\n"


def parse(text: str) -> ReportEnvelope:
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    payload = doc["payload"]
    timing = doc.get("timing")
    return ReportEnvelope(
        command=doc["command"], input_digest=doc["input_digest"],
        payload=DECODERS[payload["type"]](payload),
        timing_ms=None if timing is None else timing["wall_ms_float"],
        schema_version=doc["schema_version"])


def analyze_points(points: PointSet, paranoid: bool = False) -> AnalysisReport:
    return analyze(from_points(points.n, points), paranoid)
