"""Full-instance analysis and stable JSON rendering.

`analyze_instance` bundles the prefix-matching verdict with the exact
matching/cover duality numbers.  The JSON shape is versioned and the key
order is fixed, so identical inputs render byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .exact import DualityReport, duality_report
from .hypergraph import Edge, KPartiteHypergraph, SubmaximalEdge, neighborhood_of_set
from .matching import HallReport, HallVerdict, Matching, prefix_hall_verdict

__all__ = [
    "REPORT_VERSION",
    "AnalysisReport",
    "analyze_instance",
    "analysis_jsonable",
    "verdict_jsonable",
    "edge_labels",
    "matching_labels",
]

REPORT_VERSION = "1"


@dataclass(frozen=True)
class AnalysisReport:
    hypergraph: KPartiteHypergraph
    verdict: HallVerdict
    duality: DualityReport


def analyze_instance(
    h: KPartiteHypergraph, *, force: bool = False, limit: int = 2
) -> AnalysisReport:
    """Run the prefix criterion and the exact solvers on one instance."""
    return AnalysisReport(
        hypergraph=h,
        verdict=prefix_hall_verdict(h, limit=limit),
        duality=duality_report(h, force=force),
    )


def edge_labels(edge: Edge | SubmaximalEdge) -> list[str]:
    return [v.label for v in edge]


def matching_labels(m: Matching) -> list[list[str]]:
    return [edge_labels(e) for e in m.edges]


def _hall_jsonable(h: KPartiteHypergraph, report: HallReport) -> dict[str, Any]:
    witness = report.witness_violator
    return {
        "t": report.t,
        "max_sdr": report.max_sdr,
        "deficiency": report.deficiency,
        "witness_violator": (
            None if witness is None else [edge_labels(s) for s in witness]
        ),
        "witness_neighborhood": (
            None
            if witness is None
            else [v.label for v in neighborhood_of_set(h, witness)]
        ),
    }


def verdict_jsonable(h: KPartiteHypergraph, verdict: HallVerdict) -> dict[str, Any]:
    return {
        "applicable": verdict.applicable,
        "reason": verdict.reason,
        "t": verdict.t,
        "pm_count": verdict.pm_count,
        "pm_count_is_lower_bound": verdict.pm_count_is_lower_bound,
        "unique": verdict.unique,
        "matchings": [
            {
                "prefix_matching": matching_labels(a.prefix_matching),
                "hall": _hall_jsonable(h, a.hall),
                "extension": matching_labels(a.extension),
                "extension_size": len(a.extension),
            }
            for a in verdict.per_matching
        ],
        "conclusion": verdict.conclusion,
        "message": verdict.message,
        "witness": None if verdict.witness is None else matching_labels(verdict.witness),
        "perfect_matching": verdict.perfect_matching,
    }


def _duality_jsonable(report: DualityReport) -> dict[str, Any]:
    return {
        "alpha_prime": report.alpha_prime,
        "beta": report.beta,
        "t": report.t,
        "max_matching_witness": matching_labels(report.max_matching_witness),
        "min_cover_witness": [v.label for v in report.min_cover_witness],
        "has_t_matching": report.has_t_matching,
        "konig_equality": report.konig_equality,
    }


def analysis_jsonable(report: AnalysisReport) -> dict[str, Any]:
    h = report.hypergraph
    return {
        "report_version": REPORT_VERSION,
        "instance": {
            "k": h.k,
            "part_sizes": list(h.part_sizes),
            "parts": [[v.label for v in part] for part in h.parts],
            "edges": [[v.label for v in e] for e in h.edges],
            "warnings": list(h.warnings),
        },
        "prefix_criterion": verdict_jsonable(h, report.verdict),
        "duality": _duality_jsonable(report.duality),
    }
