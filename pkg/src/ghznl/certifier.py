"""Verdicts with human-auditable certificates.

The graph criterion is an equivalence for sets made only of weight-2 tuples
(given the special-set, orthogonality, and plane-containing hypotheses) and a
one-directional sufficient condition when higher weights are present.  The
nullspace oracle decides the defining property directly, so when both run the
oracle's verdict wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import oracle as povm_oracle
from .graphs import PartitionGraph, build_graph, build_path_graph, connected_components
from .oracle import OracleVerdict, ResourceGuardError
from .state_model import (
    DEFAULT_TOL,
    Partition,
    StateSet,
    check_mutual_orthogonality,
    check_plane_containing,
    check_special_set,
    genuine_entanglement_census,
)


class Verdict(Enum):
    STRONGEST_NONLOCAL = "StrongestNonlocal"
    NOT_STRONGEST_NONLOCAL = "NotStrongestNonlocal"
    INCONCLUSIVE = "Inconclusive"
    HYPOTHESES_VIOLATED = "HypothesesViolated"


@dataclass
class HypothesisResults:
    special_set_offenders: list[int]
    orthogonality_violations: list[tuple[int, int]]
    plane_witness: Optional[tuple[int, int, int]]
    entanglement_failures: list[int]

    @property
    def theorems_apply(self) -> bool:
        """Hypotheses shared by both connectivity theorems.

        The genuine-entanglement census is reported but does not gate the
        nonlocality verdict; it only qualifies the set as an OGES.
        """
        return (
            not self.special_set_offenders
            and not self.orthogonality_violations
            and self.plane_witness is not None
        )

    @property
    def is_oges(self) -> bool:
        return not self.entanglement_failures and not self.orthogonality_violations

    def failed_checks(self) -> list[str]:
        failed = []
        if self.special_set_offenders:
            failed.append(
                f"special-set (tuples {self.special_set_offenders} not "
                "coordinately different)"
            )
        if self.orthogonality_violations:
            failed.append(
                f"mutual-orthogonality (pairs {self.orthogonality_violations[:5]})"
            )
        if self.plane_witness is None:
            failed.append("plane-containing (no witness)")
        return failed


@dataclass
class PartitionAnalysis:
    partition: Partition
    full_components: int
    path_components: int

    @property
    def full_connected(self) -> bool:
        return self.full_components <= 1

    @property
    def path_connected(self) -> bool:
        return self.path_components <= 1


@dataclass
class CertReport:
    hypotheses: HypothesisResults
    partitions: dict[Partition, PartitionAnalysis]
    applied_theorem: Optional[int]
    graph_verdict: Verdict
    verdict: Verdict
    oracle: Optional[dict[Partition, OracleVerdict]] = None
    oracle_verdict: Optional[Verdict] = None
    agreement: Optional[bool] = None
    notes: list[str] = field(default_factory=list)


def check_hypotheses(S: StateSet, tol: float = DEFAULT_TOL) -> HypothesisResults:
    return HypothesisResults(
        special_set_offenders=check_special_set(S),
        orthogonality_violations=check_mutual_orthogonality(S, tol),
        plane_witness=check_plane_containing(S),
        entanglement_failures=genuine_entanglement_census(S, tol),
    )


def _analyze_partitions(S: StateSet) -> dict[Partition, PartitionAnalysis]:
    out = {}
    for p in Partition:
        full = connected_components(build_graph(S, p)).count
        path = connected_components(build_path_graph(S, p)).count
        out[p] = PartitionAnalysis(p, full, path)
    return out


def certify_via_graphs(S: StateSet, tol: float = DEFAULT_TOL) -> CertReport:
    """Apply the connectivity criterion and report the certificate."""
    hyp = check_hypotheses(S, tol)
    parts = _analyze_partitions(S)
    all_connected = all(a.full_connected for a in parts.values())
    notes: list[str] = []
    if not hyp.theorems_apply:
        notes.extend(f"hypothesis failed: {c}" for c in hyp.failed_checks())
        return CertReport(hyp, parts, None, Verdict.HYPOTHESES_VIOLATED,
                          Verdict.HYPOTHESES_VIOLATED, notes=notes)
    all_weight_2 = all(t.weight == 2 for t in S.tuples)
    if all_weight_2:
        theorem = 1
        verdict = (
            Verdict.STRONGEST_NONLOCAL
            if all_connected
            else Verdict.NOT_STRONGEST_NONLOCAL
        )
    else:
        theorem = 2
        verdict = (
            Verdict.STRONGEST_NONLOCAL if all_connected else Verdict.INCONCLUSIVE
        )
        if verdict is Verdict.INCONCLUSIVE:
            notes.append(
                "disconnected graph with high-weight tuples: the sufficient "
                "criterion does not decide the converse"
            )
    return CertReport(hyp, parts, theorem, verdict, verdict, notes=notes)


def _verdict_from_oracle(results: dict[Partition, OracleVerdict]) -> Verdict:
    if all(r.trivial_only for r in results.values()):
        return Verdict.STRONGEST_NONLOCAL
    return Verdict.NOT_STRONGEST_NONLOCAL


def certify(
    S: StateSet,
    method: str = "both",
    exact: Optional[bool] = None,
    tol: float = DEFAULT_TOL,
    guard: int = povm_oracle.RESOURCE_GUARD_UNKNOWNS,
    force: bool = False,
) -> CertReport:
    """Full certification pipeline.

    method: 'graph' runs the connectivity criterion (the oracle is still
    consulted when that criterion cannot decide); 'oracle' runs only the
    nullspace oracle; 'both' always runs both and records agreement.  The
    oracle verdict takes precedence whenever it ran.
    """
    if method not in ("graph", "oracle", "both"):
        raise ValueError(f"unknown method {method!r}")
    report = certify_via_graphs(S, tol)
    want_oracle = method in ("oracle", "both") or report.verdict in (
        Verdict.INCONCLUSIVE,
        Verdict.HYPOTHESES_VIOLATED,
    )
    if not want_oracle:
        return report
    try:
        # orthogonality violations are already reported in the hypotheses;
        # the oracle then constrains only the pairs that are orthogonal
        results = povm_oracle.oracle_all(
            S, exact=exact, tol=tol, guard=guard, force=force,
            nonorthogonal="skip",
        )
        skipped = sum(r.skipped_pairs for r in results.values())
        if skipped:
            report.notes.append(
                f"oracle skipped {skipped} non-orthogonal ordered state pairs"
            )
    except ResourceGuardError as e:
        report.notes.append(f"oracle refused: {e}")
        if report.graph_verdict in (
            Verdict.STRONGEST_NONLOCAL,
            Verdict.NOT_STRONGEST_NONLOCAL,
        ):
            report.verdict = report.graph_verdict
        else:
            report.verdict = Verdict.INCONCLUSIVE
        return report
    report.oracle = results
    report.oracle_verdict = _verdict_from_oracle(results)
    report.verdict = report.oracle_verdict
    if report.graph_verdict in (
        Verdict.STRONGEST_NONLOCAL,
        Verdict.NOT_STRONGEST_NONLOCAL,
    ):
        report.agreement = report.graph_verdict == report.oracle_verdict
    return report


def report_to_dict(report: CertReport) -> dict:
    """JSON-ready view of a CertReport."""
    doc = {
        "verdict": report.verdict.value,
        "graph_verdict": report.graph_verdict.value,
        "applied_theorem": report.applied_theorem,
        "hypotheses": {
            "special_set_offenders": report.hypotheses.special_set_offenders,
            "orthogonality_violations": [
                list(v) for v in report.hypotheses.orthogonality_violations
            ],
            "plane_witness": (
                list(report.hypotheses.plane_witness)
                if report.hypotheses.plane_witness is not None
                else None
            ),
            "entanglement_failures": report.hypotheses.entanglement_failures,
            "is_oges": report.hypotheses.is_oges,
        },
        "partitions": {
            p.value: {
                "full_components": a.full_components,
                "path_components": a.path_components,
                "full_connected": a.full_connected,
                "path_connected": a.path_connected,
            }
            for p, a in report.partitions.items()
        },
        "notes": report.notes,
    }
    if report.oracle is not None:
        doc["oracle_verdict"] = report.oracle_verdict.value
        doc["agreement"] = report.agreement
        doc["oracle"] = {
            p.value: {
                "dimension": r.dimension,
                "contains_identity": r.contains_identity,
                "trivial_only": r.trivial_only,
                "mode": "exact" if r.exact else "float",
                "tolerance": r.tolerance,
                "warning": r.warning,
                "unknowns": r.n_unknowns,
                "rows": r.n_rows,
            }
            for p, r in report.oracle.items()
        }
    return doc
