"""Structured text documents for certificates, reports, and factors.

Documents are JSON with a fixed key order, complex numbers as [re, im]
pairs, and 1-based indices to match matrix files.  Emission is
deterministic (identical values yield identical text) and certificate
documents round-trip through :func:`parse_certificate_document`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .certificate import Certificate, CertificateCheck
from .core import ToleranceConfig
from .factor import FactorizationReport, FactorPair
from .oracle import OracleVerdict, PsrpReport

VERDICTS = ("accepted", "not_psd", "out_of_class", "not_hermitian", "io_error")


class DocumentError(ValueError):
    """Malformed or unexpected document text."""


@dataclass(frozen=True, eq=False)
class RunReport:
    """One recognition run: verdict plus whichever artifact backs it up."""

    verdict: str
    certificate: Certificate | None = None
    witness: np.ndarray | None = None
    offending_indices: tuple[int, ...] | None = None
    diagnostics: str = ""
    tolerance_used: ToleranceConfig | None = None

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.certificate is not None) != (self.verdict == "accepted"):
            raise ValueError("certificate is present exactly for verdict 'accepted'")
        if (self.witness is not None) != (self.verdict == "not_psd"):
            raise ValueError("witness is present exactly for verdict 'not_psd'")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [_pair(z) for z in np.asarray(values, dtype=np.complex128)]


def _matrix_pairs(a: np.ndarray) -> list[list[list[float]]]:
    return [_pairs(row) for row in np.asarray(a, dtype=np.complex128)]


def _tolerance_doc(tol: ToleranceConfig) -> dict[str, float]:
    return {
        "eps_mod": tol.eps_mod,
        "eps_herm": tol.eps_herm,
        "eps_rank": tol.eps_rank,
        "eps_residual": tol.eps_residual,
    }


def _one_based(indices) -> list[int]:
    return [int(i) + 1 for i in indices]


def certificate_document(cert: Certificate) -> dict[str, Any]:
    return {
        "kind": "certificate",
        "n": cert.n,
        "blocks": [_one_based(b) for b in cert.blocks],
        "zero_set": _one_based(cert.zero_set),
        "phases": _pairs(cert.phases),
        "tolerance_used": _tolerance_doc(cert.tolerance_used),
        "canonical": cert.is_canonical,
    }


def run_report_document(report: RunReport) -> dict[str, Any]:
    return {
        "kind": "run_report",
        "verdict": report.verdict,
        "certificate": (
            certificate_document(report.certificate) if report.certificate else None
        ),
        "witness": _pairs(report.witness) if report.witness is not None else None,
        "offending_indices": (
            _one_based(report.offending_indices)
            if report.offending_indices is not None
            else None
        ),
        "diagnostics": report.diagnostics,
        "tolerance_used": (
            _tolerance_doc(report.tolerance_used) if report.tolerance_used else None
        ),
    }


def psrp_report_document(report: PsrpReport) -> dict[str, Any]:
    return {
        "kind": "psrp_report",
        "mode": report.mode,
        "subsets_checked": report.subsets_checked,
        "passed": report.passed,
        "failures": [
            {
                "subset": _one_based(f.subset),
                "rank_principal": f.rank_principal,
                "rank_strip": f.rank_strip,
                "which_condition": f.which_condition,
            }
            for f in report.failures
        ],
    }


def factor_pair_document(factors: FactorPair) -> dict[str, Any]:
    return {
        "kind": "factor_pair",
        "n": factors.n,
        "lower": _matrix_pairs(factors.lower),
        "upper": _matrix_pairs(factors.upper) if factors.upper is not None else None,
    }


def oracle_verdict_document(verdict: OracleVerdict) -> dict[str, Any]:
    return {
        "kind": "oracle_verdict",
        "psd": verdict.psd,
        "min_eigenvalue": verdict.min_eigenvalue,
        "eigenvalues": [float(v) for v in verdict.eigenvalues],
        "witness": _pairs(verdict.witness) if verdict.witness is not None else None,
    }


def certificate_check_document(check: CertificateCheck) -> dict[str, Any]:
    return {
        "kind": "verify_report",
        "max_deviation": check.max_deviation,
        "tolerance": check.tolerance,
        "passed": check.passed,
    }


def factorization_report_document(report: FactorizationReport) -> dict[str, Any]:
    return {
        "kind": "factorization_report",
        "residual": report.residual,
        "residual_bound": report.residual_bound,
        "lower_pattern_violations": report.lower_pattern_violations,
        "upper_pattern_violations": report.upper_pattern_violations,
        "factor_moduli_ok": report.factor_moduli_ok,
        "passed": report.passed,
    }


_DOCUMENT_BUILDERS = {
    Certificate: certificate_document,
    RunReport: run_report_document,
    PsrpReport: psrp_report_document,
    FactorPair: factor_pair_document,
    OracleVerdict: oracle_verdict_document,
    CertificateCheck: certificate_check_document,
    FactorizationReport: factorization_report_document,
}


def emit(value) -> str:
    """Serialize a supported value to its canonical JSON document."""
    builder = _DOCUMENT_BUILDERS.get(type(value))
    if builder is None:
        raise TypeError(f"no document form for {type(value).__name__}")
    return json.dumps(builder(value), indent=2) + "\n"


def parse_certificate_document(
    text: str, tol: ToleranceConfig | None = None
) -> Certificate:
    """Rebuild a Certificate from its JSON document (inverse of emit)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("kind") != "certificate":
        raise DocumentError("expected a certificate document")
    try:
        n = int(doc["n"])
        blocks = tuple(tuple(int(i) - 1 for i in b) for b in doc["blocks"])
        zero_set = tuple(int(i) - 1 for i in doc["zero_set"])
        phases = np.array(
            [complex(re, im) for re, im in doc["phases"]], dtype=np.complex128
        )
        tol_doc = doc["tolerance_used"]
        tolerance = tol or ToleranceConfig(
            eps_mod=float(tol_doc["eps_mod"]),
            eps_herm=float(tol_doc["eps_herm"]),
            eps_rank=float(tol_doc["eps_rank"]),
            eps_residual=float(tol_doc["eps_residual"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed certificate document: {exc}") from None
    return Certificate(
        n=n, blocks=blocks, zero_set=zero_set, phases=phases, tolerance_used=tolerance
    )
