"""Structured LU and Cholesky factorizations built from a certificate.

Factors are written down directly from the block-phase data rather than by
numerical elimination, so every nonzero entry has unit modulus and the
products reproduce the reconstructed matrix exactly in exact arithmetic.
Stripping the phases from either factor leaves a (0,1) triangular matrix:
conj(d_i) * L_ij * d_j is 0 or 1 for all i, j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificate import Certificate, CertificateError, reconstruct
from .core import HermitianMatrix, classify_entries


@dataclass(frozen=True, eq=False)
class FactorPair:
    """Lower/upper factor pair; ``upper`` is None for Cholesky (cofactor L*)."""

    lower: np.ndarray
    upper: np.ndarray | None = None

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=np.complex128)
        lower.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        if self.upper is not None:
            upper = np.array(self.upper, dtype=np.complex128)
            if upper.shape != lower.shape:
                raise ValueError("factor shapes disagree")
            upper.setflags(write=False)
            object.__setattr__(self, "upper", upper)

    @property
    def n(self) -> int:
        return self.lower.shape[0]

    def product(self) -> np.ndarray:
        """L @ U, or L @ L* when there is no upper factor."""
        if self.upper is None:
            return self.lower @ self.lower.conj().T
        return self.lower @ self.upper


@dataclass(frozen=True)
class FactorizationReport:
    """Numerical check of a factor pair against a matrix."""

    residual: float
    residual_bound: float
    lower_pattern_violations: int
    upper_pattern_violations: int
    factor_moduli_ok: bool
    passed: bool


def _require_canonical(cert: Certificate) -> None:
    if not cert.is_canonical:
        raise CertificateError("structured factorization requires a canonical certificate")


def lu_structured(cert: Certificate) -> FactorPair:
    """LU factorization with L nonsingular and (0,1)-modulus factors.

    Per block with root r and gauge d: column r of L carries d_i * conj(d_r)
    for each member i, L has unit diagonal everywhere; row r of U carries
    d_r * conj(d_j) over the block's members.  All other entries are zero,
    so rows of U away from roots (and across the zero set) vanish.  Because
    each root is its block's smallest index, both factors are triangular in
    the original indexing, and L @ U equals reconstruct(cert).
    """
    _require_canonical(cert)
    lower = np.eye(cert.n, dtype=np.complex128)
    upper = np.zeros((cert.n, cert.n), dtype=np.complex128)
    for b in cert.blocks:
        root = b[0]
        idx = np.asarray(b, dtype=np.intp)
        d = cert.phases[idx]
        root_phase = cert.phases[root]
        lower[idx, root] = d * np.conj(root_phase)
        upper[root, idx] = root_phase * np.conj(d)
    return FactorPair(lower, upper)


def cholesky_structured(cert: Certificate) -> FactorPair:
    """Cholesky factor: column r of L carries the whole block's gauge.

    L @ L* equals reconstruct(cert); rows in the zero set are entirely zero,
    so L is singular exactly when the certificate has zero rows or a block
    of size larger than one.
    """
    _require_canonical(cert)
    lower = np.zeros((cert.n, cert.n), dtype=np.complex128)
    for b in cert.blocks:
        root = b[0]
        idx = np.asarray(b, dtype=np.intp)
        lower[idx, root] = cert.phases[idx] * np.conj(cert.phases[root])
    return FactorPair(lower, None)


def verify_factorization(matrix: HermitianMatrix, factors: FactorPair) -> FactorizationReport:
    """Check residual, triangular patterns, and factor entry moduli.

    Passes iff the max-norm residual is at most ``eps_residual * n`` and the
    triangular patterns are exact.  Entry moduli (every factor entry 0 or 1
    in modulus within eps_mod) are reported alongside.
    """
    if factors.n != matrix.n:
        raise ValueError(f"dimension mismatch: factors {factors.n}, matrix {matrix.n}")
    residual = float(np.abs(factors.product() - matrix.entries).max())
    bound = matrix.tol.eps_residual * matrix.n

    lower_violations = int(np.count_nonzero(np.triu(factors.lower, 1)))
    upper_violations = 0
    moduli_ok = _moduli_in_class(factors.lower, matrix)
    if factors.upper is not None:
        upper_violations = int(np.count_nonzero(np.tril(factors.upper, -1)))
        moduli_ok = moduli_ok and _moduli_in_class(factors.upper, matrix)

    passed = residual <= bound and lower_violations == 0 and upper_violations == 0
    return FactorizationReport(
        residual=residual,
        residual_bound=bound,
        lower_pattern_violations=lower_violations,
        upper_pattern_violations=upper_violations,
        factor_moduli_ok=moduli_ok,
        passed=passed,
    )


def _moduli_in_class(factor: np.ndarray, matrix: HermitianMatrix) -> bool:
    _, _, out = classify_entries(factor, matrix.tol)
    return not out.any()


def phase_erased(cert: Certificate, factor: np.ndarray) -> np.ndarray:
    """Strip the gauge from a factor: conj(d_i) * F_ij * d_j entrywise.

    For factors produced here the result is a (0,1)-matrix with the same
    triangular pattern (phases on the zero set are taken as 1).
    """
    d = np.where(np.asarray(cert.phases) == 0.0, 1.0, cert.phases)
    return np.conj(d)[:, None] * factor * d[None, :]


def factor_roundtrip(cert: Certificate) -> tuple[FactorizationReport, FactorizationReport]:
    """Convenience: verify both factorizations against reconstruct(cert)."""
    matrix = reconstruct(cert)
    return (
        verify_factorization(matrix, lu_structured(cert)),
        verify_factorization(matrix, cholesky_structured(cert)),
    )
