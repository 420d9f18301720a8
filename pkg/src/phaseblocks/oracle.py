"""Numerical ground truth: PSD oracle, numerical rank, and the
principal-submatrix rank property (PSRP) checks.

This side of the house is deliberately independent of the combinatorial
recognizer: verdicts come from dense eigendecompositions and singular
values, so agreement between the two is a meaningful cross-check.

PSRP: for every nonempty index subset, the row strip (and the column strip)
spans no more than the principal submatrix sitting inside it, i.e. their
ranks coincide.  Every PSD Hermitian matrix has this property; a failed
subset is a certificate of indefiniteness or asymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import HermitianMatrix, ToleranceConfig

PSRP_EXHAUSTIVE_LIMIT = 16


@dataclass(frozen=True, eq=False)
class OracleVerdict:
    """Spectral PSD verdict; ``witness`` (present iff not psd) has x*Ax < 0."""

    psd: bool
    min_eigenvalue: float
    eigenvalues: np.ndarray
    witness: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.witness is None) == (not self.psd):
            raise ValueError("witness is present exactly when the verdict is not psd")


@dataclass(frozen=True)
class PsrpFailure:
    subset: tuple[int, ...]
    rank_principal: int
    rank_strip: int
    which_condition: str  # "i" for row strips, "ii" for column strips


@dataclass(frozen=True)
class PsrpReport:
    mode: str
    subsets_checked: int
    failures: tuple[PsrpFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _as_array(matrix: HermitianMatrix | np.ndarray) -> np.ndarray:
    a = getattr(matrix, "entries", matrix)
    return np.asarray(a, dtype=np.complex128)


def _tol_for(matrix: HermitianMatrix | np.ndarray, tol: ToleranceConfig | None) -> ToleranceConfig:
    if tol is not None:
        return tol
    if isinstance(matrix, HermitianMatrix):
        return matrix.tol
    return ToleranceConfig()


def psd_oracle(matrix: HermitianMatrix) -> OracleVerdict:
    """Full-spectrum PSD test.

    PSD iff the smallest eigenvalue clears ``-eps_rank * n * scale`` where
    scale is the spectral radius (or the largest diagonal modulus, whichever
    is bigger).  When it does not, the witness is the eigenvector of the
    most negative eigenvalue.
    """
    values, vectors = np.linalg.eigh(matrix.entries)
    scale = max(float(np.abs(values).max()), float(np.abs(np.diagonal(matrix.entries)).max()))
    threshold = matrix.tol.eps_rank * matrix.n * scale
    smallest = float(values[0])
    if smallest >= -threshold:
        return OracleVerdict(True, smallest, values)
    return OracleVerdict(False, smallest, values, witness=vectors[:, 0])


def numerical_rank(
    matrix: HermitianMatrix | np.ndarray, tol: ToleranceConfig | None = None
) -> int:
    """Singular values above ``eps_rank * max(shape) * sigma_max``; 0 for 0."""
    a = _as_array(matrix)
    tol = _tol_for(matrix, tol)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    if a.size == 0:
        return 0
    singulars = np.linalg.svd(a, compute_uv=False)
    cutoff = tol.eps_rank * max(a.shape) * float(singulars[0])
    return int(np.count_nonzero(singulars > cutoff))


def _validated_subset(subset: Iterable[int], n: int) -> list[int]:
    idx = sorted({int(i) for i in subset})
    if not idx:
        raise ValueError("subset must be nonempty")
    if idx[0] < 0 or idx[-1] >= n:
        raise ValueError(f"subset indices out of range for dimension {n}: {idx}")
    return idx


def psrp_subset(
    matrix: HermitianMatrix | np.ndarray,
    subset: Iterable[int],
    tol: ToleranceConfig | None = None,
) -> tuple[bool, bool]:
    """Rank equality of the principal submatrix against its row/column strips.

    Returns (cond_i, cond_ii): rank A[s,s] == rank A[s,:] and
    rank A[s,s] == rank A[:,s].  The two agree for Hermitian input.
    """
    a = _as_array(matrix)
    tol = _tol_for(matrix, tol)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    idx = _validated_subset(subset, a.shape[0])
    rank_principal = numerical_rank(a[np.ix_(idx, idx)], tol)
    cond_i = rank_principal == numerical_rank(a[idx, :], tol)
    cond_ii = rank_principal == numerical_rank(a[:, idx], tol)
    if np.array_equal(a, a.conj().T):
        assert cond_i == cond_ii
    return cond_i, cond_ii


def _subset_from_mask(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def psrp_check(
    matrix: HermitianMatrix | np.ndarray,
    mode: str = "exhaustive",
    sample_count: int = 100,
    seed: int = 0,
    tol: ToleranceConfig | None = None,
) -> PsrpReport:
    """Quantify PSRP over subsets.

    ``exhaustive`` walks every nonempty subset in binary counting order
    (dimension capped at 16); ``sampled`` draws ``sample_count`` seeded
    subsets, so the report is deterministic in (matrix, mode, count, seed).
    """
    a = _as_array(matrix)
    tol = _tol_for(matrix, tol)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]

    if mode == "exhaustive":
        if n > PSRP_EXHAUSTIVE_LIMIT:
            raise ValueError(
                f"exhaustive mode enumerates 2^n subsets; n={n} exceeds the "
                f"limit of {PSRP_EXHAUSTIVE_LIMIT}"
            )
        subsets: Iterable[tuple[int, ...]] = (
            _subset_from_mask(mask, n) for mask in range(1, 1 << n)
        )
        checked = (1 << n) - 1
    elif mode == "sampled":
        if sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {sample_count}")
        rng = np.random.default_rng(seed)

        def _draw() -> tuple[int, ...]:
            while True:
                picks = rng.random(n) < 0.5
                if picks.any():
                    return tuple(int(i) for i in np.flatnonzero(picks))

        subsets = (_draw() for _ in range(sample_count))
        checked = sample_count
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'sampled'")

    failures: list[PsrpFailure] = []
    for subset in subsets:
        idx = list(subset)
        rank_principal = numerical_rank(a[np.ix_(idx, idx)], tol)
        rank_rows = numerical_rank(a[idx, :], tol)
        rank_cols = numerical_rank(a[:, idx], tol)
        if rank_principal != rank_rows:
            failures.append(PsrpFailure(subset, rank_principal, rank_rows, "i"))
        if rank_principal != rank_cols:
            failures.append(PsrpFailure(subset, rank_principal, rank_cols, "ii"))
    return PsrpReport(mode=mode, subsets_checked=checked, failures=tuple(failures))


def null_extension_check(
    matrix: HermitianMatrix, subset: Sequence[int]
) -> bool:
    """Null vectors of a principal submatrix extend to null vectors of A.

    For PSD A and B = A[s,s]: if B w = 0 then the zero-padded extension v of
    w satisfies A v = 0.  Each null-space basis vector of B (eigenvalues
    within the rank cutoff) is embedded and ``max|A v| <= eps_rank * n`` is
    required.  Vacuously true when B has trivial null space.

    Raises ``ValueError`` when the matrix is not PSD (nothing is guaranteed
    there).
    """
    if not psd_oracle(matrix).psd:
        raise ValueError("null extension property is only guaranteed for PSD matrices")
    a = matrix.entries
    tol = matrix.tol
    idx = _validated_subset(subset, matrix.n)
    sub = a[np.ix_(idx, idx)]
    values, vectors = np.linalg.eigh(sub)
    scale = float(np.abs(values).max())
    null_columns = np.flatnonzero(np.abs(values) <= tol.eps_rank * len(idx) * scale)
    for k in null_columns:
        extended = np.zeros(matrix.n, dtype=np.complex128)
        extended[idx] = vectors[:, k]
        if float(np.abs(a @ extended).max()) > tol.eps_rank * matrix.n:
            return False
    return True
