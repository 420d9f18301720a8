"""Dense Hermitian matrix container, entry classification, and validation.

Everything downstream operates on matrices whose entries are expected to
have modulus 0 or 1.  Classification against a tolerance band is done here,
once, so the recognizer and the oracle agree on what "zero" and "unit" mean.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class EntryClass(enum.Enum):
    """Three-way classification of a complex entry by modulus."""

    ZERO = "zero"
    UNIT = "unit"
    OUT_OF_CLASS = "out_of_class"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used throughout the package.

    Attributes
    ----------
    eps_mod : float
        Half-width of the modulus classification bands around 0 and 1.
    eps_herm : float
        Maximum allowed entrywise deviation |A - A*| before a matrix is
        rejected as non-Hermitian.
    eps_rank : float
        Relative cutoff for numerical rank and eigenvalue sign decisions,
        scaled by dimension and largest singular value at the point of use.
    eps_residual : float
        Relative bound for factorization residual checks, scaled by n.
    """

    eps_mod: float = 1e-8
    eps_herm: float = 1e-10
    eps_rank: float = 1e-10
    eps_residual: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("eps_mod", "eps_herm", "eps_rank", "eps_residual"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        if self.eps_mod >= 0.5:
            # the bands around 0 and 1 must stay disjoint
            raise ValueError(f"eps_mod must be < 0.5, got {self.eps_mod!r}")


class NotHermitianError(ValueError):
    """A matrix deviates from its conjugate transpose beyond eps_herm."""

    def __init__(self, row: int, col: int, deviation: float):
        self.row = row
        self.col = col
        self.deviation = deviation
        super().__init__(
            f"entry ({row}, {col}) deviates from the conjugate of its mirror "
            f"by {deviation:.3e}"
        )


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Dense complex Hermitian matrix with exact Hermitian storage.

    Instances are produced by :func:`validate_hermitian` (or by internal
    constructions that are Hermitian bit-for-bit).  The entry array is
    frozen; diagonal imaginary parts are exactly zero.
    """

    entries: np.ndarray
    tol: ToleranceConfig = ToleranceConfig()

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] == 0:
            raise ValueError("empty matrix")
        if not np.isfinite(a).all():
            raise ValueError("matrix contains non-finite entries")
        if not np.array_equal(a, a.conj().T):
            raise ValueError(
                "entries are not exactly Hermitian; build instances through "
                "validate_hermitian"
            )
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __repr__(self) -> str:
        return f"HermitianMatrix(n={self.n})"


def classify_entry(z: complex, tol: ToleranceConfig | None = None) -> EntryClass:
    """Classify one complex scalar as ZERO, UNIT, or OUT_OF_CLASS by modulus."""
    tol = tol or ToleranceConfig()
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"cannot classify non-finite entry {z!r}")
    modulus = abs(z)
    if modulus <= tol.eps_mod:
        return EntryClass.ZERO
    if abs(modulus - 1.0) <= tol.eps_mod:
        return EntryClass.UNIT
    return EntryClass.OUT_OF_CLASS


def classify_entries(
    a: np.ndarray, tol: ToleranceConfig | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized classification: boolean (zero, unit, out_of_class) masks."""
    tol = tol or ToleranceConfig()
    moduli = np.abs(a)
    zero = moduli <= tol.eps_mod
    unit = np.abs(moduli - 1.0) <= tol.eps_mod
    unit &= ~zero  # bands are disjoint for eps_mod < 0.5, but be explicit
    out = ~(zero | unit)
    return zero, unit, out


def validate_hermitian(
    raw: np.ndarray, tol: ToleranceConfig | None = None
) -> HermitianMatrix:
    """Validate a raw square array and return it with exact Hermitian storage.

    The input may deviate from A = A* by at most ``tol.eps_herm`` per entry
    (decimal text round-trips perturb symmetry); the result is the symmetrized
    matrix (A + A*)/2, which is Hermitian bit-for-bit and has exactly real
    diagonal.  Validation of its own output returns an identical matrix.

    Raises
    ------
    NotHermitianError
        If some entry deviates from the conjugate of its mirror by more
        than ``tol.eps_herm``.  Carries the offending (row, col, deviation).
    ValueError
        For non-square or non-finite input.
    """
    tol = tol or ToleranceConfig()
    a = np.array(raw, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("empty matrix")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains non-finite entries")
    deviation = np.abs(a - a.conj().T)
    worst = float(deviation.max())
    if worst > tol.eps_herm:
        flat = int(np.argmax(deviation))
        row, col = divmod(flat, a.shape[0])
        raise NotHermitianError(row, col, worst)
    symmetrized = (a + a.conj().T) / 2.0
    return HermitianMatrix(symmetrized, tol)
