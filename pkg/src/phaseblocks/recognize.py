"""Combinatorial recognizer for Hermitian PSD matrices with 0/1-modulus entries.

Membership in the class is decided without any eigendecomposition of the
full matrix: a matrix belongs iff its unit-modulus support splits into
cliques whose entries are phase-consistent, i.e. each connected component
carries a unit gauge vector d with a_ij = d_i * conj(d_j) throughout, and
every zero-diagonal row is entirely zero.  Acceptance yields a canonical
:class:`~phaseblocks.certificate.Certificate`; rejection yields a
:class:`Rejection` whose witness vector x satisfies x*Ax < 0, computed from
a principal submatrix of size at most 3.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .certificate import Certificate
from .core import HermitianMatrix, classify_entries


class RejectionReason(enum.Enum):
    NOT_PSD = "not_psd"
    OUT_OF_CLASS = "out_of_class"
    NOT_HERMITIAN = "not_hermitian"


@dataclass(frozen=True, eq=False)
class Rejection:
    """Why a matrix was turned away, with a checkable witness when indefinite.

    ``offending_indices`` pins the defect: the coordinate pair of an
    out-of-class entry, or the (at most 3) indices of a principal submatrix
    with a negative eigenvalue.  For NOT_PSD the witness is that submatrix's
    most-negative-eigenvalue eigenvector, zero-padded to length n.
    """

    reason: RejectionReason
    offending_indices: tuple[int, ...]
    witness: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.reason is RejectionReason.NOT_PSD):
            raise ValueError("witness is present exactly when the reason is NOT_PSD")
        if self.witness is not None:
            w = np.array(self.witness, dtype=np.complex128)
            w.setflags(write=False)
            object.__setattr__(self, "witness", w)


@dataclass(frozen=True, eq=False)
class SupportGraph:
    """Unit-modulus support structure of a classified matrix.

    ``vertices`` are the indices with unit diagonal, ``zero_set`` those with
    zero diagonal; ``adjacency`` is the symmetric, loop-free boolean matrix
    of unit off-diagonal entries.
    """

    vertices: np.ndarray
    zero_set: np.ndarray
    adjacency: np.ndarray

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


def build_support_graph(matrix: HermitianMatrix) -> SupportGraph:
    """Classify entries and build the support graph.

    Raises ``ValueError`` if any entry is out of class (the graph is only
    defined for 0/1-modulus matrices).
    """
    zero, unit, out = classify_entries(matrix.entries, matrix.tol)
    if out.any():
        flat = int(np.flatnonzero(out.ravel())[0])
        i, j = divmod(flat, matrix.n)
        raise ValueError(f"entry ({i}, {j}) has modulus neither 0 nor 1")
    adjacency = unit.copy()
    np.fill_diagonal(adjacency, False)
    return SupportGraph(
        vertices=np.flatnonzero(np.diagonal(unit)),
        zero_set=np.flatnonzero(np.diagonal(zero)),
        adjacency=adjacency,
    )


def _negative_witness(a: np.ndarray, indices: tuple[int, ...]) -> np.ndarray:
    """Most-negative-eigenvalue eigenvector of a principal submatrix, padded."""
    idx = list(indices)
    sub = a[np.ix_(idx, idx)]
    _, vectors = np.linalg.eigh(sub)
    witness = np.zeros(a.shape[0], dtype=np.complex128)
    witness[idx] = vectors[:, 0]
    return witness


def recognize(matrix: HermitianMatrix) -> Certificate | Rejection:
    """Decide class membership and emit a certificate or a rejection.

    The decision runs in O(n^2):

    1. any out-of-class entry rejects immediately (OUT_OF_CLASS);
    2. a unit diagonal entry near -1 rejects with witness e_i; a zero
       diagonal whose row holds a unit entry rejects via the 2x2 principal
       submatrix on those indices (determinant -1);
    3. connected components of the support graph restricted to unit-diagonal
       vertices are collected root-first (root = smallest member);
    4. any vertex at graph distance >= 2 from its root closes a path
       root - via - far whose 3x3 principal submatrix has determinant -1;
    5. within a component, the gauge d_i = a_ir / |a_ir| (d_root = 1) must
       satisfy a_ij = d_i * conj(d_j) to within eps_mod; a mismatch at
       (i, j) rejects via the principal submatrix on {root, i, j};
    6. otherwise the components, gauge, and zero set form a canonical
       certificate that reconstructs the matrix entrywise within eps_mod.
    """
    a = matrix.entries
    n = matrix.n
    eps = matrix.tol.eps_mod
    zero_mask, unit_mask, out_mask = classify_entries(a, matrix.tol)

    if out_mask.any():
        flat = int(np.flatnonzero(out_mask.ravel())[0])
        i, j = divmod(flat, n)
        return Rejection(RejectionReason.OUT_OF_CLASS, (int(i), int(j)))

    diag = np.real(np.diagonal(a))
    unit_diag = np.diagonal(unit_mask).copy()
    zero_diag = np.diagonal(zero_mask).copy()
    adjacency = unit_mask.copy()
    np.fill_diagonal(adjacency, False)

    # diagonal defects; report the lexicographically smallest offending set
    candidates: list[tuple[int, ...]] = [
        (int(i),) for i in np.flatnonzero(unit_diag & (diag < 0.0))
    ]
    for i in np.flatnonzero(zero_diag & adjacency.any(axis=1)):
        j = int(np.argmax(adjacency[i]))
        candidates.append(tuple(sorted((int(i), j))))
    if candidates:
        offending = min(candidates)
        return Rejection(
            RejectionReason.NOT_PSD, offending, _negative_witness(a, offending)
        )

    # components of the support graph; zero-set rows are all zero by now,
    # so adjacency only joins unit-diagonal vertices
    phases = np.zeros(n, dtype=np.complex128)
    blocks: list[tuple[int, ...]] = []
    remaining = unit_diag.copy()
    while remaining.any():
        root = int(np.argmax(remaining))
        member_mask = adjacency[root].copy()
        member_mask[root] = True
        outside = unit_diag & ~member_mask
        if outside.any():
            reachable = adjacency[member_mask].any(axis=0) & outside
            if reachable.any():
                far = int(np.argmax(reachable))
                via = int(np.argmax(adjacency[far] & member_mask))
                offending = tuple(sorted({root, via, far}))
                return Rejection(
                    RejectionReason.NOT_PSD, offending, _negative_witness(a, offending)
                )
        members = np.flatnonzero(member_mask)
        assert int(members[0]) == root  # components come off in index order
        gauge = a[members, root].copy()
        gauge /= np.abs(gauge)
        gauge[0] = 1.0
        deviation = np.abs(a[np.ix_(members, members)] - np.outer(gauge, gauge.conj()))
        np.fill_diagonal(deviation, 0.0)  # diagonal is vetted in step 2
        mismatched = deviation > eps
        if mismatched.any():
            flat = int(np.flatnonzero(mismatched.ravel())[0])
            p, q = divmod(flat, members.size)
            offending = tuple(sorted({root, int(members[p]), int(members[q])}))
            return Rejection(
                RejectionReason.NOT_PSD, offending, _negative_witness(a, offending)
            )
        blocks.append(tuple(int(i) for i in members))
        phases[members] = gauge
        remaining[member_mask] = False

    return Certificate(
        n=n,
        blocks=tuple(blocks),
        zero_set=tuple(int(i) for i in np.flatnonzero(zero_diag)),
        phases=phases,
        tolerance_used=matrix.tol,
    )


def recognize_binary(matrix: HermitianMatrix) -> Certificate | Rejection:
    """Recognize a real (0,1)-matrix; acceptance means a pure permutation
    gathers it into all-ones blocks (every phase comes out exactly 1).

    Entries that are unit in modulus but not equal to 1 (negative or with an
    imaginary part) are out of class here, unlike in :func:`recognize`.
    """
    a = matrix.entries
    zero_mask, _, _ = classify_entries(a, matrix.tol)
    binary = zero_mask | (np.abs(a - 1.0) <= matrix.tol.eps_mod)
    if not binary.all():
        flat = int(np.flatnonzero(~binary.ravel())[0])
        i, j = divmod(flat, matrix.n)
        return Rejection(RejectionReason.OUT_OF_CLASS, (int(i), int(j)))
    return recognize(matrix)


def quadratic_form(matrix: HermitianMatrix, x: np.ndarray) -> float:
    """Evaluate Re(x* A x); the imaginary part is asserted negligible."""
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (matrix.n,):
        raise ValueError(f"vector of length {matrix.n} required, got shape {x.shape}")
    value = complex(np.vdot(x, matrix.entries @ x))
    assert abs(value.imag) <= matrix.tol.eps_herm * matrix.n * max(
        1.0, float(np.abs(x).max()) ** 2
    )
    return value.real
