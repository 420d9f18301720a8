"""Certificate algebra for the block-phase decomposition.

A certificate says: after gathering index blocks and stripping unit-modulus
phases, the matrix is a direct sum of all-ones blocks and a zero block.
This module reconstructs matrices from certificates, canonicalizes and
verifies them, materializes the underlying unitary monomial similarity, and
generates seeded positive and mutated negative instances for testing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import HermitianMatrix, ToleranceConfig, validate_hermitian

MUTATION_KINDS = ("phase_flip", "edge_delete", "diag_negate", "diag_zero")


class CertificateError(ValueError):
    """Structurally invalid certificate (bad partition, non-unit phase, ...)."""


@dataclass(frozen=True, eq=False)
class Certificate:
    """Block-phase decomposition data for an n x n matrix.

    ``blocks`` and ``zero_set`` partition ``range(n)``; ``phases`` is a
    length-n complex vector that is unit-modulus on block members and exactly
    0 on the zero set (a marker for "no phase").  A certificate is canonical
    when blocks are ordered by smallest member and each block's smallest
    member carries phase exactly 1.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    zero_set: tuple[int, ...]
    phases: np.ndarray
    tolerance_used: ToleranceConfig = field(default_factory=ToleranceConfig)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise CertificateError(f"dimension must be a positive integer, got {self.n!r}")
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        zero_set = tuple(sorted(int(i) for i in self.zero_set))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise CertificateError("empty block")
            if seen.intersection(b):
                raise CertificateError("overlapping blocks")
            seen.update(b)
        if seen.intersection(zero_set):
            raise CertificateError("zero set overlaps a block")
        seen.update(zero_set)
        if seen != set(range(self.n)):
            raise CertificateError("blocks and zero set must partition the index range")
        phases = np.array(self.phases, dtype=np.complex128)
        if phases.shape != (self.n,):
            raise CertificateError(
                f"phases must have length {self.n}, got shape {phases.shape}"
            )
        if not np.isfinite(phases).all():
            raise CertificateError("phases contain non-finite values")
        phases[list(zero_set)] = 0.0
        phases.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "zero_set", zero_set)
        object.__setattr__(self, "phases", phases)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(i for b in self.blocks for i in b))

    @property
    def is_canonical(self) -> bool:
        roots = [b[0] for b in self.blocks]
        if roots != sorted(roots):
            return False
        return all(self.phases[r] == 1.0 for r in roots)

    def __repr__(self) -> str:
        return (
            f"Certificate(n={self.n}, block_sizes={self.block_sizes}, "
            f"zeros={len(self.zero_set)})"
        )


@dataclass(frozen=True, eq=False)
class MonomialSimilarity:
    """A unitary monomial matrix M = Q D.

    ``perm[p]`` is the original index gathered into position ``p`` (the
    permutation part Q), and ``diag[p]`` is the unit-modulus scalar attached
    to that column (the diagonal part D).
    """

    perm: np.ndarray
    diag: np.ndarray

    def __post_init__(self) -> None:
        perm = np.array(self.perm, dtype=np.intp)
        diag = np.array(self.diag, dtype=np.complex128)
        n = perm.size
        if sorted(perm.tolist()) != list(range(n)):
            raise CertificateError("perm is not a permutation")
        if diag.shape != (n,):
            raise CertificateError("diag length must match perm")
        perm.setflags(write=False)
        diag.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "diag", diag)

    @property
    def n(self) -> int:
        return self.perm.size

    def matrix(self) -> np.ndarray:
        """Dense n x n form: column p has its only nonzero, diag[p], in row perm[p]."""
        m = np.zeros((self.n, self.n), dtype=np.complex128)
        m[self.perm, np.arange(self.n)] = self.diag
        return m


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of checking a certificate against a matrix."""

    max_deviation: float
    tolerance: float
    passed: bool


def reconstruct(cert: Certificate) -> HermitianMatrix:
    """Rebuild the matrix a certificate describes.

    Entry (i, j) is ``phases[i] * conj(phases[j])`` when i and j share a
    block and 0 otherwise.  The outer products are symmetrized before
    storage: vectorized complex multiplication may use fused operations
    that leave the two mirror entries an ulp apart.
    """
    eps = cert.tolerance_used.eps_mod
    a = np.zeros((cert.n, cert.n), dtype=np.complex128)
    for b in cert.blocks:
        idx = np.asarray(b, dtype=np.intp)
        d = cert.phases[idx]
        if np.any(np.abs(np.abs(d) - 1.0) > eps):
            raise CertificateError(f"non-unit phase in block starting at {b[0]}")
        a[np.ix_(idx, idx)] = np.outer(d, d.conj())
    return validate_hermitian(a, cert.tolerance_used)


def canonicalize(cert: Certificate) -> Certificate:
    """Return the canonical form: blocks ordered by smallest member, each
    block re-gauged so its smallest member carries phase exactly 1.

    Re-gauging multiplies a block's phases by the conjugate of the old root
    phase, which leaves :func:`reconstruct` unchanged.  Idempotent.
    """
    eps = cert.tolerance_used.eps_mod
    blocks = tuple(sorted(cert.blocks, key=lambda b: b[0]))
    phases = np.array(cert.phases, dtype=np.complex128)
    for b in blocks:
        root = b[0]
        g = phases[root]
        if abs(abs(g) - 1.0) > eps:
            raise CertificateError(f"non-unit root phase at index {root}")
        idx = list(b)
        phases[idx] = phases[idx] * np.conj(g)
        phases[root] = 1.0
    return Certificate(
        n=cert.n,
        blocks=blocks,
        zero_set=cert.zero_set,
        phases=phases,
        tolerance_used=cert.tolerance_used,
    )


def verify_certificate(cert: Certificate, matrix: HermitianMatrix) -> CertificateCheck:
    """Check that a certificate reconstructs ``matrix`` within eps_mod."""
    if cert.n != matrix.n:
        raise ValueError(f"dimension mismatch: certificate {cert.n}, matrix {matrix.n}")
    deviation = float(np.abs(matrix.entries - reconstruct(cert).entries).max())
    tolerance = matrix.tol.eps_mod
    return CertificateCheck(deviation, tolerance, deviation <= tolerance)


def certificates_equal(a: Certificate, b: Certificate, atol: float = 1e-8) -> bool:
    """Canonical equality: same partition, phases within ``atol`` entrywise."""
    ca, cb = canonicalize(a), canonicalize(b)
    if ca.n != cb.n or ca.blocks != cb.blocks or ca.zero_set != cb.zero_set:
        return False
    return bool(np.abs(ca.phases - cb.phases).max(initial=0.0) <= atol)


def gathered_form(block_sizes: tuple[int, ...] | list[int], n: int) -> np.ndarray:
    """The gathered target: a direct sum of all-ones blocks padded with zeros."""
    if sum(block_sizes) > n:
        raise ValueError("block sizes exceed the dimension")
    s = np.zeros((n, n), dtype=np.complex128)
    offset = 0
    for k in block_sizes:
        s[offset : offset + k, offset : offset + k] = 1.0
        offset += k
    return s


def materialize_similarity(cert: Certificate) -> tuple[MonomialSimilarity, list[int]]:
    """Materialize M = Q D with reconstruct(cert) = M S M*.

    S is the gathered direct sum (see :func:`gathered_form`); Q gathers each
    block into consecutive positions preserving within-block index order,
    with the zero set last; D carries the phases (1 on the zero set).
    """
    if not cert.is_canonical:
        raise CertificateError("materialize_similarity requires a canonical certificate")
    gathered = [i for b in cert.blocks for i in b] + list(cert.zero_set)
    perm = np.asarray(gathered, dtype=np.intp)
    diag = cert.phases[perm].copy()
    diag[len(cert.members) :] = 1.0
    return MonomialSimilarity(perm, diag), [len(b) for b in cert.blocks]


def random_certificate(
    n: int,
    seed: int,
    *,
    min_block_size: int = 1,
    max_block_size: int | None = None,
    zero_fraction: float = 0.2,
    phase_alphabet: tuple[complex, ...] | None = None,
    tol: ToleranceConfig | None = None,
) -> Certificate:
    """Draw a canonical certificate, deterministic in (n, seed, params).

    Block sizes are uniform on [min_block_size, max_block_size] (the trailing
    remainder merges into the last block); indices are a seeded shuffle; the
    zero set size is binomial(n, zero_fraction).  Non-root phases come from
    ``phase_alphabet`` when given (e.g. ``(1, -1, 1j, -1j)`` for exact
    arithmetic) and are uniform unit-circle angles otherwise.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if max_block_size is None:
        max_block_size = n
    if not 1 <= min_block_size <= max_block_size:
        raise ValueError(
            f"impossible block size range [{min_block_size}, {max_block_size}]"
        )
    if min_block_size > n:
        raise ValueError(f"min block size {min_block_size} exceeds dimension {n}")
    if not 0.0 <= zero_fraction <= 1.0:
        raise ValueError(f"zero_fraction must lie in [0, 1], got {zero_fraction}")

    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    n_zero = int(rng.binomial(n, zero_fraction))
    zero_set = tuple(sorted(int(i) for i in order[:n_zero]))

    pool = order[n_zero:]
    sizes: list[int] = []
    remaining = pool.size
    while remaining >= min_block_size:
        k = int(rng.integers(min_block_size, max_block_size + 1))
        k = min(k, remaining)
        sizes.append(k)
        remaining -= k
    if remaining:
        if sizes:
            sizes[-1] += remaining
        else:
            sizes.append(remaining)

    blocks: list[tuple[int, ...]] = []
    phases = np.zeros(n, dtype=np.complex128)
    offset = 0
    for k in sizes:
        members = tuple(sorted(int(i) for i in pool[offset : offset + k]))
        offset += k
        blocks.append(members)
        root = members[0]
        phases[root] = 1.0
        others = [i for i in members if i != root]
        if others:
            if phase_alphabet is not None:
                picks = rng.integers(0, len(phase_alphabet), size=len(others))
                phases[others] = np.asarray(phase_alphabet, dtype=np.complex128)[picks]
            else:
                angles = rng.uniform(0.0, 2.0 * np.pi, size=len(others))
                phases[others] = np.exp(1j * angles)
    blocks.sort(key=lambda b: b[0])
    return Certificate(
        n=n,
        blocks=tuple(blocks),
        zero_set=zero_set,
        phases=phases,
        tolerance_used=tol or ToleranceConfig(),
    )


def mutate(matrix: HermitianMatrix, seed: int, kind: str) -> HermitianMatrix:
    """Apply one symmetry-preserving defect that destroys semidefiniteness.

    ``phase_flip`` negates one off-diagonal pair inside a block of size >= 3
    (the flipped triangle gets cycle phase -1); ``edge_delete`` zeroes such a
    pair (a broken triangle); ``diag_negate`` sets one block diagonal entry
    to -1; ``diag_zero`` zeroes the diagonal of a member of a block of size
    >= 2.  Every variant creates a principal minor with negative determinant,
    so the result is rejected by the recognizer.

    Raises ``ValueError`` when the kind is inapplicable to the matrix's block
    structure, or when the input is not accepted in the first place.
    """
    from .recognize import Rejection, recognize

    if kind not in MUTATION_KINDS:
        raise ValueError(f"unknown mutation kind {kind!r}; expected one of {MUTATION_KINDS}")
    outcome = recognize(matrix)
    if isinstance(outcome, Rejection):
        raise ValueError(f"mutate requires an accepted matrix; got {outcome.reason.value}")
    cert = outcome
    rng = np.random.default_rng(seed)
    a = np.array(matrix.entries)

    if kind in ("phase_flip", "edge_delete"):
        eligible = [b for b in cert.blocks if len(b) >= 3]
        if not eligible:
            raise ValueError(f"{kind} needs a block of size >= 3")
        b = eligible[int(rng.integers(len(eligible)))]
        p, q = rng.choice(len(b), size=2, replace=False)
        i, j = sorted((b[int(p)], b[int(q)]))
        value = -a[i, j] if kind == "phase_flip" else 0.0
        a[i, j] = value
        a[j, i] = np.conj(value)
    elif kind == "diag_negate":
        members = cert.members
        if not members:
            raise ValueError("diag_negate needs at least one nonzero block")
        i = members[int(rng.integers(len(members)))]
        a[i, i] = -1.0
    else:  # diag_zero
        eligible = [b for b in cert.blocks if len(b) >= 2]
        if not eligible:
            raise ValueError("diag_zero needs a block of size >= 2")
        b = eligible[int(rng.integers(len(eligible)))]
        i = b[int(rng.integers(len(b)))]
        a[i, i] = 0.0
    return HermitianMatrix(a, matrix.tol)
