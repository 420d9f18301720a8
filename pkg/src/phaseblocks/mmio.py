"""Matrix Market coordinate-format ingestion and emission.

Supported headers: object ``matrix``, format ``coordinate``, field ``real``,
``integer`` or ``complex``, symmetry ``general``, ``symmetric`` or
``hermitian``.  Symmetric and hermitian files must store only the lower
triangle (i >= j); an upper-triangle entry is an error rather than a silent
mirror, since it usually signals a broken producer.  Indices are 1-based on
disk, 0-based in memory.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import TextIO

import numpy as np

from .core import HermitianMatrix, ToleranceConfig, validate_hermitian

_FIELDS = ("real", "integer", "complex")
_SYMMETRIES = ("general", "symmetric", "hermitian")


class MatrixParseError(ValueError):
    """Malformed matrix file; carries the 1-based offending line number."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


def parse_matrix(source: str | TextIO, tol: ToleranceConfig | None = None) -> HermitianMatrix:
    """Parse Matrix Market coordinate text into a validated Hermitian matrix.

    ``source`` is the file text or a readable stream.  Comment lines (%) and
    blank lines are skipped.  Symmetric/hermitian files are mirrored; the
    dense result then passes through :func:`~phaseblocks.core.validate_hermitian`,
    so e.g. a complex ``symmetric`` file with imaginary off-diagonals raises
    ``NotHermitianError``.
    """
    text = source.read() if hasattr(source, "read") else source
    lines = text.splitlines()
    if not lines:
        raise MatrixParseError(1, "empty input")

    banner = lines[0].split()
    if len(banner) != 5 or banner[0].lower() != "%%matrixmarket":
        raise MatrixParseError(1, "malformed Matrix Market banner")
    obj, fmt, field, symmetry = (token.lower() for token in banner[1:])
    if obj != "matrix":
        raise MatrixParseError(1, f"unsupported object {obj!r}")
    if fmt != "coordinate":
        raise MatrixParseError(1, f"unsupported format {fmt!r} (coordinate only)")
    if field not in _FIELDS:
        raise MatrixParseError(1, f"unsupported field {field!r}")
    if symmetry not in _SYMMETRIES:
        raise MatrixParseError(1, f"unsupported symmetry {symmetry!r}")

    n = -1
    nnz = -1
    dense: np.ndarray | None = None
    seen: set[tuple[int, int]] = set()
    entries_read = 0

    for line_number, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if dense is None:
            rows, cols, nnz = _parse_size(line_number, stripped)
            if rows != cols:
                raise MatrixParseError(line_number, f"matrix must be square, got {rows}x{cols}")
            if rows < 1:
                raise MatrixParseError(line_number, "empty matrix")
            n = rows
            dense = np.zeros((n, n), dtype=np.complex128)
            continue
        if entries_read == nnz:
            raise MatrixParseError(line_number, f"more entries than the declared {nnz}")
        i, j, value = _parse_entry(line_number, stripped, field, n)
        if (i, j) in seen:
            raise MatrixParseError(line_number, f"duplicate entry for ({i + 1}, {j + 1})")
        seen.add((i, j))
        if symmetry in ("symmetric", "hermitian") and i < j:
            raise MatrixParseError(
                line_number,
                f"{symmetry} files store only the lower triangle; "
                f"got upper entry ({i + 1}, {j + 1})",
            )
        dense[i, j] = value
        if i != j:
            if symmetry == "symmetric":
                dense[j, i] = value
            elif symmetry == "hermitian":
                dense[j, i] = np.conj(value)
        entries_read += 1

    if dense is None:
        raise MatrixParseError(len(lines), "missing size line")
    if entries_read != nnz:
        raise MatrixParseError(
            len(lines), f"expected {nnz} entries, found {entries_read}"
        )
    return validate_hermitian(dense, tol)


def _parse_size(line_number: int, line: str) -> tuple[int, int, int]:
    parts = line.split()
    if len(parts) != 3:
        raise MatrixParseError(line_number, "size line must be 'rows cols nnz'")
    try:
        rows, cols, nnz = (int(p) for p in parts)
    except ValueError:
        raise MatrixParseError(line_number, f"non-numeric size token in {line!r}") from None
    if nnz < 0:
        raise MatrixParseError(line_number, "negative entry count")
    return rows, cols, nnz


def _parse_entry(
    line_number: int, line: str, field: str, n: int
) -> tuple[int, int, complex]:
    parts = line.split()
    expected = 4 if field == "complex" else 3
    if len(parts) != expected:
        raise MatrixParseError(
            line_number, f"expected {expected} tokens for a {field} entry, got {len(parts)}"
        )
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixParseError(line_number, f"non-numeric index in {line!r}") from None
    if not (1 <= i <= n and 1 <= j <= n):
        raise MatrixParseError(line_number, f"index ({i}, {j}) out of range for n={n}")
    try:
        if field == "integer":
            value = complex(int(parts[2]))
        elif field == "real":
            value = complex(float(parts[2]))
        else:
            value = complex(float(parts[2]), float(parts[3]))
    except ValueError:
        raise MatrixParseError(line_number, f"non-numeric value in {line!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise MatrixParseError(line_number, "non-finite value")
    return i - 1, j - 1, value


def read_matrix_file(path: str | Path, tol: ToleranceConfig | None = None) -> HermitianMatrix:
    return parse_matrix(Path(path).read_text(), tol)


def format_matrix(matrix: HermitianMatrix | np.ndarray) -> str:
    """Render as ``coordinate complex hermitian`` text (lower triangle only).

    Output is deterministic: entries in row-major order, floats via repr.
    """
    a = np.asarray(getattr(matrix, "entries", matrix), dtype=np.complex128)
    n = a.shape[0]
    body = []
    for i in range(n):
        for j in range(i + 1):
            z = a[i, j]
            if z != 0.0:
                body.append(f"{i + 1} {j + 1} {float(z.real)!r} {float(z.imag)!r}")
    header = ["%%MatrixMarket matrix coordinate complex hermitian", f"{n} {n} {len(body)}"]
    return "\n".join(header + body) + "\n"


def write_matrix_file(matrix: HermitianMatrix | np.ndarray, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_matrix(matrix))
    return path
