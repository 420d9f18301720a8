"""Figure rendering for report paths.

Figures are written straight to files (Agg backend, no display).  The
structure figure shows entry moduli, gathered into block order when a
certificate is available, with block boundaries drawn in; the spectrum
figure shows sorted eigenvalues against the zero line; the factor figure
shows the triangular (0,1)-modulus patterns.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .certificate import Certificate
from .factor import FactorPair

_DPI = 150


def save_structure_figure(
    entries: np.ndarray, path: str | Path, certificate: Certificate | None = None
) -> Path:
    a = np.asarray(getattr(entries, "entries", entries))
    n = a.shape[0]
    order = np.arange(n)
    boundaries: list[int] = []
    title = f"entry moduli ({n} x {n})"
    if certificate is not None:
        gathered = [i for b in certificate.blocks for i in b] + list(certificate.zero_set)
        order = np.asarray(gathered, dtype=np.intp)
        edge = 0
        for b in certificate.blocks:
            edge += len(b)
            if edge < n:
                boundaries.append(edge)
        title = (
            f"gathered block structure: sizes {list(certificate.block_sizes)}, "
            f"{len(certificate.zero_set)} zero rows"
        )
    moduli = np.abs(a[np.ix_(order, order)])
    fig, ax = plt.subplots(figsize=(4.8, 4.2))
    image = ax.imshow(moduli, cmap="viridis", vmin=0.0, interpolation="nearest")
    for edge in boundaries:
        ax.axhline(edge - 0.5, color="white", linewidth=0.8)
        ax.axvline(edge - 0.5, color="white", linewidth=0.8)
    ax.set_title(title, fontsize=9)
    fig.colorbar(image, ax=ax, shrink=0.85)
    return _save(fig, path)


def save_spectrum_figure(eigenvalues: np.ndarray, path: str | Path) -> Path:
    values = np.sort(np.asarray(eigenvalues, dtype=float))
    fig, ax = plt.subplots(figsize=(4.8, 3.2))
    ax.plot(values, "o", markersize=4)
    ax.axhline(0.0, color="crimson", linewidth=0.8)
    ax.set_xlabel("index (ascending)")
    ax.set_ylabel("eigenvalue")
    ax.set_title("spectrum", fontsize=9)
    return _save(fig, path)


def save_factor_figure(factors: FactorPair, path: str | Path) -> Path:
    panels = 1 if factors.upper is None else 2
    fig, axes = plt.subplots(1, panels, figsize=(4.4 * panels, 4.0), squeeze=False)
    axes[0, 0].imshow(np.abs(factors.lower), cmap="Greys", vmin=0.0, interpolation="nearest")
    axes[0, 0].set_title("|L|", fontsize=9)
    if factors.upper is not None:
        axes[0, 1].imshow(np.abs(factors.upper), cmap="Greys", vmin=0.0, interpolation="nearest")
        axes[0, 1].set_title("|U|", fontsize=9)
    return _save(fig, path)


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
