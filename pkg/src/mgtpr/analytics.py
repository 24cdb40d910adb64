"""Standardization, PCA and phase-portrait export for trace matrices.

Rows of a trace matrix are states, columns are embedding dimensions.  The
number of states is tiny compared to the dimension, so principal axes are
obtained from the ``T x T`` Gram matrix instead of the ``d x d`` covariance.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DegenerateInput

_EPS = 1e-12


def trace_matrix(vectors: Sequence[np.ndarray]) -> np.ndarray:
    M = np.vstack([np.asarray(v, dtype=float) for v in vectors])
    if M.shape[0] < 2:
        raise DegenerateInput("a trace matrix needs at least two states")
    return M


def ztransform(M: np.ndarray) -> np.ndarray:
    """Column-wise zero mean, unit population variance; constant columns become 0."""
    M = np.asarray(M, dtype=float)
    centered = M - M.mean(axis=0)
    sd = centered.std(axis=0)
    out = np.zeros_like(centered)
    ok = sd > _EPS
    out[:, ok] = centered[:, ok] / sd[ok]
    return out


@dataclass(frozen=True)
class PCAResult:
    components: np.ndarray  # k x d, orthonormal rows
    projections: np.ndarray  # T x k
    eigenvalues: np.ndarray  # k values, variance along each component

    def __iter__(self):
        return iter((self.components, self.projections))


def pca(M: np.ndarray, k: int = 2) -> PCAResult:
    X = np.asarray(M, dtype=float)
    T, d = X.shape
    if k > min(T - 1, d):
        raise ValueError(f"k={k} exceeds min(T-1, d)={min(T - 1, d)}")
    X = X - X.mean(axis=0)
    G = X @ X.T
    if np.trace(G) <= _EPS:
        raise DegenerateInput("all columns have zero variance")
    vals, vecs = np.linalg.eigh(G)
    order = np.argsort(vals)[::-1][:k]
    vals, vecs = vals[order], vecs[:, order]
    if vals[-1] <= _EPS * max(1.0, vals[0]):
        raise DegenerateInput(f"fewer than {k} directions carry variance")
    comps = (X.T @ vecs / np.sqrt(vals)).T
    for i in range(k):
        # make the loading of largest magnitude positive
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i, j] < 0:
            comps[i] *= -1
    proj = X @ comps.T
    return PCAResult(comps, proj, vals / T)


def covariance_pca(M: np.ndarray, k: int = 2) -> PCAResult:
    """Reference implementation through the d x d covariance matrix (small inputs only)."""
    X = np.asarray(M, dtype=float)
    X = X - X.mean(axis=0)
    C = X.T @ X / X.shape[0]
    vals, vecs = np.linalg.eigh(C)
    order = np.argsort(vals)[::-1][:k]
    comps = vecs[:, order].T.copy()
    for i in range(k):
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i, j] < 0:
            comps[i] *= -1
    return PCAResult(comps, X @ comps.T, vals[order])


def portrait_csv(proj: np.ndarray) -> str:
    rows = ["step,pc1,pc2"]
    rows += [f"{k},{x:.6f},{y:.6f}" for k, (x, y) in enumerate(np.asarray(proj)[:, :2], 1)]
    return "\n".join(rows) + "\n"


def portrait_svg(proj: np.ndarray, title: str = "", size: int = 480, pad: int = 40) -> str:
    P = np.asarray(proj, dtype=float)[:, :2]
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = np.where(hi - lo > _EPS, hi - lo, 1.0)
    inner = size - 2 * pad
    xs = pad + (P[:, 0] - lo[0]) / span[0] * inner
    ys = size - pad - (P[:, 1] - lo[1]) / span[1] * inner
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<text x="{size / 2:.0f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{size / 2:.0f}" y="{size - 8}" text-anchor="middle" font-size="12">PC1</text>',
        f'<text x="12" y="{size / 2:.0f}" font-size="12" transform="rotate(-90 12 {size / 2:.0f})">PC2</text>',
        f'<polyline points="{pts}" fill="none" stroke="steelblue" stroke-width="1.5"/>',
    ]
    for k, (x, y) in enumerate(zip(xs, ys), 1):
        out.append(f'<circle class="state" cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">{k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_phase_portrait(proj: np.ndarray, path: str | Path, title: str = "") -> tuple[Path, Path]:
    """Write ``<path>.csv`` and ``<path>.svg``; returns both paths."""
    base = Path(path)
    if base.suffix in (".csv", ".svg"):
        base = base.with_suffix("")
    csv_path, svg_path = base.with_suffix(".csv"), base.with_suffix(".svg")
    csv_path.write_text(portrait_csv(proj))
    svg_path.write_text(portrait_svg(proj, title))
    return csv_path, svg_path


def matrix_csv(M: np.ndarray) -> str:
    return "\n".join(",".join(f"{x:.9g}" for x in row) for row in np.asarray(M)) + "\n"
