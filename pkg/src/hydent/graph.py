"""Similarity-graph construction and spectral quantities for one learner.

Each learner propagates on its own weighted graph.  This module builds the
k-nearest-neighbor edge pattern, fills in edge weights (plain Gaussian
kernel, or Gaussian kernel with proportional self-loops), and precomputes
the degree vector, Laplacian, row-stochastic iteration matrix, and the full
Laplacian eigendecomposition that commute times are read from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Eigenvalues below EIG_ZERO_REL * max(eigenvalue) count as zero modes.
EIG_ZERO_REL = 1e-9


@dataclass(frozen=True)
class LearnerGraph:
    """Adjacency plus every derived matrix a learner or teacher needs.

    ``eigenvalues`` are ascending; ``eigenvectors[:, k]`` is the orthonormal
    eigenvector for ``eigenvalues[k]``.
    """

    adjacency: np.ndarray
    degree: np.ndarray
    laplacian: np.ndarray
    iteration: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


def squared_distances(features: np.ndarray) -> np.ndarray:
    """Pairwise squared Euclidean distances, clamped at zero."""
    features = np.asarray(features, dtype=float)
    norms = np.einsum("ij,ij->i", features, features)
    sq = norms[:, None] + norms[None, :] - 2.0 * features @ features.T
    return np.maximum(sq, 0.0)


def knn_pattern(features: np.ndarray, k: int) -> np.ndarray:
    """Boolean symmetric k-nearest-neighbor edge pattern.

    An edge {i, j} exists when j is among i's k nearest neighbors or vice
    versa (union symmetrization).  Distance ties are broken toward the
    lower index; self-edges are never part of the pattern.
    """
    features = np.asarray(features, dtype=float)
    n = features.shape[0]
    if k < 1:
        raise ValueError("k must be positive")
    if k >= n:
        raise ValueError(f"k={k} must be smaller than the number of points n={n}")
    sq = squared_distances(features)
    np.fill_diagonal(sq, np.inf)
    # Stable sort keeps index order on ties, so the lower index wins.
    order = np.argsort(sq, axis=1, kind="stable")[:, :k]
    pattern = np.zeros((n, n), dtype=bool)
    rows = np.repeat(np.arange(n), k)
    pattern[rows, order.ravel()] = True
    return pattern | pattern.T


def gaussian_weights(pattern: np.ndarray, features: np.ndarray, sigma: float) -> np.ndarray:
    """Gaussian kernel weights exp(-||xi-xj||^2 / (2 sigma^2)) on pattern edges."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sq = squared_distances(features)
    weights = np.where(pattern, np.exp(-sq / (2.0 * sigma**2)), 0.0)
    np.fill_diagonal(weights, 0.0)
    return weights


def flap_style_weights(
    pattern: np.ndarray, features: np.ndarray, sigma: float, self_loop: float = 1.0
) -> np.ndarray:
    """Gaussian kernel weights plus a proportional self-loop on each node.

    The diagonal entry of row i is ``self_loop`` times the strongest edge
    weight incident to i; an isolated row falls back to the kernel's value
    at zero distance (1.0) so the self-loop stays positive.  With
    ``self_loop=0`` this reduces to :func:`gaussian_weights`.
    """
    if self_loop < 0:
        raise ValueError("self_loop must be nonnegative")
    weights = gaussian_weights(pattern, features, sigma)
    row_max = weights.max(axis=1)
    row_max[row_max == 0.0] = 1.0
    np.fill_diagonal(weights, self_loop * row_max)
    return 0.5 * (weights + weights.T)


def assemble(adjacency: np.ndarray) -> LearnerGraph:
    """Derive degree, Laplacian, iteration matrix, and spectrum from W.

    Fails on a zero-degree row: an isolated node can never receive label
    mass, which makes the iteration matrix undefined.
    """
    W = np.asarray(adjacency, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise ValueError("adjacency must be square")
    asym = np.abs(W - W.T)
    if np.any(asym > 1e-12 * np.maximum(1.0, np.abs(W))):
        raise ValueError("adjacency must be symmetric")
    if np.any(W < 0):
        raise ValueError("adjacency must be nonnegative")
    degree = W.sum(axis=1)
    if np.any(degree <= 0):
        bad = int(np.flatnonzero(degree <= 0)[0])
        raise ValueError(f"node {bad} has zero degree; graph construction failed")
    laplacian = np.diag(degree) - W
    iteration = W / degree[:, None]
    eigenvalues, eigenvectors = np.linalg.eigh(laplacian)
    return LearnerGraph(W, degree, laplacian, iteration, eigenvalues, eigenvectors)


def _inverse_spectrum(graph: LearnerGraph) -> np.ndarray:
    # 1/lambda on nonzero modes, 0 on (numerically) zero modes.
    lam = graph.eigenvalues
    cutoff = EIG_ZERO_REL * max(lam[-1], 0.0)
    h = np.zeros_like(lam)
    nonzero = lam > cutoff
    h[nonzero] = 1.0 / lam[nonzero]
    return h


def commute_time(graph: LearnerGraph, i: int, j: int) -> float:
    """Commute time between nodes i and j from the Laplacian spectrum.

    Spectrally this is sum_k h(lambda_k) (u_ki - u_kj)^2 with h = 1/lambda
    on nonzero modes, which coincides with the effective resistance
    between i and j on a connected graph.
    """
    h = _inverse_spectrum(graph)
    diff = graph.eigenvectors[i] - graph.eigenvectors[j]
    return float(np.sum(h * diff * diff))


def commute_table(graph: LearnerGraph) -> np.ndarray:
    """All-pairs commute times as one symmetric matrix with zero diagonal."""
    h = _inverse_spectrum(graph)
    pseudo = (graph.eigenvectors * h) @ graph.eigenvectors.T
    pseudo = 0.5 * (pseudo + pseudo.T)
    diag = np.diag(pseudo)
    table = diag[:, None] + diag[None, :] - 2.0 * pseudo
    np.fill_diagonal(table, 0.0)
    return np.maximum(table, 0.0)


def dump_edges(adjacency: np.ndarray, path) -> None:
    """Write the weighted edge list as one "i j w" line per edge."""
    W = np.asarray(adjacency)
    with open(path, "w", encoding="utf-8") as handle:
        for i, j in zip(*np.nonzero(np.triu(W))):
            handle.write(f"{i} {j} {float(W[i, j])!r}\n")
