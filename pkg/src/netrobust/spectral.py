"""Laplacian assembly, symmetric eigenvalues and effective resistances."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import InvalidMatrixError, InvalidNodeError, InvalidParameterError
from .graph import Graph, require_connected

JACOBI_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100
ZERO_RTOL = 1e-8


def laplacian(g: Graph, weights=None) -> np.ndarray:
    """Dense weighted Laplacian ``D_w - A_w``.

    ``weights`` overrides the graph's own weights (aligned with ``g.edges``)
    and, unlike graph weights, may exceed 1.
    """
    w = g.weight_array if weights is None else _check_weights(g, weights)
    lap = np.zeros((g.n, g.n))
    if g.edges:
        e = np.array(g.edges)
        i, j = e[:, 0], e[:, 1]
        lap[i, j] = -w
        lap[j, i] = -w
        np.add.at(lap, (i, i), w)
        np.add.at(lap, (j, j), w)
    return lap


def _check_weights(g, weights):
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (g.num_edges,):
        raise InvalidParameterError(f"expected {g.num_edges} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise InvalidParameterError("edge weights must be finite and strictly positive")
    return w


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ascending Laplacian eigenvalues with a zero-mode threshold."""

    eigenvalues: np.ndarray
    zero_threshold: float

    @property
    def n(self):
        return self.eigenvalues.shape[0]

    @property
    def zero_count(self):
        return int(np.sum(np.abs(self.eigenvalues) < self.zero_threshold))

    @property
    def is_connected(self):
        return self.zero_count == 1

    @property
    def algebraic_connectivity(self):
        return float(self.eigenvalues[1]) if self.n > 1 else 0.0

    @property
    def largest(self):
        return float(self.eigenvalues[-1])

    @property
    def nonzero(self):
        """``lambda_2..lambda_n`` (drops the structural zero mode)."""
        return self.eigenvalues[1:]


def _symmetric_or_raise(m):
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidMatrixError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if m.size and np.max(np.abs(m - m.T)) > 1e-12 * scale:
        raise InvalidMatrixError("matrix is not symmetric")
    return m


def eigenvalues(m, method="lapack", backend=None) -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    ``method="lapack"`` uses tridiagonalization + QL via numpy;
    ``method="jacobi"`` runs cyclic Jacobi rotations in the kernel backend
    until the off-diagonal Frobenius norm is below 1e-12 of the total.
    """
    m = _symmetric_or_raise(m)
    if method == "lapack":
        vals = np.linalg.eigvalsh(m)
    elif method == "jacobi":
        a = np.ascontiguousarray((m + m.T) / 2.0)
        vals, _, converged = _kernels.get(backend).jacobi_eigenvalues(a, JACOBI_RTOL, JACOBI_MAX_SWEEPS)
        if not converged:
            raise InvalidMatrixError(f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        vals = np.sort(vals)
    else:
        raise InvalidParameterError(f"unknown eigen method {method!r}")
    vals = np.asarray(vals, dtype=np.float64)
    vals.flags.writeable = False
    top = float(vals[-1]) if vals.size else 0.0
    return Spectrum(vals, ZERO_RTOL * max(1.0, top))


def spectrum(g: Graph, weights=None, method="lapack") -> Spectrum:
    return eigenvalues(laplacian(g, weights), method=method)


def algebraic_connectivity(g: Graph) -> float:
    """Second-smallest eigenvalue of the unweighted Laplacian."""
    require_connected(g)
    return spectrum(g.unweighted()).algebraic_connectivity


@lru_cache(maxsize=64)
def _resistance_matrix(g: Graph) -> np.ndarray:
    n = g.n
    lap = laplacian(g)
    proj = np.full((n, n), 1.0 / n)
    # (L + J/n) is nonsingular on a connected graph; its inverse minus J/n is
    # the pseudoinverse of L.
    pinv = np.linalg.solve(lap + proj, np.eye(n) - proj)
    pinv = (pinv + pinv.T) / 2.0
    d = np.diag(pinv)
    r = d[:, None] + d[None, :] - 2.0 * pinv
    np.fill_diagonal(r, 0.0)
    r.flags.writeable = False
    return r


def resistance_matrix(g: Graph) -> np.ndarray:
    """Pairwise effective resistances, treating each edge as a conductance ``w``."""
    require_connected(g)
    return _resistance_matrix(g)


def effective_resistance(g: Graph, i: int, j: int) -> float:
    for node in (i, j):
        if not 0 <= node < g.n:
            raise InvalidNodeError(f"node {node} outside 0..{g.n - 1}")
    r = resistance_matrix(g)
    return 0.0 if i == j else float(r[i, j])
