"""Pure numpy implementations of the compiled kernels in ``_core.pyx``.

Signatures and outputs match the compiled versions up to floating-point
summation order, so either module can back ``netrobust._kernels``.
"""

from collections import deque

import numpy as np


def _dense_laplacian(indptr, indices, weights, degree):
    n = degree.shape[0]
    lap = np.diag(np.asarray(degree, dtype=np.float64))
    rows = np.repeat(np.arange(n), np.diff(indptr))
    lap[rows, indices] -= weights
    return lap


def em_advance(indptr, indices, weights, degree, x, noise, dt, scale, var_out):
    steps, n = noise.shape
    if n != x.shape[0] or var_out.shape[0] < steps:
        raise ValueError("shape mismatch between state, noise and output")
    lap = _dense_laplacian(indptr, indices, weights, degree)
    state = np.array(x, dtype=np.float64)
    for s in range(steps):
        state = state - dt * (lap @ state) + scale * noise[s]
        var_out[s] = np.mean((state - state.mean()) ** 2)
    x[:] = state


def bfs_all_pairs(indptr, indices, n):
    dist = np.full((n, n), -1, dtype=np.int32)
    for src in range(n):
        row = dist[src]
        row[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in indices[indptr[u]:indptr[u + 1]]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
    return dist


def jacobi_eigenvalues(a, rtol, max_sweeps):
    n = a.shape[0]
    target = rtol * np.sqrt(np.sum(a * a))

    off = ~np.eye(n, dtype=bool)

    def offdiag():
        return np.sqrt(np.sum(a[off] ** 2))

    sweep = 0
    converged = False
    while True:
        if offdiag() <= target:
            converged = True
            break
        if sweep >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweep += 1
    return np.diag(a).copy(), sweep, converged
