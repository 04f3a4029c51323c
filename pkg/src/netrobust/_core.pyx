"""Compiled hot loops. Each function matches its twin in ``_pykernels``."""

import numpy as np

from libc.math cimport fabs, hypot, sqrt


def em_advance(const int[::1] indptr, const int[::1] indices,
               const double[::1] weights, const double[::1] degree,
               double[::1] x, const double[:, ::1] noise,
               double dt, double scale, double[::1] var_out):
    """Advance ``x`` in place by ``noise.shape[0]`` Euler-Maruyama steps of
    ``dx = -L x dt + dW``; ``var_out[s]`` receives the population variance
    after step ``s``.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t steps = noise.shape[0]
    cdef Py_ssize_t s, i, p
    cdef double acc, mean, sq, d
    cdef double[::1] buf = np.empty(n, dtype=np.float64)
    if noise.shape[1] != n or var_out.shape[0] < steps:
        raise ValueError("shape mismatch between state, noise and output")
    with nogil:
        for s in range(steps):
            mean = 0.0
            for i in range(n):
                acc = degree[i] * x[i]
                for p in range(indptr[i], indptr[i + 1]):
                    acc = acc - weights[p] * x[indices[p]]
                buf[i] = x[i] - dt * acc + scale * noise[s, i]
                mean = mean + buf[i]
            mean = mean / n
            sq = 0.0
            for i in range(n):
                d = buf[i] - mean
                sq = sq + d * d
                x[i] = buf[i]
            var_out[s] = sq / n


def bfs_all_pairs(const int[::1] indptr, const int[::1] indices, Py_ssize_t n):
    """Hop distances from every node; -1 marks unreachable pairs."""
    out = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] dist = out
    cdef int[::1] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef Py_ssize_t src, head, tail, u, v, p
    with nogil:
        for src in range(n):
            dist[src, src] = 0
            queue[0] = <int>src
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head = head + 1
                for p in range(indptr[u], indptr[u + 1]):
                    v = indices[p]
                    if dist[src, v] < 0:
                        dist[src, v] = dist[src, u] + 1
                        queue[tail] = <int>v
                        tail = tail + 1
    return out


cdef double _offdiag_norm(double[:, ::1] a) nogil:
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc = acc + a[i, j] * a[i, j]
    return sqrt(acc)


def jacobi_eigenvalues(double[:, ::1] a, double rtol, int max_sweeps):
    """Cyclic Jacobi on a symmetric matrix, overwriting ``a``.

    Stops once the off-diagonal Frobenius norm is at most ``rtol * ||a||_F``.
    Returns ``(unsorted diagonal, sweeps used, converged flag)``.
    """
    cdef Py_ssize_t n = a.shape[0], p, q, k
    cdef double frob = 0.0, target, apq, theta, t, c, s, akp, akq
    cdef int sweep = 0
    cdef bint converged = False
    for p in range(n):
        for q in range(n):
            frob = frob + a[p, q] * a[p, q]
    target = rtol * sqrt(frob)
    with nogil:
        while True:
            if _offdiag_norm(a) <= target:
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
                    t = 1.0 / (fabs(theta) + hypot(theta, 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                    for k in range(n):
                        akp = a[p, k]
                        akq = a[q, k]
                        a[p, k] = c * akp - s * akq
                        a[q, k] = s * akp + c * akq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
            sweep = sweep + 1
    diag = np.array([a[k, k] for k in range(n)], dtype=np.float64)
    return diag, sweep, bool(converged)
