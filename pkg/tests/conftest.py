import numpy as np
import pytest

import netrobust as nr
from netrobust import _kernels

BACKENDS = sorted(_kernels.BACKENDS)


def floyd_warshall(g):
    """Hop distances by dense Floyd-Warshall; inf marks unreachable pairs."""
    d = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for i, j in g.edges:
        d[i, j] = d[j, i] = 1.0
    for k in range(g.n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def grounded_resistance(g, i, j):
    """Effective resistance with node ``j`` grounded: inject 1A at ``i`` and
    read its potential from the reduced Laplacian.
    """
    lap = nr.laplacian(g)
    keep = [v for v in range(g.n) if v != j]
    red = lap[np.ix_(keep, keep)]
    rhs = np.zeros(g.n - 1)
    rhs[keep.index(i)] = 1.0
    return float(np.linalg.solve(red, rhs)[keep.index(i)])


def build_corpus(size="small"):
    """Labeled connected graphs covering every generator.

    ``small`` is a quick mix for unit tests; ``full`` has well over 500 graphs.
    """
    reps = 1 if size == "small" else 6
    graphs = []
    for fam, lo in (("path", 2), ("cycle", 3), ("star", 2), ("complete", 2)):
        for n in range(lo, 13 if size == "small" else 31):
            graphs.append((f"{fam}-{n}", nr.make_family(fam, n)))
    seed = 0
    for _ in range(reps):
        for n in (3, 5, 8, 13, 21, 34):
            for _ in range(4):
                graphs.append((f"tree-{n}-{seed}", nr.random_tree(n, seed)))
                seed += 1
        for k in range(3, 9):
            for n in (k + 1, k + 3, 2 * k + 2, 24):
                if (n * k) % 2:
                    n += 1
                graphs.append((f"rr-{n}-{k}-{seed}", nr.random_regular(n, k, seed)))
                seed += 1
        for p in (1, 2, 3, 5, 8):
            for q in (1, 2, 4, 7):
                graphs.append((f"lollipop-{p}-{q}", nr.make_lollipop(p, q)))
        for n in (4, 7, 12, 20, 30):
            for extra in (1, 3, 10):
                if extra <= n * (n - 1) // 2 - (n - 1):
                    graphs.append((f"conn-{n}-{extra}-{seed}", nr.random_connected(n, extra, seed)))
                    seed += 1
    return graphs


@pytest.fixture(scope="session")
def corpus():
    return build_corpus("small")


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


# Acceptance criteria outcomes, printed as one line each at the end of the run.
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[num])
