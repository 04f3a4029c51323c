"""Undirected simple graphs, standard generators and hop-distance statistics."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import (
    DisconnectedGraphError,
    EdgeListParseError,
    InvalidDegreeError,
    InvalidFamilyError,
    InvalidGraphError,
    InvalidNodeError,
    InvalidSizeError,
    ParityError,
)

log = logging.getLogger(__name__)

FAMILIES = ("path", "cycle", "star", "complete")
_MIN_SIZE = {"path": 2, "cycle": 3, "star": 2, "complete": 2}

# Above this degree the pairing model rarely yields a simple graph
# (acceptance ~ exp(-(k^2 - 1) / 4)), so incremental pairing is used.
MAX_RESTART_DEGREE = 6


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on nodes ``0..n-1``.

    ``edges`` is stored canonically: each pair as ``(i, j)`` with ``i < j``,
    sorted lexicographically. ``weights`` is ``None`` for an unweighted graph,
    otherwise a tuple aligned with ``edges`` whose entries lie in (0, 1].
    Edges may be passed in any order or orientation; ``weights`` may also be
    a mapping from pair to weight.
    """

    n: int
    edges: tuple = ()
    weights: tuple | None = None

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
            raise InvalidSizeError(f"node count must be an integer >= 1, got {n!r}")
        raw = [(int(i), int(j)) for i, j in self.edges]
        weights = self.weights
        if isinstance(weights, Mapping):
            lookup = {(min(e), max(e)): float(w) for e, w in weights.items()}
            try:
                weights = [lookup[(min(e), max(e))] for e in raw]
            except KeyError as exc:
                raise InvalidGraphError(f"no weight given for edge {exc.args[0]}") from None
        elif weights is not None:
            weights = [float(w) for w in weights]
            if len(weights) != len(raw):
                raise InvalidGraphError(
                    f"{len(weights)} weights supplied for {len(raw)} edges"
                )

        canon = []
        for i, j in raw:
            if i == j:
                raise InvalidGraphError(f"self-loop at node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidNodeError(f"edge ({i}, {j}) references a node outside 0..{n - 1}")
            canon.append((i, j) if i < j else (j, i))
        order = sorted(range(len(canon)), key=canon.__getitem__)
        edges = tuple(canon[k] for k in order)
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise InvalidGraphError(f"duplicate edge {a}")
        if weights is not None:
            weights = tuple(weights[k] for k in order)
            for e, w in zip(edges, weights):
                if not (0.0 < w <= 1.0):
                    raise InvalidGraphError(f"weight {w!r} on edge {e} is outside (0, 1]")
            if not weights:
                weights = None  # nothing to weight; keeps edgeless graphs canonical
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def empty(cls, n):
        return cls(n, ())

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def is_weighted(self):
        return self.weights is not None

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, i, j):
        return (min(i, j), max(i, j)) in self.edge_set

    def weight(self, i, j):
        key = (min(i, j), max(i, j))
        if key not in self.edge_set:
            raise InvalidGraphError(f"no edge {key}")
        if self.weights is None:
            return 1.0
        return self.weights[self.edges.index(key)]

    @cached_property
    def weight_array(self) -> np.ndarray:
        """Edge weights aligned with ``edges`` (ones when unweighted)."""
        if self.weights is None:
            w = np.ones(len(self.edges))
        else:
            w = np.array(self.weights, dtype=np.float64)
        w.flags.writeable = False
        return w

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        if self.edges:
            e = np.array(self.edges)
            np.add.at(deg, e[:, 0], 1)
            np.add.at(deg, e[:, 1], 1)
        deg.flags.writeable = False
        return deg

    @cached_property
    def csr(self):
        """Symmetric adjacency in CSR form: ``(indptr, indices, weights)``."""
        n = self.n
        if self.edges:
            e = np.array(self.edges, dtype=np.int64)
            src = np.concatenate([e[:, 0], e[:, 1]])
            dst = np.concatenate([e[:, 1], e[:, 0]])
            w = np.concatenate([self.weight_array, self.weight_array])
            order = np.lexsort((dst, src))
            src, dst, w = src[order], dst[order], w[order]
        else:
            src = dst = np.zeros(0, dtype=np.int64)
            w = np.zeros(0)
        indptr = np.zeros(n + 1, dtype=np.int32)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        out = (indptr, dst.astype(np.int32), np.ascontiguousarray(w, dtype=np.float64))
        for arr in out:
            arr.flags.writeable = False
        return out

    def neighbors(self, i):
        indptr, indices, _ = self.csr
        return indices[indptr[i]:indptr[i + 1]].tolist()

    def unweighted(self) -> Graph:
        return self if self.weights is None else Graph(self.n, self.edges)

    def with_weights(self, weights) -> Graph:
        return Graph(self.n, self.edges, weights)

    def add_edge(self, i, j, weight=None) -> Graph:
        edges = self.edges + ((i, j),)
        if self.weights is None and weight is None:
            return Graph(self.n, edges)
        weights = tuple(self.weight_array) + (1.0 if weight is None else weight,)
        return Graph(self.n, edges, weights)

    def __repr__(self):
        kind = "weighted" if self.is_weighted else "unweighted"
        return f"Graph(n={self.n}, edges={self.num_edges}, {kind})"


@dataclass(frozen=True, eq=False)
class DistanceSummary:
    average_distance: float
    diameter: int
    pairwise: np.ndarray


# ---------------------------------------------------------------------------
# generators


def _path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_family(family: str, n: int) -> Graph:
    """Standard unweighted ``path``, ``cycle``, ``star`` (hub 0) or ``complete`` graph."""
    if family not in _MIN_SIZE:
        raise InvalidFamilyError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < _MIN_SIZE[family]:
        raise InvalidSizeError(f"{family} graph needs n >= {_MIN_SIZE[family]}, got {n}")
    if family == "path":
        return _path(n)
    if family == "cycle":
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "star":
        return Graph(n, [(0, i) for i in range(1, n)])
    return _complete(n)


def bridge(g1: Graph, g2: Graph, u: int, v: int) -> Graph:
    """Join two disjoint graphs with the single edge ``(u, v + g1.n)``.

    Nodes of ``g2`` are relabeled by offset ``g1.n``. Weights carry over;
    the bridge edge gets weight 1.
    """
    if not 0 <= u < g1.n:
        raise InvalidNodeError(f"bridge node u={u} not in first graph (n={g1.n})")
    if not 0 <= v < g2.n:
        raise InvalidNodeError(f"bridge node v={v} not in second graph (n={g2.n})")
    off = g1.n
    edges = list(g1.edges) + [(i + off, j + off) for i, j in g2.edges] + [(u, v + off)]
    if g1.weights is None and g2.weights is None:
        return Graph(g1.n + g2.n, edges)
    weights = list(g1.weight_array) + list(g2.weight_array) + [1.0]
    return Graph(g1.n + g2.n, edges, weights)


def make_lollipop(p: int, q: int) -> Graph:
    """Complete graph K_p bridged from its node 0 to an endpoint of the path P_q."""
    if p < 1 or q < 1:
        raise InvalidSizeError(f"lollipop needs p >= 1 and q >= 1, got p={p}, q={q}")
    return bridge(_complete(p), _path(q), 0, 0)


def _pairing_attempt(n, k, rng):
    stubs = np.repeat(np.arange(n), k)
    perm = rng.permutation(stubs)
    a, b = perm[0::2], perm[1::2]
    if np.any(a == b):
        return None
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    keys = lo * n + hi
    if np.unique(keys).size != keys.size:
        return None
    return list(zip(lo.tolist(), hi.tolist()))


def _has_suitable_pair(points, adj):
    nodes = sorted(set(points))
    for x, u in enumerate(nodes):
        for v in nodes[x + 1:]:
            if v not in adj[u]:
                return True
    return False


def _incremental_attempt(n, k, rng):
    # Steger-Wormald: pair uniformly random stubs, rejecting only the
    # offending pair; restart when no admissible pair remains.
    points = np.repeat(np.arange(n), k).tolist()
    adj = [set() for _ in range(n)]
    edges = []
    while points:
        m = len(points)
        for _ in range(4 * m):
            i, j = rng.integers(m, size=2)
            if i == j:
                continue
            u, v = points[i], points[j]
            if u != v and v not in adj[u]:
                break
        else:
            if not _has_suitable_pair(points, adj):
                return None
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v))
        for idx in sorted((i, j), reverse=True):
            points[idx] = points[-1]
            points.pop()
    return edges


def sample_random_regular(n: int, k: int, seed: int) -> tuple[Graph, int]:
    """Connected simple k-regular graph and the number of connectivity resamples.

    Degrees up to ``MAX_RESTART_DEGREE`` use the pairing model with full
    restart, which is uniform over simple k-regular graphs. Larger degrees
    use incremental pairing (asymptotically uniform).
    """
    if k < 1 or k >= n:
        raise InvalidDegreeError(f"degree must satisfy 1 <= k < n, got n={n}, k={k}")
    if (n * k) % 2:
        raise ParityError(f"n*k must be even for a k-regular graph, got n={n}, k={k}")
    if k == 1 and n > 2:
        raise InvalidDegreeError("a 1-regular graph on more than two nodes is never connected")
    rng = np.random.default_rng(seed)
    attempt = _pairing_attempt if k <= MAX_RESTART_DEGREE else _incremental_attempt
    resamples = 0
    restarts = 0
    while True:
        edges = attempt(n, k, rng)
        if edges is None:
            restarts += 1
            continue
        g = Graph(n, edges)
        if is_connected(g):
            log.debug("random_regular(n=%d, k=%d, seed=%s): %d restarts, %d connectivity resamples",
                      n, k, seed, restarts, resamples)
            return g, resamples
        resamples += 1


def random_regular(n: int, k: int, seed: int) -> Graph:
    return sample_random_regular(n, k, seed)[0]


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree on ``n`` nodes (Pruefer decoding)."""
    if n < 1:
        raise InvalidSizeError(f"tree needs n >= 1, got {n}")
    if n == 1:
        return Graph.empty(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = np.random.default_rng(seed)
    seq = rng.integers(n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = degree.index(1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return Graph(n, edges)


def random_connected(n: int, extra_edges: int, seed: int) -> Graph:
    """Random tree plus ``extra_edges`` distinct random chords."""
    rng = np.random.default_rng(seed)
    tree = random_tree(n, int(rng.integers(2**31)))
    present = set(tree.edges)
    room = n * (n - 1) // 2 - len(present)
    if extra_edges > room:
        raise InvalidSizeError(f"cannot add {extra_edges} chords; only {room} non-edges available")
    edges = list(present)
    while len(edges) < len(tree.edges) + extra_edges:
        i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
        if (i, j) not in present:
            present.add((i, j))
            edges.append((i, j))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# statistics


def average_degree(g: Graph) -> float:
    return 2.0 * g.num_edges / g.n


def is_connected(g: Graph) -> bool:
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    count = 1
    indptr, indices, _ = g.csr
    while queue:
        u = queue.popleft()
        for v in indices[indptr[u]:indptr[u + 1]]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.n


def require_connected(g: Graph):
    if not is_connected(g):
        raise DisconnectedGraphError(
            f"graph with n={g.n} and {g.num_edges} edges is disconnected"
        )


def distances(g: Graph, backend=None) -> DistanceSummary:
    """All-pairs hop distances by BFS from every node."""
    indptr, indices, _ = g.csr
    pairwise = _kernels.get(backend).bfs_all_pairs(indptr, indices, g.n)
    if (pairwise < 0).any():
        raise DisconnectedGraphError("distances are undefined on a disconnected graph")
    pairwise.flags.writeable = False
    n = g.n
    if n == 1:
        return DistanceSummary(0.0, 0, pairwise)
    total = int(pairwise[np.triu_indices(n, 1)].sum(dtype=np.int64))
    return DistanceSummary(2.0 * total / (n * n - n), int(pairwise.max()), pairwise)


def is_tree(g: Graph) -> bool:
    return g.num_edges == g.n - 1 and is_connected(g)


def is_complete(g: Graph) -> bool:
    return g.num_edges == g.n * (g.n - 1) // 2


# ---------------------------------------------------------------------------
# edge-list persistence


def save_edgelist(g: Graph) -> str:
    lines = [str(g.n)]
    if g.weights is None:
        lines += [f"{i} {j}" for i, j in g.edges]
    else:
        lines += [f"{i} {j} {w!r}" for (i, j), w in zip(g.edges, g.weights)]
    return "\n".join(lines) + "\n"


def load_edgelist(text: str) -> Graph:
    """Parse the edge-list text format.

    First meaningful line is the node count; every further line is ``i j`` or
    ``i j w``. ``#`` starts a comment. A graph is weighted if any line carries
    a weight, in which case missing weights default to 1.
    """
    n = None
    edges = []
    weights = []
    seen = {}
    any_weight = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise EdgeListParseError(lineno, f"expected node count, got {line!r}")
            try:
                n = int(fields[0])
            except ValueError:
                raise EdgeListParseError(lineno, f"node count {fields[0]!r} is not an integer") from None
            if n < 1:
                raise EdgeListParseError(lineno, f"node count must be >= 1, got {n}")
            continue
        if len(fields) not in (2, 3):
            raise EdgeListParseError(lineno, f"expected 'i j' or 'i j w', got {line!r}")
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"node indices must be integers: {line!r}") from None
        if not (0 <= i < n and 0 <= j < n):
            raise EdgeListParseError(lineno, f"node index out of range 0..{n - 1}: {line!r}")
        if i == j:
            raise EdgeListParseError(lineno, f"self-loop at node {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise EdgeListParseError(lineno, f"duplicate edge {key} (first on line {seen[key]})")
        seen[key] = lineno
        w = 1.0
        if len(fields) == 3:
            any_weight = True
            try:
                w = float(fields[2])
            except ValueError:
                raise EdgeListParseError(lineno, f"weight {fields[2]!r} is not a number") from None
            if not (0.0 < w <= 1.0):
                raise EdgeListParseError(lineno, f"weight {w!r} outside (0, 1]")
        edges.append(key)
        weights.append(w)
    if n is None:
        raise EdgeListParseError(0, "no node count found")
    return Graph(n, edges, weights if any_weight else None)


def read_edgelist(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edgelist(fh.read())


def write_edgelist(path, g: Graph):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save_edgelist(g))
