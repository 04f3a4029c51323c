"""Structural vulnerability of noisy consensus networks and its bounds.

The central quantity is ``h_star(g)``: the smallest steady-state population
variance reachable on ``g`` with edge weights in (0, 1], attained at unit
weights. Everything else here either computes it another way (Kirchhoff
index, effective resistances), bounds it from cheap graph statistics, or
evaluates the guarantee formulas for random regular graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidFamilyError, InvalidParameterError, InvalidSizeError
from .graph import (
    Graph,
    average_degree,
    distances,
    is_complete,
    is_tree,
    make_lollipop,
    require_connected,
)
from .spectral import resistance_matrix, spectrum

EQUALITY_RTOL = 1e-9

_FAMILY_MIN = {"path": 2, "cycle": 3, "star": 2, "complete": 2}


def _spectral_gap_terms(g, weights=None):
    require_connected(g)
    return spectrum(g, weights).nonzero


def h_expected(g: Graph, weights=None) -> float:
    """Steady-state expected population variance ``(1/2n) sum_{i>=2} 1/lambda_i(L_w)``.

    ``weights`` (aligned with ``g.edges``) overrides the graph's weights and
    may be any positive values.
    """
    lam = _spectral_gap_terms(g, weights)
    return float(np.sum(1.0 / lam) / (2.0 * g.n))


def h_star(g: Graph) -> float:
    """Structural vulnerability: ``h_expected`` at unit weights."""
    return h_expected(g.unweighted())


def h_star_closed_form(family: str, n: int) -> float:
    if family not in _FAMILY_MIN:
        raise InvalidFamilyError(f"unknown family {family!r}")
    if n < _FAMILY_MIN[family]:
        raise InvalidSizeError(f"{family} graph needs n >= {_FAMILY_MIN[family]}, got {n}")
    if family == "path":
        return (n * n - 1) / (12.0 * n)
    if family == "cycle":
        return (n * n - 1) / (24.0 * n)
    if family == "star":
        return (n - 1) ** 2 / (2.0 * n * n)
    return (n - 1) / (2.0 * n * n)


def kirchhoff_from_spectrum(g: Graph) -> float:
    lam = _spectral_gap_terms(g.unweighted())
    return float(g.n * np.sum(1.0 / lam))


def kirchhoff_from_resistances(g: Graph) -> float:
    """Sum of pairwise effective resistances, via a projected linear solve."""
    r = resistance_matrix(g.unweighted())
    return float(r[np.triu_indices(g.n, 1)].sum())


def degree_distance_bounds(g: Graph) -> tuple[float, float]:
    """``(lower, upper)`` bracket on ``h_star`` from average degree and distance.

    Lower is tight exactly for complete graphs, upper exactly for trees.
    """
    require_connected(g)
    n = g.n
    if n < 2:
        raise InvalidSizeError("bounds need at least two nodes")
    lower = (n - 1) ** 2 / (2.0 * average_degree(g) * n * n)
    upper = distances(g).average_distance * (n - 1) / (4.0 * n)
    return lower, upper


def spectral_gap_bound(g: Graph) -> float:
    """Upper bound ``(n-1) / (2 n lambda_2)`` obtained by replacing every mode with the slowest."""
    lam = _spectral_gap_terms(g.unweighted())
    return (g.n - 1) / (2.0 * g.n * float(lam[0]))


def sparsity_ratios(g: Graph) -> tuple[float, float]:
    """``(H*(S_n) / H*(g), H*(g) / H*(K_n))``.

    The first never exceeds the average degree of ``g``; the second is never
    below ``(n - 1) / average degree``.
    """
    h = h_star(g)
    n = g.n
    return h_star_closed_form("star", n) / h, h / h_star_closed_form("complete", n)


def min_degree_for_alpha(n: int, alpha: float) -> float:
    """Smallest average degree compatible with ``H*(g) <= alpha * H*(K_n)``."""
    if n < 2:
        raise InvalidParameterError(f"n must be >= 2, got {n}")
    if not alpha >= 1:
        raise InvalidParameterError(f"alpha must be >= 1, got {alpha}")
    return (n - 1) / alpha


def design_degree(n: int, alpha: float) -> int:
    """Regular degree ``ceil((n - 1) / alpha)`` for a sparse design within ``alpha`` of K_n."""
    if not alpha >= 1:
        raise InvalidParameterError(f"alpha must be >= 1, got {alpha}")
    if n < 3 * alpha + 1:
        raise InvalidParameterError(f"need n >= 3*alpha + 1 = {3 * alpha + 1}, got n={n}")
    # (n-1)/alpha can land a hair above an integer in floating point
    q = (n - 1) / alpha
    k = math.ceil(q)
    if k - 1 >= q - 1e-12 * max(1.0, q):
        k -= 1
    return k


def _ramanujan_gap(k):
    return k - 2.0 * math.sqrt(k - 1)


def regular_vulnerability_bound(n: int, k: int, epsilon: float) -> float:
    """High-probability upper bound on ``H*`` of a random k-regular graph on n nodes."""
    if k < 3:
        raise InvalidParameterError(f"k must be >= 3, got {k}")
    gap = _ramanujan_gap(k)
    if not 0 < epsilon < gap:
        raise InvalidParameterError(f"epsilon must lie in (0, {gap:.6g}) for k={k}, got {epsilon}")
    return (n - 1) / (2.0 * n * (gap - epsilon))


def tail_exponent(k: int) -> int:
    """Exponent ``tau`` in the ``1 - O(n^-tau)`` probability for even ``k >= 4``."""
    if k < 4 or k % 2:
        raise InvalidParameterError(f"k must be an even integer >= 4, got {k}")
    return math.ceil((math.sqrt(k - 1) + 1) / 2) - 1


@dataclass(frozen=True)
class BoundCurvePoint:
    k: int
    epsilon: float
    value: float


def approximation_bound(k: int, epsilon: float = 0.0) -> BoundCurvePoint:
    """Factor by which a random k-regular graph's ``H*`` can exceed the best
    graph with average degree ``k``: ``k / (k - 2 sqrt(k-1) - eps) + eps``.
    """
    if k < 3:
        raise InvalidParameterError(f"k must be >= 3, got {k}")
    gap = _ramanujan_gap(k)
    if not 0 <= epsilon < gap:
        raise InvalidParameterError(f"epsilon must lie in [0, {gap:.6g}) for k={k}, got {epsilon}")
    return BoundCurvePoint(k, float(epsilon), k / (gap - epsilon) + epsilon)


def bridged_kirchhoff_estimate(p: int, q: int, kf1: float, kf2: float) -> float:
    """Published closed form for the Kirchhoff index of two graphs joined by one edge.

    Evaluated exactly as printed. It disagrees with direct computation on
    small cases (K_2 bridged to K_1 gives 2.75; the true P_3 value is 4), so
    nothing else in the package relies on it.
    """
    if p < 1 or q < 1:
        raise InvalidParameterError(f"p and q must be >= 1, got p={p}, q={q}")
    if kf1 < 0 or kf2 < 0:
        raise InvalidParameterError("Kirchhoff indices must be non-negative")
    return ((p + q) / p * kf1 + (p + q) / q * kf2
            + (2 * p * p - 3 * p + 1) / (6 * p) + (q - 1) / (q * q) + 1)


def dense_fragile_lollipop(n: int, beta: float) -> Graph:
    """Lollipop with clique ``K_p``, ``p = ceil(n / beta)``, and path ``P_{n-p}``.

    Its average degree stays a fixed fraction of ``n - 1`` while ``H*``
    diverges with ``n``.
    """
    if not beta > 1:
        raise InvalidParameterError(f"beta must exceed 1, got {beta}")
    p = math.ceil(n / beta)
    q = n - p
    if p < 2 or q < 1:
        raise InvalidParameterError(f"n={n}, beta={beta} gives p={p}, q={q}; need p >= 2, q >= 1")
    return make_lollipop(p, q)


@dataclass(frozen=True)
class RobustnessReport:
    n: int
    num_edges: int
    h_star: float
    kirchhoff: float
    lower_bound: float
    upper_bound: float
    avg_degree: float
    avg_distance: float
    diameter: int
    algebraic_connectivity: float
    star_ratio: float
    complete_ratio: float
    lower_tight: bool
    upper_tight: bool
    is_tree: bool
    is_complete: bool


def _close(a, b, rtol=EQUALITY_RTOL):
    return abs(a - b) <= rtol * abs(b)


def analyze(g: Graph) -> RobustnessReport:
    """Every structural measure for one connected graph (weights are ignored)."""
    g = g.unweighted()
    require_connected(g)
    if g.n < 2:
        raise InvalidSizeError("analysis needs at least two nodes")
    lam = spectrum(g).nonzero
    n = g.n
    h = float(np.sum(1.0 / lam) / (2.0 * n))
    dist = distances(g)
    d_avg = average_degree(g)
    lower = (n - 1) ** 2 / (2.0 * d_avg * n * n)
    upper = dist.average_distance * (n - 1) / (4.0 * n)
    return RobustnessReport(
        n=n,
        num_edges=g.num_edges,
        h_star=h,
        kirchhoff=2.0 * n * n * h,
        lower_bound=lower,
        upper_bound=upper,
        avg_degree=d_avg,
        avg_distance=dist.average_distance,
        diameter=dist.diameter,
        algebraic_connectivity=float(lam[0]),
        star_ratio=h_star_closed_form("star", n) / h,
        complete_ratio=h / h_star_closed_form("complete", n),
        lower_tight=_close(lower, h),
        upper_tight=_close(upper, h),
        is_tree=is_tree(g),
        is_complete=is_complete(g),
    )
