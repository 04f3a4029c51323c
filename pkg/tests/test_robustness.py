import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netrobust as nr
from netrobust.graph import is_complete, is_tree

from conftest import floyd_warshall


def test_h_expected_two_nodes():
    k2 = nr.make_family("path", 2)
    assert nr.h_expected(k2) == pytest.approx(1 / 8)
    assert nr.h_expected(k2.with_weights([0.5])) == pytest.approx(1 / 4)
    assert nr.h_expected(k2, [4.0]) == pytest.approx(1 / 32)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), alpha=st.sampled_from([0.5, 2.0, 10.0, 3.7]))
def test_h_expected_scaling(seed, alpha):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 15))
    g = nr.random_connected(n, min(int(rng.integers(0, 6)), (n - 1) * (n - 2) // 2), seed)
    w = rng.uniform(0.05, 1.0, size=g.num_edges)
    assert nr.h_expected(g, alpha * w) == pytest.approx(nr.h_expected(g, w) / alpha, rel=1e-9)


def test_h_star_table_values():
    assert nr.h_star(nr.make_family("path", 20)) == pytest.approx(1.6625, rel=1e-9)
    assert nr.h_star(nr.make_family("star", 20)) == pytest.approx(0.45125, rel=1e-9)
    assert nr.h_star(nr.make_family("complete", 20)) == pytest.approx(0.02375, rel=1e-9)


def test_h_star_ignores_weights():
    g = nr.make_family("cycle", 6)
    gw = g.with_weights([0.3] * 6)
    assert nr.h_star(gw) == nr.h_star(g)
    assert nr.h_expected(gw) == pytest.approx(nr.h_star(g) / 0.3)


def test_disconnected_raises():
    g = nr.Graph(4, [(0, 1), (2, 3)])
    for fn in (nr.h_star, nr.h_expected, nr.kirchhoff_from_spectrum, nr.kirchhoff_from_resistances,
               nr.degree_distance_bounds, nr.sparsity_ratios, nr.spectral_gap_bound, nr.analyze):
        with pytest.raises(nr.DisconnectedGraphError):
            fn(g)


def test_closed_forms():
    assert nr.h_star_closed_form("complete", 100) == pytest.approx(0.00495)
    assert nr.h_star_closed_form("cycle", 3) == pytest.approx(1 / 9)
    assert nr.h_star_closed_form("complete", 3) == pytest.approx(1 / 9)
    assert nr.h_star_closed_form("path", 60) == pytest.approx(3599 / 720)
    assert round(nr.h_star_closed_form("path", 60), 2) == 5.0  # published as 4.99
    with pytest.raises(nr.InvalidFamilyError):
        nr.h_star_closed_form("wheel", 5)
    with pytest.raises(nr.InvalidSizeError):
        nr.h_star_closed_form("cycle", 2)


def test_kirchhoff_examples():
    p20 = nr.make_family("path", 20)
    brute = floyd_warshall(p20)[np.triu_indices(20, 1)].sum()
    assert brute == 1330
    assert nr.kirchhoff_from_spectrum(p20) == pytest.approx(1330, rel=1e-9)
    assert nr.kirchhoff_from_resistances(p20) == pytest.approx(1330, rel=1e-9)
    k3 = nr.make_family("complete", 3)
    assert nr.kirchhoff_from_spectrum(k3) == pytest.approx(2)
    assert nr.kirchhoff_from_resistances(k3) == pytest.approx(2)


def test_kirchhoff_dual_route_and_h_star_link(corpus):
    for _, g in corpus:
        kf = nr.kirchhoff_from_spectrum(g)
        assert nr.kirchhoff_from_resistances(g) == pytest.approx(kf, rel=1e-8)
        assert kf == pytest.approx(2 * g.n ** 2 * nr.h_star(g), rel=1e-9)


def test_kirchhoff_on_trees_equals_distance_sum():
    for seed in range(20):
        t = nr.random_tree(2 + 2 * seed, seed)
        dsum = floyd_warshall(t)[np.triu_indices(t.n, 1)].sum()
        assert nr.kirchhoff_from_resistances(t) == pytest.approx(dsum, rel=1e-9)
        assert nr.kirchhoff_from_spectrum(t) == pytest.approx(dsum, rel=1e-9)


def test_bounds_published_instance():
    lower, upper = nr.degree_distance_bounds(nr.random_regular(20, 3, 0))
    assert lower == pytest.approx(361 / 2400)
    assert round(lower, 2) == 0.15
    # with the published sample's average distance of 2.62
    assert 2.62 * 19 / 80 == pytest.approx(0.62225)


def test_bounds_sandwich_and_tightness(corpus):
    for name, g in corpus:
        h = nr.h_star(g)
        lower, upper = nr.degree_distance_bounds(g)
        assert lower <= h * (1 + 1e-9), name
        assert h <= upper * (1 + 1e-9), name
        rep = nr.analyze(g)
        assert rep.lower_tight == is_complete(g), name
        assert rep.upper_tight == is_tree(g), name
        assert rep.h_star == pytest.approx(h, rel=1e-12)


def test_sparsity_ratios(corpus):
    for n in (3, 10, 25):
        star_ratio, complete_ratio = nr.sparsity_ratios(nr.make_family("complete", n))
        assert star_ratio == pytest.approx(n - 1, rel=1e-9)
        assert complete_ratio == pytest.approx(1.0, rel=1e-9)
    for _, g in corpus:
        star_ratio, complete_ratio = nr.sparsity_ratios(g)
        d = nr.average_degree(g)
        assert star_ratio <= d + 1e-9
        assert complete_ratio >= (g.n - 1) / d - 1e-9


def test_spectral_gap_bound(corpus):
    for _, g in corpus:
        assert nr.h_star(g) <= nr.spectral_gap_bound(g) * (1 + 1e-12)


def test_min_degree_and_design_degree():
    assert nr.min_degree_for_alpha(100, 25) == pytest.approx(3.96)
    assert nr.min_degree_for_alpha(250, 25) == pytest.approx(9.96)
    assert nr.min_degree_for_alpha(17, 1) == 16
    with pytest.raises(nr.InvalidParameterError):
        nr.min_degree_for_alpha(10, 0.5)
    assert [nr.design_degree(n, 25) for n in (100, 150, 200, 250)] == [4, 6, 8, 10]
    assert nr.design_degree(101, 25) == 4
    assert nr.design_degree(126, 25) == 5
    with pytest.raises(nr.InvalidParameterError):
        nr.design_degree(75, 25)


def test_regular_vulnerability_bound():
    assert nr.regular_vulnerability_bound(60, 3, 0.01) == pytest.approx(
        59 / (120 * (3 - 2 * math.sqrt(2) - 0.01)))
    assert nr.regular_vulnerability_bound(60, 3, 0.01) == pytest.approx(3.0436, abs=1e-3)  # quoted value is rounded loosely
    big = nr.regular_vulnerability_bound(10**9, 4, 0.1)
    assert big == pytest.approx(1 / (2 * (4 - 2 * math.sqrt(3) - 0.1)), rel=1e-8)
    for eps in (0.0, -0.1, 3 - 2 * math.sqrt(2)):
        with pytest.raises(nr.InvalidParameterError):
            nr.regular_vulnerability_bound(60, 3, eps)
    with pytest.raises(nr.InvalidParameterError):
        nr.regular_vulnerability_bound(60, 2, 0.01)
    assert nr.h_star(nr.random_regular(60, 3, 0)) <= nr.regular_vulnerability_bound(60, 3, 0.01)


def test_tail_exponent():
    assert nr.tail_exponent(4) == 1
    assert nr.tail_exponent(12) == 2
    assert nr.tail_exponent(36) == math.ceil((math.sqrt(35) + 1) / 2) - 1 == 3
    for k in (3, 2, 5):
        with pytest.raises(nr.InvalidParameterError):
            nr.tail_exponent(k)


def test_approximation_bound():
    assert nr.approximation_bound(3).value == pytest.approx(17.49, abs=0.1)
    assert nr.approximation_bound(5).value == 5.0
    assert nr.approximation_bound(15).value == pytest.approx(1.996, abs=0.01)
    vals = [nr.approximation_bound(k).value for k in range(3, 101)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v > 1 for v in vals)
    vals_eps = [nr.approximation_bound(k, 0.1).value for k in range(3, 101)]
    assert all(a > b for a, b in zip(vals_eps, vals_eps[1:]))
    with pytest.raises(nr.InvalidParameterError):
        nr.approximation_bound(3, 0.2)
    with pytest.raises(nr.InvalidParameterError):
        nr.approximation_bound(2, 0.0)


def test_bridged_kirchhoff_estimate_verbatim():
    assert nr.bridged_kirchhoff_estimate(1, 1, 0, 0) == pytest.approx(1.0)
    assert nr.kirchhoff_from_spectrum(nr.make_family("path", 2)) == pytest.approx(1.0)
    assert nr.bridged_kirchhoff_estimate(2, 1, 1, 0) == pytest.approx(2.75)
    assert nr.kirchhoff_from_spectrum(nr.make_family("path", 3)) == pytest.approx(4.0)
    assert nr.bridged_kirchhoff_estimate(3, 1, 2, 0) == pytest.approx(38 / 9)
    pendant = nr.make_lollipop(3, 1)
    assert nr.kirchhoff_from_resistances(pendant) == pytest.approx(19 / 3)


def test_dense_fragile_lollipop():
    g = nr.dense_fragile_lollipop(40, 2)
    assert g == nr.make_lollipop(20, 20)
    hs = [nr.h_star(nr.dense_fragile_lollipop(n, 2)) for n in (40, 80, 160)]
    assert hs[0] < hs[1] < hs[2]
    for n in (100, 150, 200):
        g = nr.dense_fragile_lollipop(n, 2)
        assert nr.average_degree(g) / (n - 1) >= 1 / 8 - 0.05
    with pytest.raises(nr.InvalidParameterError):
        nr.dense_fragile_lollipop(3, 1.0)
    with pytest.raises(nr.InvalidParameterError):
        nr.dense_fragile_lollipop(2, 2)


def test_report_fields():
    rep = nr.analyze(nr.make_family("path", 20))
    assert rep.h_star == pytest.approx(1.6625)
    assert rep.upper_tight and not rep.lower_tight
    assert rep.kirchhoff == pytest.approx(1330)
    assert rep.diameter == 19
    rep = nr.analyze(nr.make_family("complete", 20))
    assert rep.lower_tight and not rep.upper_tight
    rep = nr.analyze(nr.make_family("path", 2))
    assert rep.lower_tight and rep.upper_tight
