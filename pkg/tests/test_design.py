import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcoord import design, game, gibbs, graph
from netcoord.graph import GraphError

from .conftest import graphs, thetas


def _exhaustive_variance(g, theta):
    phi = game.ising_potential(g, game.to_spins(game.all_profiles(g.n)), theta)
    return float(np.var(phi))


def test_variance_triangle():
    # |E|/16 + c^2 * 3 * 4 with c = 1/4 - 0.15
    pv = design.potential_variance(graph.complete_graph(3), 0.3)
    assert pv.c == pytest.approx(0.1)
    assert pv.sigma2 == pytest.approx(3 / 16 + 0.01 * 12)
    assert pv.sigma2 == pytest.approx(_exhaustive_variance(graph.complete_graph(3), 0.3))


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=10), thetas)
def test_variance_closed_form(g, theta):
    pv = design.potential_variance(g, theta)
    assert pv.sigma2 == pytest.approx(_exhaustive_variance(g, theta), rel=1e-9, abs=1e-12)
    assert pv.sigma2 == pytest.approx(pv.edge_term + pv.degree_term)


def test_variance_monte_carlo():
    g = graph.erdos_renyi(200, 0.05, 3)
    x = design.sample_ising_potential(g, 0.3, 1, 40_000)
    sigma2 = design.potential_variance(g, 0.3).sigma2
    # sample variance of n draws has sd about sigma2 * sqrt(2 / n) for near-normal data
    assert abs(x.var() - sigma2) < 3 * sigma2 * np.sqrt(2 / x.size)
    assert abs(x.mean()) < 3 * np.sqrt(sigma2 / x.size)


def test_degree_variance():
    assert design.degree_variance(graph.build_k_regular(10, 3)) == 0
    assert design.degree_variance(graph.star_graph(5)) == pytest.approx(np.var([4, 1, 1, 1, 1]))


def _compositions(n, total, lo, hi):
    for d in itertools.product(range(lo, hi + 1), repeat=n):
        if sum(d) == total:
            yield d


@pytest.mark.parametrize("n, m", [(4, 3), (4, 5), (5, 6), (5, 7), (6, 9), (6, 10)])
def test_optimal_degree_sequence_bruteforce(n, m):
    best = min(sum(x * x for x in d) for d in _compositions(n, 2 * m, 1, n - 1))
    seq = design.optimal_degree_sequence(n, m)
    assert seq.sum() == 2 * m
    assert int((seq ** 2).sum()) == best
    assert seq.max() - seq.min() <= 1
    assert design.is_graphical(seq)


def test_optimal_degree_sequence_examples():
    assert design.optimal_degree_sequence(14, 42).tolist() == [6] * 14
    assert design.optimal_degree_sequence(5, 6).tolist() == [2, 2, 2, 3, 3]
    with pytest.raises(GraphError):
        design.optimal_degree_sequence(5, 3)


def _graphical_bruteforce(seq):
    n = len(seq)
    pairs = list(itertools.combinations(range(n), 2))
    for mask in itertools.product((0, 1), repeat=len(pairs)):
        deg = [0] * n
        for (i, j), b in zip(pairs, mask):
            if b:
                deg[i] += 1
                deg[j] += 1
        if deg == list(seq):
            return True
    return False


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_erdos_gallai_bruteforce(seq):
    assert design.is_graphical(seq) == _graphical_bruteforce(seq)


def test_havel_hakimi():
    assert design.havel_hakimi([2, 2, 2]) == graph.complete_graph(3)
    assert np.array_equal(design.havel_hakimi([3, 3, 2, 2, 1, 1]).degrees, [3, 3, 2, 2, 1, 1])
    with pytest.raises(GraphError):
        design.havel_hakimi([3, 1])


def test_realize_connected():
    assert design.realize_degree_sequence([2, 2, 2]) == graph.complete_graph(3)
    g = design.realize_degree_sequence([6] * 14, rng=0)
    assert np.all(g.degrees == 6) and graph.is_connected(g)
    with pytest.raises(GraphError):
        design.realize_degree_sequence([1, 1, 1, 1])  # two disjoint edges only
    with pytest.raises(GraphError):
        design.realize_degree_sequence([2, 2, 2, 0])


@pytest.mark.parametrize("seed", range(10))
def test_realize_repairs_components(seed):
    # [2]*6 lets Havel-Hakimi return two triangles; swaps must join them
    g = design.realize_degree_sequence([2] * 6, rng=seed)
    assert g == graph.relabel(g, np.arange(6))
    assert graph.is_connected(g) and np.all(g.degrees == 2)


def test_gaussian_log_partition_n20():
    g = graph.random_connected_graph(20, 40, 0)
    sigma2 = design.potential_variance(g, 0.3).sigma2
    exact = float(gibbs.log_partition_ising(g, 0.3, 0.1))
    approx = design.gaussian_log_partition(sigma2, 0.1, 20)
    assert abs(approx - exact) / abs(exact) < 0.01


@pytest.mark.parametrize("beta", [0.01, 0.05, 0.1, 0.3])
def test_taylor_remainder(beta):
    g = graph.random_connected_graph(10, 20, 1)
    x = game.ising_potential(g, game.to_spins(game.all_profiles(10)), 0.3)
    C = np.mean(np.abs(x) ** 3 * np.exp(beta * np.abs(x))) / 6
    sigma2 = design.potential_variance(g, 0.3).sigma2
    err = abs(design.exact_mgf(g, 0.3, beta) - design.taylor_mgf_small_beta(sigma2, beta))
    assert err <= C * beta ** 3


def test_partition_ordered_by_variance_all_6_9():
    pairs = list(itertools.combinations(range(6), 2))
    rows = []
    for es in itertools.combinations(pairs, 9):
        g = graph.new_from_edges(6, es)
        if graph.is_connected(g):
            rows.append((design.potential_variance(g, 0.3).sigma2,
                         float(gibbs.log_partition_ising(g, 0.3, 0.05))))
    rows = np.array(rows)
    levels = np.unique(np.round(rows[:, 0], 12))
    lo = [rows[np.isclose(rows[:, 0], v), 1].min() for v in levels]
    hi = [rows[np.isclose(rows[:, 0], v), 1].max() for v in levels]
    assert all(lo[i + 1] > hi[i] for i in range(len(levels) - 1))


def test_poi_regular_pair_zero():
    reg = graph.build_k_regular(12, 3)
    other = graph.build_k_regular(12, 3, seed=5)
    res = design.price_of_irregularity(reg, other, 0.3, 0.5)
    assert res.exact_poi == pytest.approx(0, abs=1e-12)
    assert res.approx_poi == 0 and res.degree_variance == 0


def test_poi_matches_probability_ratio():
    reg = graph.build_k_regular(12, 6)
    irr = graph.random_connected_graph(12, 36, 2)
    res = design.price_of_irregularity(reg, irr, 0.3, 0.5)
    ratio = np.log(gibbs.stationary_prob_star(reg, 0.3, 0.5) / gibbs.stationary_prob_star(irr, 0.3, 0.5))
    assert res.exact_poi == pytest.approx(ratio, abs=1e-12)
    assert res.exact_poi > 0


def test_poi_approx_vanishes_at_half():
    reg = graph.build_k_regular(10, 4)
    irr = graph.random_connected_graph(10, 20, 1)
    assert design.price_of_irregularity(reg, irr, 0.5, 1.0).approx_poi == 0


def test_poi_small_beta_ratio():
    reg = graph.build_k_regular(12, 6)
    ratios = []
    for beta in (0.02, 0.05, 0.1):
        xs = [design.price_of_irregularity(reg, graph.random_connected_graph(12, 36, s), 0.3, beta)
              for s in range(8)]
        ratios.append(sum(r.exact_poi for r in xs) / sum(r.approx_poi for r in xs))
    # higher cumulants push the ratio above 1; it tends to 1 as beta shrinks
    assert ratios[0] < ratios[1] < ratios[2]
    assert abs(ratios[0] - 1) < 0.1


def test_poi_preconditions():
    with pytest.raises(GraphError):
        design.price_of_irregularity(graph.cycle_graph(6), graph.cycle_graph(7), 0.3, 1.0)
    with pytest.raises(GraphError):
        design.price_of_irregularity(graph.cycle_graph(6),
                                     graph.new_from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
                                     0.3, 1.0)


def test_clt_errors():
    with pytest.raises(GraphError):
        design.clt_sample(graph.empty_graph(5), 0.3, 0, samples=2000)
    with pytest.raises(ValueError):
        design.clt_sample(graph.cycle_graph(5), 0.3, 0, samples=10)


def test_clt_report_star_vs_er():
    # a hub dominates the variance on a star; ER degrees stay balanced
    star = design.clt_sample(graph.star_graph(200), 0.3, 0, samples=20_000)
    er = design.clt_sample(graph.erdos_renyi(200, 0.05, 0), 0.3, 0, samples=20_000)
    assert star.max_degree_ratio > er.max_degree_ratio
    assert star.ks_statistic > er.ks_statistic
    assert er.ks_statistic < 0.03
