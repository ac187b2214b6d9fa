import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netcoord import game, graph
from netcoord.graph import GraphError

from .conftest import graphs, thetas


def test_pairwise_payoff_table():
    theta = 0.3
    assert game.pairwise_payoff(1, 1, theta) == pytest.approx(0.7)
    assert game.pairwise_payoff(1, 0, theta) == pytest.approx(-0.3)
    assert game.pairwise_payoff(0, 1, theta) == 0
    assert game.pairwise_payoff(0, 0, theta) == 0


def test_utility_triangle(triangle):
    assert game.utility(triangle, [1, 1, 1], 0, 0.3) == pytest.approx(1.4)
    assert game.utility(triangle, [0, 1, 1], 0, 0.3) == 0
    assert game.utility(triangle, [1, 0, 0], 0, 0.3) == pytest.approx(-0.6)


def test_utility_star_centre():
    star = graph.star_graph(5)
    assert game.utility(star, np.ones(5), 0, 0.5) == pytest.approx(2.0)
    assert game.utility(star, np.ones(5), 3, 0.5) == pytest.approx(0.5)


def test_utility_out_of_range(triangle):
    with pytest.raises(IndexError):
        game.utility(triangle, [1, 1, 1], 3, 0.3)


@given(graphs(min_n=1, max_n=7), thetas, st.data())
def test_utility_is_sum_of_pairwise(g, theta, data):
    a = np.array(data.draw(st.lists(st.integers(0, 1), min_size=g.n, max_size=g.n)))
    for i in range(g.n):
        direct = sum(game.pairwise_payoff(a[i], a[j], theta) for j in g.neighbors[i])
        assert game.utility(g, a, i, theta) == pytest.approx(direct, abs=1e-12)


def test_profile_index_roundtrip():
    for n in range(1, 7):
        P = game.all_profiles(n)
        assert P.shape == (1 << n, n)
        for k in range(1 << n):
            assert game.profile_index(P[k]) == k
            assert np.array_equal(game.profile_from_index(k, n), P[k])


def test_spin_roundtrip():
    a = np.array([0, 1, 1, 0])
    assert game.to_spins(a).tolist() == [-1, 1, 1, -1]
    assert np.array_equal(game.from_spins(game.to_spins(a)), a)


def test_potential_reduced_triangle(triangle):
    # one edge inside, degree mass 4
    assert game.potential_reduced(triangle, [1, 1, 0], 0.3) == pytest.approx(-0.2)
    assert game.potential_reduced(triangle, [0, 0, 0], 0.3) == 0


def test_potential_full_triangle(triangle):
    assert game.potential_full(triangle, [1, 1, 1], 0.3) == pytest.approx(2.1)
    assert game.potential_full(triangle, [0, 0, 0], 0.3) == pytest.approx(0.9)


@pytest.mark.parametrize("n, k", [(6, 2), (8, 3), (9, 4), (14, 6)])
def test_all_ones_on_regular(n, k):
    g = graph.build_k_regular(n, k)
    theta = 0.3
    assert game.potential_reduced(g, np.ones(n), theta) == pytest.approx((0.5 - theta) * n * k)


def _matrix_potential(g, a, theta):
    a = np.asarray(a, dtype=float)
    A = g.adjacency.astype(float)
    return a @ A @ a / 2 - theta * np.ones(g.n) @ A @ a


@settings(max_examples=50)
@given(graphs(min_n=1, max_n=7), thetas)
def test_batched_matches_matrix_form(g, theta):
    P = game.all_profiles(g.n)
    red = game.potential_reduced(g, P, theta)
    oracle = np.array([_matrix_potential(g, a, theta) for a in P])
    assert np.allclose(red, oracle, atol=1e-12)
    assert np.allclose(game.potential_full(g, P, theta) - red, theta * g.m)


@settings(max_examples=50)
@given(graphs(min_n=1, max_n=7), thetas)
def test_ising_shift(g, theta):
    P = game.all_profiles(g.n)
    ising = game.ising_potential(g, game.to_spins(P), theta)
    red = game.potential_reduced(g, P, theta)
    assert np.allclose(ising - red, (theta - 0.25) * g.m, atol=1e-12)


def test_ising_extremes():
    g = graph.random_connected_graph(8, 13, 2)
    theta = 0.3
    assert game.ising_potential(g, np.ones(8), theta) == pytest.approx((0.75 - theta) * g.m)
    assert game.ising_potential(g, -np.ones(8), theta) == pytest.approx((theta - 0.25) * g.m)


def test_ising_uniform_mean_zero():
    g = graph.random_connected_graph(9, 16, 5)
    P = game.to_spins(game.all_profiles(9))
    assert abs(game.ising_potential(g, P, 0.3).mean()) < 1e-12


@pytest.mark.parametrize("theta, expected", [
    (-0.5, {(1, 1)}),
    (0.0, {(0, 0), (1, 1)}),
    (0.3, {(0, 0), (1, 1)}),
    (1.0, {(0, 0), (1, 1)}),
    (1.5, {(0, 0)}),
])
def test_pairwise_nash(theta, expected):
    assert game.pairwise_nash_set(theta) == expected
    # brute-force mutual best responses
    bruteforce = set()
    for x, y in itertools.product((0, 1), repeat=2):
        bx = all(game.pairwise_payoff(x, y, theta) >= game.pairwise_payoff(z, y, theta) for z in (0, 1))
        by = all(game.pairwise_payoff(y, x, theta) >= game.pairwise_payoff(z, x, theta) for z in (0, 1))
        if bx and by:
            bruteforce.add((x, y))
    assert bruteforce == expected


@pytest.mark.parametrize("theta", [0.1, 0.3, 0.5, 0.7, 1.2, -0.4])
def test_potential_maximizers_bruteforce(theta):
    for seed in range(5):
        g = graph.random_connected_graph(7, 7 + seed, seed)
        phi = game.potential_reduced(g, game.all_profiles(7), theta)
        best = np.flatnonzero(np.isclose(phi, phi.max(), atol=1e-12))
        expected = frozenset(tuple(game.profile_from_index(k, 7).tolist()) for k in best)
        assert game.potential_maximizers(g, theta) == expected


def test_potential_maximizers_disconnected():
    with pytest.raises(GraphError):
        game.potential_maximizers(graph.new_from_edges(4, [(0, 1)]), 0.3)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=9, connected=True), thetas)
def test_exact_potential_holds(g, theta):
    assert game.verify_exact_potential(g, theta)
    assert game.verify_exact_potential(g, theta, which="full")


def test_exact_potential_negative_control():
    g = graph.random_connected_graph(6, 8, 1)

    def broken(g, a, theta):
        return game.edges_inside(g, a).astype(float)

    assert not game.verify_exact_potential(g, 0.3, which=broken)
    assert game.verify_exact_potential(g, 0.0, which=broken)


def test_exact_potential_rejects_large():
    with pytest.raises(ValueError):
        game.verify_exact_potential(graph.path_graph(21), 0.3)
    with pytest.raises(ValueError):
        game.verify_exact_potential(graph.path_graph(3), 0.3, which="bogus")
