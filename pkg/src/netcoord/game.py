"""Stag-hunt payoffs on a graph and their exact potentials.

Action profiles are 0/1 integer arrays of length ``n``; spin profiles are the
matching +/-1 arrays ``s = 2a - 1``. Profile ``a`` is indexed by the integer
whose bit ``i`` is ``a[i]``. Potential functions accept a single profile or a
``(P, n)`` batch.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .graph import Graph, GraphError, is_connected

MAX_VERIFY_N = 20


def profile_from_index(index: int, n: int) -> np.ndarray:
    return ((int(index) >> np.arange(n)) & 1).astype(np.int64)


def profile_index(a) -> int:
    a = np.asarray(a)
    return int(np.dot(a.astype(np.int64), 1 << np.arange(a.size, dtype=np.int64)))


def all_profiles(n: int) -> np.ndarray:
    """``(2**n, n)`` int8 matrix, row ``k`` is the profile with index ``k``."""
    idx = np.arange(1 << n, dtype=np.int64)[:, None]
    return ((idx >> np.arange(n)) & 1).astype(np.int8)


def to_spins(a) -> np.ndarray:
    return 2 * np.asarray(a, dtype=np.int64) - 1


def from_spins(s) -> np.ndarray:
    return (np.asarray(s, dtype=np.int64) + 1) // 2


def pairwise_payoff(a_i: int, a_j: int, theta: float) -> float:
    return a_i * (a_j - theta)


def utility(g: Graph, a, i: int, theta: float) -> float:
    """Payoff of agent ``i``: its action times (active neighbours - theta * degree)."""
    if not 0 <= i < g.n:
        raise IndexError(f"agent {i} out of range for n={g.n}")
    a = np.asarray(a)
    nbr_sum = sum(int(a[j]) for j in g.neighbors[i])
    return int(a[i]) * (nbr_sum - theta * int(g.degrees[i]))


def edges_inside(g: Graph, a) -> np.ndarray | int:
    """Number of edges with both endpoints playing 1."""
    a = np.asarray(a, dtype=np.int64)
    if g.m == 0:
        return np.zeros(a.shape[:-1], dtype=np.int64) if a.ndim > 1 else 0
    e = g.edge_array
    return (a[..., e[:, 0]] * a[..., e[:, 1]]).sum(axis=-1)


def degree_mass(g: Graph, a) -> np.ndarray | int:
    """``sum_i d_i a_i``, i.e. ``1^T A a``."""
    return np.asarray(a, dtype=np.int64) @ g.degrees


def potential_reduced(g: Graph, a, theta: float):
    """``a^T A a / 2 - theta 1^T A a`` (constant term dropped)."""
    return edges_inside(g, a) - theta * degree_mass(g, a)


def potential_full(g: Graph, a, theta: float):
    return potential_reduced(g, a, theta) + theta * g.m


def ising_potential(g: Graph, s, theta: float):
    """``s^T A s / 8 + c 1^T A s`` with ``c = 1/4 - theta/2``."""
    s = np.asarray(s, dtype=np.int64)
    c = 0.25 - theta / 2
    if g.m:
        e = g.edge_array
        pair = (s[..., e[:, 0]] * s[..., e[:, 1]]).sum(axis=-1)
    else:
        pair = np.zeros(s.shape[:-1], dtype=np.int64) if s.ndim > 1 else 0
    return 0.25 * pair + c * (s @ g.degrees)


def pairwise_nash_set(theta: float) -> frozenset:
    if theta > 1:
        return frozenset({(0, 0)})
    if theta < 0:
        return frozenset({(1, 1)})
    return frozenset({(0, 0), (1, 1)})


def potential_maximizers(g: Graph, theta: float) -> frozenset:
    """Global maximisers of the potential on a connected graph, as tuples."""
    if not is_connected(g):
        raise GraphError("potential maximisers are only characterised on connected graphs")
    zeros, ones = (0,) * g.n, (1,) * g.n
    if theta < 0.5:
        return frozenset({ones})
    if theta > 0.5:
        return frozenset({zeros})
    return frozenset({zeros, ones})


def verify_exact_potential(
    g: Graph,
    theta: float,
    which: str | Callable = "reduced",
    atol: float = 1e-9,
) -> bool:
    """Exhaustively check that unilateral flips change the potential by the
    deviator's utility change, for every profile and agent.

    ``which`` is ``"reduced"``, ``"full"``, or a callable
    ``potential(g, profiles, theta)`` evaluated on a ``(P, n)`` batch.
    """
    if g.n > MAX_VERIFY_N:
        raise ValueError(f"n={g.n} exceeds exhaustive limit {MAX_VERIFY_N}")
    pot = {"reduced": potential_reduced, "full": potential_full}.get(which, which)
    if not callable(pot):
        raise ValueError(f"unknown potential {which!r}")
    bits = all_profiles(g.n)
    phi = np.asarray(pot(g, bits, theta), dtype=float)
    idx = np.arange(1 << g.n)
    nbr_sum = bits.astype(np.int64) @ g.adjacency
    for i in range(g.n):
        # U_i(1, a_-i) - U_i(0, a_-i); a_i does not enter the neighbour sum.
        du = nbr_sum[:, i] - theta * g.degrees[i]
        dphi = phi[idx | (1 << i)] - phi[idx & ~(1 << i)]
        if not np.allclose(du, dphi, rtol=0.0, atol=atol):
            return False
    return True
