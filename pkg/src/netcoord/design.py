"""Network design: potential variance, Gaussian partition approximation,
majorisation-optimal degree sequences and the price of irregularity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import game
from .gibbs import log_partition_ising
from .graph import Graph, GraphError, _as_rng, components, is_connected, new_from_edges


@dataclass(frozen=True)
class PotentialVariance:
    sigma2: float
    edge_term: float
    degree_term: float
    c: float


@dataclass(frozen=True)
class CltReport:
    max_degree_ratio: float
    degree_sum_ratio: float
    ks_statistic: float
    sample_count: int


@dataclass(frozen=True)
class PoIResult:
    """``exact_poi = log Z(irregular) - log Z(regular)``; positive when the
    regular graph coordinates better."""

    exact_poi: float
    approx_poi: float
    degree_variance: float


def potential_variance(g: Graph, theta: float) -> PotentialVariance:
    """Variance of the spin potential under uniform random spins."""
    c = 0.25 - theta / 2
    edge_term = g.m / 16
    degree_term = c * c * float(np.sum(g.degrees.astype(float) ** 2))
    return PotentialVariance(edge_term + degree_term, edge_term, degree_term, c)


def degree_variance(g: Graph) -> float:
    """Population variance of the degree sequence."""
    d = g.degrees.astype(float)
    return float(np.mean(d * d) - (2 * g.m / g.n) ** 2)


def optimal_degree_sequence(n: int, m: int) -> np.ndarray:
    """Least-majorised degree sequence with ``n`` entries summing to ``2m``.

    Regular when ``n`` divides ``2m``; otherwise ``floor(2m/n)`` and
    ``ceil(2m/n)`` entries, floors first. Minimises ``sum d_i^2`` because
    that sum is Schur-convex.
    """
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise GraphError(f"m={m} outside [{n - 1}, {n * (n - 1) // 2}]")
    q, r = divmod(2 * m, n)
    return np.array([q] * (n - r) + [q + 1] * r, dtype=np.int64)


def is_graphical(seq) -> bool:
    """Erdos-Gallai test."""
    d = np.sort(np.asarray(seq, dtype=np.int64))[::-1]
    n = d.size
    if n == 0:
        return True
    if d.sum() % 2 or d[-1] < 0 or d[0] > n - 1:
        return False
    csum = np.cumsum(d)
    for k in range(1, n + 1):
        rhs = k * (k - 1) + np.minimum(d[k:], k).sum()
        if csum[k - 1] > rhs:
            return False
    return True


def havel_hakimi(seq) -> Graph:
    """Some simple graph with the given degrees (not necessarily connected)."""
    d = np.asarray(seq, dtype=np.int64)
    if not is_graphical(d):
        raise GraphError(f"degree sequence {d.tolist()} is not graphical")
    residual = d.copy()
    edges = []
    while True:
        v = int(np.argmax(residual))
        k = int(residual[v])
        if k == 0:
            break
        residual[v] = 0
        # highest residual degrees first, ties by index for determinism
        others = np.lexsort((np.arange(d.size), -residual))
        targets = [int(u) for u in others if u != v][:k]
        for u in targets:
            residual[u] -= 1
            edges.append((v, u))
    return new_from_edges(d.size, edges)


def realize_degree_sequence(seq, rng=None, max_swaps: int = 10_000) -> Graph:
    """Connected simple graph with exactly these degrees.

    Havel-Hakimi, then random degree-preserving 2-swaps across components,
    keeping a swap only if it lowers the component count.
    """
    d = np.asarray(seq, dtype=np.int64)
    n = d.size
    g = havel_hakimi(d)
    if n > 1 and (d.min() == 0 or d.sum() < 2 * (n - 1)):
        raise GraphError("no connected realisation: too few edges or an isolated vertex")
    rng = _as_rng(rng)
    edges = set(g.edges)
    comps = components(g)
    swaps = 0
    while len(comps) > 1:
        if swaps >= max_swaps:
            raise GraphError(f"connectivity repair exceeded {max_swaps} swaps")
        swaps += 1
        label = np.empty(n, dtype=np.int64)
        for c, vs in enumerate(comps):
            label[vs] = c
        edge_list = sorted(edges)
        by_comp: dict[int, list] = {}
        for e in edge_list:
            by_comp.setdefault(int(label[e[0]]), []).append(e)
        c1, c2 = rng.choice(sorted(by_comp), size=2, replace=False)
        a, b = by_comp[c1][rng.integers(len(by_comp[c1]))]
        c, dd = by_comp[c2][rng.integers(len(by_comp[c2]))]
        if rng.random() < 0.5:
            c, dd = dd, c
        trial = (edges - {(a, b), (min(c, dd), max(c, dd))}) | {
            (min(a, c), max(a, c)), (min(b, dd), max(b, dd))}
        h = new_from_edges(n, trial)
        new_comps = components(h)
        if len(new_comps) < len(comps):
            edges, comps = set(h.edges), new_comps
    out = new_from_edges(n, edges)
    assert np.array_equal(out.degrees, d) and is_connected(out)
    return out


def gaussian_log_partition(sigma2: float, beta: float, n: int) -> float:
    """``n log 2 + beta^2 sigma2 / 2``: ``log Z`` if the spin potential were Gaussian."""
    return n * np.log(2.0) + 0.5 * beta * beta * sigma2


def taylor_mgf_small_beta(sigma2: float, beta: float) -> float:
    """Second-order expansion ``1 + beta^2 sigma2 / 2`` of the uniform-spin MGF."""
    return 1.0 + 0.5 * beta * beta * sigma2


def exact_mgf(g: Graph, theta: float, beta: float) -> float:
    """``E_S[exp(beta Phi~(S))]`` over uniform spins, by enumeration."""
    return float(np.exp(log_partition_ising(g, theta, beta) - g.n * np.log(2.0)))


def price_of_irregularity(g_regular: Graph, g_irregular: Graph, theta: float,
                          beta: float) -> PoIResult:
    if g_regular.n != g_irregular.n or g_regular.m != g_irregular.m:
        raise GraphError("graphs must share n and |E|")
    if not (is_connected(g_regular) and is_connected(g_irregular)):
        raise GraphError("both graphs must be connected")
    exact = float(log_partition_ising(g_irregular, theta, beta)
                  - log_partition_ising(g_regular, theta, beta))
    var = degree_variance(g_irregular)
    c = 0.25 - theta / 2
    return PoIResult(exact, 0.5 * beta * beta * c * c * g_irregular.n * var, var)


def sample_ising_potential(g: Graph, theta: float, rng, samples: int,
                           chunk: int = 2048) -> np.ndarray:
    """Spin potential at ``samples`` uniform random spin vectors."""
    rng = _as_rng(rng)
    out = np.empty(samples)
    for start in range(0, samples, chunk):
        size = min(chunk, samples - start)
        s = 2 * rng.integers(0, 2, size=(size, g.n), dtype=np.int8) - 1
        out[start:start + size] = game.ising_potential(g, s, theta)
    return out


def clt_sample(g: Graph, theta: float, rng, samples: int = 100_000) -> CltReport:
    """Kolmogorov-Smirnov distance of ``Phi~(S) / sigma`` from ``N(0, 1)``,
    plus the two degree conditions of the martingale CLT."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    pv = potential_variance(g, theta)
    if pv.sigma2 == 0:
        raise GraphError("potential is constant (no edges)")
    sigma = np.sqrt(pv.sigma2)
    z = sample_ising_potential(g, theta, rng, samples) / sigma
    ks = stats.kstest(z, "norm").statistic
    d = g.degrees.astype(float)
    return CltReport(float(d.max() / sigma), float(np.sum(d * d) / pv.sigma2),
                     float(ks), samples)
