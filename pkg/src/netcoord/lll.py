"""Asynchronous log-linear learning and exact chain diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from . import _kernels, game
from .graph import Graph

MAX_TRANSITION_N = 12
MAX_DENSE_COUNTS_N = 20
_BLOCK = 1 << 20


def logit_choice_prob(g: Graph, a, i: int, theta: float, beta: float) -> float:
    """Probability that agent ``i`` picks action 1 given its neighbours.

    Uses ``U_i(0, .) = 0`` so the logit reduces to a sigmoid of
    ``beta * U_i(1, .)``, which does not overflow for large ``beta``.
    """
    if not 0 <= i < g.n:
        raise IndexError(f"agent {i} out of range for n={g.n}")
    a = np.asarray(a)
    s = sum(int(a[j]) for j in g.neighbors[i])
    return float(expit(beta * (s - theta * g.degrees[i])))


def step(g: Graph, a, theta: float, beta: float, rng) -> np.ndarray:
    """One asynchronous update: a uniform agent resamples from its logit kernel."""
    a = np.array(a, dtype=np.int64)
    i = int(rng.integers(g.n))
    a[i] = int(rng.random() < logit_choice_prob(g, a, i, theta, beta))
    return a


@dataclass(frozen=True)
class ChainConfig:
    """``steps`` counts every update, burn-in included.

    ``burn_in=None`` means ``100 * n * max(1, beta)``; ``initial`` is a 0/1
    profile or ``"uniform-random"``.
    """

    steps: int
    burn_in: int | None = None
    seed: int = 0
    initial: object = "uniform-random"

    def resolve_burn_in(self, n: int, beta: float) -> int:
        b = int(100 * n * max(1.0, beta)) if self.burn_in is None else int(self.burn_in)
        if not 0 <= b < self.steps:
            raise ValueError(f"need 0 <= burn_in < steps, got burn_in={b}, steps={self.steps}")
        return b


@dataclass
class EmpiricalDistribution:
    """Visit counts per profile index; dense array for ``n <= 20``, dict otherwise."""

    n: int
    counts: np.ndarray | dict
    total: int
    seeds: list = field(default_factory=list)

    def probabilities(self) -> np.ndarray:
        if isinstance(self.counts, dict):
            p = np.zeros(1 << self.n)
            for k, c in self.counts.items():
                p[k] = c
        else:
            p = self.counts.astype(float)
        return p / self.total

    def frequency(self, a) -> float:
        k = a if isinstance(a, (int, np.integer)) else game.profile_index(a)
        c = self.counts.get(k, 0) if isinstance(self.counts, dict) else self.counts[k]
        return c / self.total

    def merge(self, other: EmpiricalDistribution) -> EmpiricalDistribution:
        """Pool two independent runs on the same graph."""
        if other.n != self.n:
            raise ValueError("cannot merge histograms over different n")
        if isinstance(self.counts, dict):
            counts = dict(self.counts)
            for k, c in other.counts.items():
                counts[k] = counts.get(k, 0) + c
        else:
            counts = self.counts + other.counts
        return EmpiricalDistribution(self.n, counts, self.total + other.total,
                                     self.seeds + other.seeds)


def _initial_profile(g: Graph, initial, rng) -> np.ndarray:
    if isinstance(initial, str):
        if initial != "uniform-random":
            raise ValueError(f"unknown initial condition {initial!r}")
        return rng.integers(0, 2, size=g.n).astype(np.int8)
    a = np.asarray(initial, dtype=np.int8)
    if a.shape != (g.n,) or not np.isin(a, (0, 1)).all():
        raise ValueError("initial profile must be a 0/1 vector of length n")
    return a.copy()


def simulate(g: Graph, theta: float, beta: float, config: ChainConfig) -> EmpiricalDistribution:
    """Run one chain and histogram the profiles visited after burn-in."""
    burn = config.resolve_burn_in(g.n, beta)
    rng = np.random.default_rng(config.seed)
    a = _initial_profile(g, config.initial, rng)
    indptr, indices = _kernels.csr(g)
    dense = g.n <= MAX_DENSE_COUNTS_N
    counts = np.zeros(1 << g.n, dtype=np.int64) if dense else {}
    done = 0
    while done < config.steps:
        size = min(_BLOCK, config.steps - done)
        agents = rng.integers(0, g.n, size=size)
        uniforms = rng.random(size)
        trace = np.empty(size, dtype=np.int64)
        _kernels.run_chain(a, indptr, indices, g.degrees, float(theta), float(beta),
                           agents, uniforms, trace)
        kept = trace[max(0, burn - done):]
        if dense:
            counts += np.bincount(kept, minlength=1 << g.n)
        else:
            keys, c = np.unique(kept, return_counts=True)
            for k, v in zip(keys.tolist(), c.tolist()):
                counts[k] = counts.get(k, 0) + v
        done += size
    return EmpiricalDistribution(g.n, counts, config.steps - burn, [config.seed])


def transition_matrix(g: Graph, theta: float, beta: float) -> np.ndarray:
    """Dense ``2**n x 2**n`` kernel of the asynchronous logit chain (``n <= 12``)."""
    n = g.n
    if n > MAX_TRANSITION_N:
        raise ValueError(f"n={n} exceeds transition-matrix cap {MAX_TRANSITION_N}")
    size = 1 << n
    idx = np.arange(size)
    bits = game.all_profiles(n).astype(np.int64)
    nbr = bits @ g.adjacency
    P = np.zeros((size, size))
    for i in range(n):
        p1 = expit(beta * (nbr[:, i] - theta * g.degrees[i]))
        up = idx | (1 << i)
        down = idx & ~(1 << i)
        np.add.at(P, (idx, up), p1 / n)
        np.add.at(P, (idx, down), (1 - p1) / n)
    return P


def tv_distance(p, q) -> float:
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"support mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())
