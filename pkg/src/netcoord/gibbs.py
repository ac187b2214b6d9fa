"""Exact Gibbs stationary law of log-linear learning, and its analytic bounds.

The reduced potential of a profile is ``e - theta * D`` where ``e`` counts
edges inside the active set and ``D = sum_i d_i a_i``; both are integers. A
Gray-code walk produces them exactly, and their joint histogram is enough to
get ``log Z`` for any ``(theta, beta)`` without storing ``2**n`` weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import log_expit, logsumexp

from . import _kernels, game
from .graph import Graph, GraphError, is_connected, spectral_radius

MAX_DENSE_N = 26
MAX_STREAM_N = 30
POTENTIALS = ("reduced", "full", "ising")


@dataclass(frozen=True)
class GibbsDistribution:
    """Stationary law over all ``2**n`` profiles.

    Entry ``k`` of ``log_weights`` is ``beta * potential`` at the profile with
    index ``k``; for ``potential == "ising"`` that profile is read as spins
    ``s = 2a - 1``.
    """

    n: int
    theta: float
    beta: float
    potential: str
    log_weights: np.ndarray
    log_partition: float

    @property
    def probabilities(self) -> np.ndarray:
        return np.exp(self.log_weights - self.log_partition)

    def log_prob(self, a) -> float:
        k = a if isinstance(a, (int, np.integer)) else game.profile_index(a)
        return float(self.log_weights[k] - self.log_partition)

    def prob(self, a) -> float:
        return float(np.exp(self.log_prob(a)))


@dataclass(frozen=True)
class BetaMinResult:
    beta_min: float
    delta: float
    achieved_mu: float
    iterations: int


@dataclass(frozen=True)
class DensityOfStates:
    """Multiplicities of (edges-inside, degree-mass) over all profiles."""

    n: int
    m: int
    edges_in: np.ndarray
    degree_mass: np.ndarray
    counts: np.ndarray

    def energies(self, theta: float, potential: str = "reduced") -> np.ndarray:
        return _potential_from_stats(self.edges_in, self.degree_mass, theta, self.m, potential)

    def log_partition(self, theta: float, beta, potential: str = "reduced"):
        beta = np.asarray(beta, dtype=float)
        lw = beta[..., None] * self.energies(theta, potential)
        return logsumexp(lw, b=self.counts, axis=-1)


def _potential_from_stats(e, dmass, theta, m, potential):
    base = e - theta * dmass
    if potential == "reduced":
        return base
    if potential == "full":
        return base + theta * m
    if potential == "ising":
        # s = 2a - 1 turns s^T A s / 8 + c 1^T A s into base + (theta - 1/4)|E|.
        return base + (theta - 0.25) * m
    raise ValueError(f"potential must be one of {POTENTIALS}, got {potential!r}")


def _check_beta(beta):
    if np.any(np.asarray(beta) < 0):
        raise ValueError("beta must be nonnegative")


def gray_code_stats(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Per-profile (edges-inside, degree-mass) via incremental Gray-code updates."""
    if g.n > MAX_DENSE_N:
        raise ValueError(f"n={g.n} exceeds dense enumeration cap {MAX_DENSE_N}")
    indptr, indices = _kernels.csr(g)
    return _kernels.gray_stats(g.n, indptr, indices, g.degrees)


def naive_log_weights(g: Graph, theta: float, beta: float, potential="reduced",
                      chunk: int = 1 << 15) -> np.ndarray:
    """Direct per-profile evaluation of the potential functions; reference path."""
    fn = {
        "reduced": game.potential_reduced,
        "full": game.potential_full,
        "ising": lambda g, a, t: game.ising_potential(g, game.to_spins(a), t),
    }[potential]
    out = np.empty(1 << g.n)
    cols = np.arange(g.n)
    for start in range(0, 1 << g.n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << g.n), dtype=np.int64)
        bits = (idx[:, None] >> cols) & 1
        out[start:start + idx.size] = beta * fn(g, bits, theta)
    return out


def exact_gibbs(g: Graph, theta: float, beta: float, potential: str = "reduced",
                method: str = "gray") -> GibbsDistribution:
    """Full stationary distribution by enumeration (``n <= 26``).

    ``method="naive"`` evaluates every profile independently instead of
    walking the Gray code; the two agree exactly for the reduced potential.
    """
    _check_beta(beta)
    if g.n > MAX_DENSE_N:
        raise ValueError(f"n={g.n} exceeds dense enumeration cap {MAX_DENSE_N}")
    if method == "gray":
        e, dmass = gray_code_stats(g)
        lw = beta * _potential_from_stats(e, dmass, theta, g.m, potential)
    elif method == "naive":
        lw = naive_log_weights(g, theta, beta, potential)
    else:
        raise ValueError(f"unknown method {method!r}")
    return GibbsDistribution(g.n, theta, beta, potential, lw, float(logsumexp(lw)))


@lru_cache(maxsize=512)
def density_of_states(g: Graph) -> DensityOfStates:
    if g.n > MAX_STREAM_N:
        raise ValueError(f"n={g.n} exceeds streaming enumeration cap {MAX_STREAM_N}")
    indptr, indices = _kernels.csr(g)
    hist = _kernels.gray_histogram(g.n, indptr, indices, g.degrees, g.m, 2 * g.m)
    e, dmass = np.nonzero(hist)
    return DensityOfStates(g.n, g.m, e, dmass, hist[e, dmass].astype(float))


def log_partition(g: Graph, theta: float, beta, potential: str = "reduced"):
    """``log Z`` by streamed enumeration; ``beta`` may be an array."""
    _check_beta(beta)
    return density_of_states(g).log_partition(theta, beta, potential)


def log_partition_ising(g: Graph, theta: float, beta):
    """``log`` of the spin-parameterised partition function ``sum_s exp(beta * Phi~(s))``."""
    return log_partition(g, theta, beta, potential="ising")


def star_profile(g: Graph, theta: float) -> np.ndarray:
    """The maximiser reported as ``a*``; ties at ``theta = 1/2`` go to all-ones."""
    return np.ones(g.n, dtype=np.int64) if theta <= 0.5 else np.zeros(g.n, dtype=np.int64)


def stationary_prob_star(g: Graph, theta: float, beta):
    """``mu(a* | beta)`` on a connected graph; vectorised over ``beta``."""
    if not is_connected(g):
        raise GraphError("stationary_prob_star needs a connected graph")
    _check_beta(beta)
    beta_arr = np.asarray(beta, dtype=float)
    phi_star = g.m * (1 - 2 * theta) if theta <= 0.5 else 0.0
    out = np.exp(beta_arr * phi_star - log_partition(g, theta, beta_arr))
    return float(out) if out.ndim == 0 else out


def coordination_mass(g: Graph, theta: float, beta):
    """``mu(0) + mu(1)``, the mass on both coordinated profiles."""
    _check_beta(beta)
    b = np.asarray(beta, dtype=float)
    lz = log_partition(g, theta, b)
    out = np.exp(-lz) + np.exp(b * g.m * (1 - 2 * theta) - lz)
    return float(out) if out.ndim == 0 else out


def beta_min(g: Graph, theta: float, delta: float, tol: float = 1e-6,
             max_doublings: int = 60) -> BetaMinResult:
    """Smallest rationality with ``mu(a*) >= 1 - delta``, by bisection.

    Valid because ``mu(a*)`` is strictly increasing in ``beta``. The returned
    ``beta_min`` is the upper end of the final bracket, so it always meets
    the target.
    """
    if theta == 0.5:
        raise ValueError("beta_min is undefined at theta = 1/2 (two maximisers)")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if g.n > MAX_STREAM_N:
        raise ValueError(f"n={g.n} exceeds streaming enumeration cap {MAX_STREAM_N}")
    target = 1 - delta

    def mu(b):
        return stationary_prob_star(g, theta, b)

    mu0 = mu(0.0)
    if mu0 >= target:
        return BetaMinResult(0.0, delta, mu0, 0)
    lo, hi = 0.0, 1.0
    for _ in range(max_doublings):
        if mu(hi) >= target:
            break
        lo, hi = hi, 2 * hi
    else:
        raise ArithmeticError("could not bracket beta_min")
    it = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mu(mid) >= target:
            hi = mid
        else:
            lo = mid
        it += 1
    return BetaMinResult(hi, delta, mu(hi), it)


def beta_min_upper_bound(k: int, n: int, theta: float, delta: float) -> float:
    """Closed-form upper bound on ``beta_min`` for a connected ``k``-regular graph."""
    if theta == 0.5:
        raise ValueError("bound is undefined at theta = 1/2")
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if k < 1:
        raise ValueError("k must be at least 1")
    L = np.log1p(-delta) / n
    return float((L - np.log(-np.expm1(L))) / abs((0.5 - theta) * k))


def sigmoid_lower_bound_regular(k: int, n: int, theta: float, beta):
    """``sigmoid(beta * k * |1/2 - theta|) ** n``, a lower bound on ``mu(a*)``."""
    out = np.exp(n * log_expit(np.asarray(beta, dtype=float) * k * abs(0.5 - theta)))
    return float(out) if out.ndim == 0 else out


def spectral_lower_bound(g: Graph, theta: float, beta, lam: float | None = None):
    """``sigmoid(beta * lambda_1 * |1 - 2 theta| / 2) ** n`` with ``lambda_1`` the
    adjacency spectral radius."""
    lam = spectral_radius(g) if lam is None else lam
    x = np.asarray(beta, dtype=float) * lam * abs(1 - 2 * theta) / 2
    out = np.exp(g.n * log_expit(x))
    return float(out) if out.ndim == 0 else out


def spectral_lower_bound_general(g: Graph, theta: float, beta, lam: float | None = None):
    """Spectral lower bound on ``mu(a*)`` that holds on irregular graphs too.

    Bounding ``Z`` through ``y^T A y <= lambda_1 |y|^2`` with ``y = a - theta 1``
    and keeping the exact numerator ``exp(beta |E| u^2)``, ``u = max(theta, 1 - theta)``,
    gives ``exp(beta |E| u^2) / (exp(beta lam (1-u)^2 / 2) + exp(beta lam u^2 / 2))**n``.
    On a regular graph this equals :func:`spectral_lower_bound`; otherwise it
    is smaller, and :func:`spectral_lower_bound` can exceed the exact value.
    """
    lam = spectral_radius(g) if lam is None else lam
    b = np.asarray(beta, dtype=float)
    u = max(theta, 1 - theta)
    out = np.exp(b * g.m * u * u - g.n * np.logaddexp(b * lam * (1 - u) ** 2 / 2, b * lam * u * u / 2))
    return float(out) if out.ndim == 0 else out
