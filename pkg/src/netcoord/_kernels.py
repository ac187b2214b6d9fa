"""Compiled inner loops: Gray-code profile enumeration and the LLL chain."""

import numba
import numpy as np


@numba.njit(cache=True)
def _ctz(k):
    b = 0
    while (k & 1) == 0:
        k >>= 1
        b += 1
    return b


@numba.njit(cache=True)
def gray_stats(n, indptr, indices, degrees):
    """Edges-inside and degree-mass for every profile, indexed by profile.

    Walks the reflected Gray code so each step flips one agent and costs
    O(degree) to update both integer statistics.
    """
    size = 1 << n
    e_in = np.zeros(size, dtype=np.int32)
    dmass = np.zeros(size, dtype=np.int32)
    state = np.zeros(n, dtype=np.int8)
    e = 0
    dm = 0
    code = 0
    for k in range(1, size):
        b = _ctz(k)
        active = 0
        for p in range(indptr[b], indptr[b + 1]):
            active += state[indices[p]]
        if state[b] == 0:
            state[b] = 1
            e += active
            dm += degrees[b]
        else:
            state[b] = 0
            e -= active
            dm -= degrees[b]
        code ^= 1 << b
        e_in[code] = e
        dmass[code] = dm
    return e_in, dmass


@numba.njit(cache=True)
def gray_histogram(n, indptr, indices, degrees, m, dtot):
    """Counts of (edges-inside, degree-mass) pairs over all 2**n profiles.

    Streams the Gray code without storing per-profile values.
    """
    hist = np.zeros((m + 1, dtot + 1), dtype=np.int64)
    hist[0, 0] = 1
    state = np.zeros(n, dtype=np.int8)
    e = 0
    dm = 0
    for k in range(1, 1 << n):
        b = _ctz(k)
        active = 0
        for p in range(indptr[b], indptr[b + 1]):
            active += state[indices[p]]
        if state[b] == 0:
            state[b] = 1
            e += active
            dm += degrees[b]
        else:
            state[b] = 0
            e -= active
            dm -= degrees[b]
        hist[e, dm] += 1
    return hist


@numba.njit(cache=True)
def run_chain(a, indptr, indices, degrees, theta, beta, agents, uniforms, trace):
    """Asynchronous logit dynamics; ``trace[t]`` receives the profile index
    after step ``t``. ``agents`` and ``uniforms`` hold the pre-drawn randomness.
    ``a`` is updated in place.
    """
    n = a.shape[0]
    idx = 0
    for i in range(n):
        if a[i]:
            idx |= 1 << i
    for t in range(agents.shape[0]):
        i = agents[t]
        s = 0
        for p in range(indptr[i], indptr[i + 1]):
            s += a[indices[p]]
        x = beta * (s - theta * degrees[i])
        if x >= 0:
            p1 = 1.0 / (1.0 + np.exp(-x))
        else:
            ex = np.exp(x)
            p1 = ex / (1.0 + ex)
        new = 1 if uniforms[t] < p1 else 0
        if new != a[i]:
            a[i] = new
            idx ^= 1 << i
        trace[t] = idx


def csr(g):
    """Neighbour lists of ``g`` in compressed-row form."""
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(g.degrees)
    indices = np.fromiter(
        (j for nb in g.neighbors for j in nb), dtype=np.int64, count=int(indptr[-1])
    )
    return indptr, indices
