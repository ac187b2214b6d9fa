"""Undirected simple interaction graphs.

Vertices are ``0..n-1``. A :class:`Graph` is immutable once built; every
constructor in this module funnels through :func:`new_from_edges`, so the
structural invariants (no self-loops, symmetric adjacency, handshaking) are
checked in one place.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import networkx as nx
import numpy as np


class GraphError(ValueError):
    """Invalid graph input or an unsatisfiable construction request."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    degrees: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        deg = self.degrees
        deg.setflags(write=False)
        if int(deg.sum()) != 2 * len(self.edges):
            raise AssertionError("handshaking violated")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            A[e[:, 0], e[:, 1]] = 1
            A[e[:, 1], e[:, 0]] = 1
        A.setflags(write=False)
        return A

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` int64 array of edges with ``i < j``."""
        arr = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        arr.setflags(write=False)
        return arr

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def is_regular(self) -> bool:
        return self.n == 0 or bool(np.all(self.degrees == self.degrees[0]))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G


def new_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices.

    Duplicate edges (in either orientation) are silently merged. Self-loops
    and out-of-range endpoints raise :class:`GraphError`.
    """
    n = int(n)
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    canon = set()
    for e in edges:
        i, j = (int(x) for x in e)
        if i == j:
            raise GraphError(f"self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
        canon.add((i, j) if i < j else (j, i))
    ordered = tuple(sorted(canon))
    deg = np.zeros(n, dtype=np.int64)
    for i, j in ordered:
        deg[i] += 1
        deg[j] += 1
    return Graph(n, ordered, deg)


def empty_graph(n: int) -> Graph:
    return new_from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return new_from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> Graph:
    return new_from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs n >= 3")
    return new_from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(n: int) -> Graph:
    """Star ``K_{1,n-1}`` with centre 0."""
    return new_from_edges(n, ((0, j) for j in range(1, n)))


def components(g: Graph) -> list[list[int]]:
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)[0]) == g.n


def relabel(g: Graph, perm) -> Graph:
    """Vertex ``i`` of ``g`` becomes ``perm[i]``."""
    perm = np.asarray(perm)
    return new_from_edges(g.n, ((perm[i], perm[j]) for i, j in g.edges))


def _as_rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def build_k_regular(n: int, k: int, seed=None) -> Graph:
    """Connected ``k``-regular circulant graph on ``n`` vertices.

    Vertex ``i`` is joined to ``i +/- 1, ..., i +/- k//2`` (mod n), plus the
    antipode ``i + n/2`` when ``k`` is odd. If ``seed`` is given, vertex labels
    are shuffled with it.
    """
    if not 0 <= k <= n - 1:
        raise GraphError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    if (n * k) % 2:
        raise GraphError(f"no {k}-regular graph on {n} vertices: n*k is odd")
    if n > 1 and (k == 0 or (k == 1 and n > 2)):
        raise GraphError(f"a {k}-regular graph on {n} vertices is disconnected")
    edges = [(i, (i + s) % n) for i in range(n) for s in range(1, k // 2 + 1)]
    if k % 2:
        edges += [(i, i + n // 2) for i in range(n // 2)]
    g = new_from_edges(n, edges)
    if seed is not None:
        g = relabel(g, _as_rng(seed).permutation(n))
    assert np.all(g.degrees == k)
    return g


def _perfect_matching(G: nx.Graph) -> set:
    M = nx.max_weight_matching(G, maxcardinality=True)
    if 2 * len(M) != G.number_of_nodes():
        raise GraphError("complement has no perfect matching")
    return M


def _two_factor(G: nx.Graph) -> list[tuple[int, int]]:
    # Petersen: orient each component along an Euler circuit, then a perfect
    # matching of the out/in bipartite split picks one out-arc and one in-arc
    # per vertex. The result is a cycle cover with no 2-cycles.
    arcs = []
    for comp in nx.connected_components(G):
        arcs.extend(nx.eulerian_circuit(G.subgraph(comp)))
    B = nx.Graph()
    left = [("out", u) for u in G.nodes]
    B.add_nodes_from(left, bipartite=0)
    B.add_nodes_from((("in", v) for v in G.nodes), bipartite=1)
    B.add_edges_from((("out", u), ("in", v)) for u, v in arcs)
    M = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
    succ = {u: M[("out", u)][1] for (_, u) in left if ("out", u) in M}
    if len(succ) != G.number_of_nodes():
        raise GraphError("complement has no 2-factor")
    return [(u, v) for u, v in succ.items()]


def augment_regular(g: Graph, rng=None) -> Graph:
    """Raise the degree of a connected regular graph using its complement.

    Even ``n``: adds a perfect matching of the complement (degree ``k+1``).
    Odd ``n``: adds a 2-factor of the complement (degree ``k+2``), since no
    ``(k+1)``-regular graph exists.

    The complement of a regular graph need not contain a perfect matching:
    ``K_{3,3}`` has complement ``2 K_3``, and the 11-regular circulant on 14
    vertices has complement ``2 C_7``. No ``(k+1)``-regular supergraph exists
    then, and :class:`GraphError` is raised. A 2-factor always exists for odd
    ``n`` (even-degree regular complement).
    """
    n = g.n
    if not g.is_regular() or not is_connected(g):
        raise GraphError("augment_regular needs a connected regular graph")
    k = int(g.degrees[0]) if n else 0
    if n % 2 == 0 and not k < n - 1:
        raise GraphError(f"even n={n} needs k < n-1, got k={k}")
    if n % 2 == 1 and (k % 2 or not k < n - 2):
        raise GraphError(f"odd n={n} needs even k < n-2, got k={k}")

    order = _as_rng(rng).permutation(n) if rng is not None else np.arange(n)
    comp = nx.Graph()
    comp.add_nodes_from(int(v) for v in order)
    for a in range(n):
        for b in range(a + 1, n):
            u, v = int(order[a]), int(order[b])
            if not g.has_edge(u, v):
                comp.add_edge(u, v)

    extra = _perfect_matching(comp) if n % 2 == 0 else _two_factor(comp)
    out = new_from_edges(n, list(g.edges) + [tuple(e) for e in extra])
    step = 1 if n % 2 == 0 else 2
    if out.m != g.m + step * n // 2 or not np.all(out.degrees == k + step):
        raise AssertionError("augmentation broke regularity")
    return out


def add_edge_successor(g: Graph, i: int, j: int) -> Graph:
    if i == j:
        raise GraphError(f"self-loop at vertex {i}")
    if g.has_edge(i, j):
        raise GraphError(f"edge ({i}, {j}) already present")
    return new_from_edges(g.n, g.edges + ((i, j),))


def non_edges(g: Graph) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if not g.has_edge(i, j)]


def random_spanning_tree(n: int, rng=None) -> Graph:
    """Uniform labelled spanning tree of ``K_n`` via a random Pruefer code."""
    rng = _as_rng(rng)
    if n == 1:
        return empty_graph(1)
    if n == 2:
        return new_from_edges(2, [(0, 1)])
    code = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    np.add.at(degree, code, 1)
    edges = []
    for x in code:
        leaf = int(np.flatnonzero(degree == 1)[0])
        edges.append((leaf, int(x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = np.flatnonzero(degree == 1)
    edges.append((int(u), int(v)))
    return new_from_edges(n, edges)


def random_connected_graph(n: int, m: int, rng=None) -> Graph:
    """Connected graph with exactly ``m`` edges.

    A uniform spanning tree plus ``m - n + 1`` distinct non-edges chosen
    uniformly. This is not uniform over connected graphs with ``m`` edges.
    """
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise GraphError(f"m={m} outside [{n - 1}, {n * (n - 1) // 2}]")
    rng = _as_rng(rng)
    tree = random_spanning_tree(n, rng)
    free = non_edges(tree)
    pick = rng.choice(len(free), size=m - tree.m, replace=False)
    return new_from_edges(n, list(tree.edges) + [free[t] for t in pick])


def erdos_renyi(n: int, p: float, rng=None) -> Graph:
    """``G(n, p)``; connectivity is not enforced."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"p={p} outside [0, 1]")
    rng = _as_rng(rng)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return new_from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def _perron_root(B: np.ndarray, tol: float, max_iter: int) -> float:
    # B is nonnegative and primitive; Collatz-Wielandt bounds bracket the root.
    x = np.ones(B.shape[0])
    for _ in range(max_iter):
        y = B @ x
        ratio = y / x
        lo, hi = ratio.min(), ratio.max()
        if hi - lo <= tol * max(1.0, hi):
            return 0.5 * (lo + hi)
        x = y / np.linalg.norm(y)
    raise ArithmeticError(f"power iteration did not converge in {max_iter} steps")


def spectral_radius(g: Graph, tol: float = 1e-10, max_iter: int = 200_000) -> float:
    """Largest adjacency eigenvalue by power iteration.

    Iterates on ``A + I`` restricted to each component (primitive there, so
    bipartite components do not oscillate) and returns the largest root.
    """
    best = 0.0
    A = g.adjacency.astype(float)
    for comp in components(g):
        if len(comp) == 1:
            continue
        B = A[np.ix_(comp, comp)] + np.eye(len(comp))
        best = max(best, _perron_root(B, tol, max_iter) - 1.0)
    return best


def read_edge_list(path) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"i j"`` (0-based)."""
    tokens = Path(path).read_text().split()
    if len(tokens) < 2:
        raise GraphError("edge list needs a header line 'n m'")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    n, m = nums[0], nums[1]
    body = nums[2:]
    if len(body) != 2 * m:
        raise GraphError(f"header declares {m} edges, found {len(body) / 2:g}")
    return new_from_edges(n, zip(body[0::2], body[1::2]))


def write_edge_list(g: Graph, path) -> None:
    lines = [f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges]
    Path(path).write_text("\n".join(lines) + "\n")
