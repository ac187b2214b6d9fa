# %% [markdown]
# # Denser regular graphs coordinate sooner
#
# Circulant K-regular graphs on 14 vertices. For each K we compute the exact
# stationary probability of all-ones and the smallest rationality beta_min at
# which it reaches 1 - delta. The closed-form upper bound on beta_min scales
# as 1/K.

# %%
import numpy as np

from netcoord import gibbs, graph

n, theta, delta = 14, 0.3, 0.1

# %%
betas = np.linspace(0, 3, 61)
for k in (3, 5, 7, 9, 11, 13):
    mu = gibbs.stationary_prob_star(graph.build_k_regular(n, k), theta, betas)
    print(f"K={k:>2}: mu(1) at beta=0.5, 1, 2, 3 ->", np.round(mu[[10, 20, 40, 60]], 4))

# %%
print(" K   beta_min   bound")
for k in range(3, n):
    g = graph.build_k_regular(n, k)
    exact = gibbs.beta_min(g, theta, delta).beta_min
    bound = gibbs.beta_min_upper_bound(k, n, theta, delta)
    print(f"{k:>2}  {exact:9.4f}  {bound:7.4f}")

# %% [markdown]
# Adding any edge to a connected graph raises mu(1). Start from a random
# spanning tree and add edges one at a time.

# %%
rng = np.random.default_rng(0)
g = graph.random_spanning_tree(10, rng)
for _ in range(8):
    print(f"|E|={g.m:>2}  mu(1)={gibbs.stationary_prob_star(g, theta, 1.0):.5f}")
    free = graph.non_edges(g)
    g = graph.add_edge_successor(g, *free[rng.integers(len(free))])

# %% [markdown]
# Augmenting a regular graph through its complement keeps it regular, but
# it is not always possible: here the complement is two disjoint 7-cycles.

# %%
try:
    graph.augment_regular(graph.build_k_regular(14, 11))
except graph.GraphError as exc:
    print("augment failed:", exc)
