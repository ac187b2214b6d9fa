# %% [markdown]
# # Log-linear learning and its stationary law
#
# A stag hunt played on every edge of a graph. Each agent picks 0 (safe) or
# 1 (risky). Under log-linear learning one random agent at a time resamples
# its action from a logit of its payoffs. The chain's stationary law is the
# Gibbs distribution of the potential, and this script checks that three
# different ways.

# %%
import numpy as np

from netcoord import game, gibbs, graph, lll

g = graph.cycle_graph(6)
theta, beta = 0.3, 1.0

# %% [markdown]
# The potential is exact: flipping one agent changes it by exactly that
# agent's payoff change.

# %%
print("exact potential:", game.verify_exact_potential(g, theta))
print("maximisers:", game.potential_maximizers(g, theta))

# %% [markdown]
# Exact Gibbs law by Gray-code enumeration, against the transition matrix.

# %%
mu = gibbs.exact_gibbs(g, theta, beta).probabilities
P = lll.transition_matrix(g, theta, beta)
print("|mu P - mu|_1 =", np.abs(mu @ P - mu).sum())
flow = mu[:, None] * P
print("detailed balance residual =", np.abs(flow - flow.T).max())

# %% [markdown]
# A simulated chain converges to the same law.

# %%
for steps in (10_000, 100_000, 1_000_000):
    emp = lll.simulate(g, theta, beta, lll.ChainConfig(steps + 600, burn_in=600, seed=1))
    print(f"{steps:>9} steps: TV = {lll.tv_distance(emp.probabilities(), mu):.4f}")

# %% [markdown]
# Probability of the all-ones profile along a beta grid.

# %%
betas = np.linspace(0, 3, 7)
for b, m in zip(betas, gibbs.stationary_prob_star(g, theta, betas)):
    print(f"beta={b:.1f}  mu(1)={m:.5f}")
