"""Coordination of boundedly rational agents on networks under log-linear learning."""

from .design import (
    CltReport,
    PoIResult,
    PotentialVariance,
    clt_sample,
    gaussian_log_partition,
    optimal_degree_sequence,
    potential_variance,
    price_of_irregularity,
    realize_degree_sequence,
    taylor_mgf_small_beta,
)
from .game import (
    ising_potential,
    pairwise_nash_set,
    pairwise_payoff,
    potential_full,
    potential_maximizers,
    potential_reduced,
    utility,
    verify_exact_potential,
)
from .gibbs import (
    BetaMinResult,
    GibbsDistribution,
    beta_min,
    beta_min_upper_bound,
    exact_gibbs,
    log_partition,
    log_partition_ising,
    sigmoid_lower_bound_regular,
    spectral_lower_bound,
    spectral_lower_bound_general,
    stationary_prob_star,
)
from .graph import (
    Graph,
    GraphError,
    add_edge_successor,
    augment_regular,
    build_k_regular,
    erdos_renyi,
    is_connected,
    new_from_edges,
    random_connected_graph,
    spectral_radius,
)
from .lll import ChainConfig, EmpiricalDistribution, logit_choice_prob, simulate, step, transition_matrix, tv_distance

__version__ = "0.1.0"
