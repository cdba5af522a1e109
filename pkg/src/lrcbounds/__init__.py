"""Asymptotic rate bounds for locally repairable codes."""

from lrcbounds.core_math import (
    WeightEnumerator,
    entropy_q,
    parity_weight_enumerator,
    pq_eval,
    shortened_parity_enumerator,
)
from lrcbounds.large_deviations import (
    FiniteDistribution,
    ball_growth_alpha,
    gamma_rate,
    lambda_growth,
    lambda_star,
    zeta,
    zeta_inv,
)
from lrcbounds.lp_bounds import (
    CurveTable,
    lp_constant_weight_bound,
    lp_rate_bound,
    lower_convex_envelope,
    singleton_plugin,
)
from lrcbounds.disjoint_bounds import r0_lower, r1, r12, r2, r_cm, r_sp
from lrcbounds.wzl_bounds import wzl_direct_oracle, wzl_r0_bar
from lrcbounds.nondisjoint_bounds import (
    hat_derivative_diag,
    r0_hat,
    r1_hat,
    r2_hat,
    r3_hat,
    r_sp_hat,
)
from lrcbounds.special_n3 import (
    MixedAlphabetSpec,
    bhl_mixed_bound,
    n2_bound,
    n3_bound,
    n3_sigma_sweep,
    n3_tau_sweep,
)

__version__ = "0.1.0"
