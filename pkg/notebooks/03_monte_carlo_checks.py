# %% [markdown]
# # Monte Carlo checks of the guarantees
#
# Each bound promises that a single pair fails with probability at most
# 2 / n^(2+beta). Here we count failures over many projections.

# %%
import math

from jlbound import bounds, mcverify
from jlbound.bounds import BoundQuery, Method

q = BoundQuery(50, 0.3, 1)
for m in Method:
    rep = mcverify.run_pair_trials(mcverify.VerifySpec(q, method=m, replicates=40, seed=11))
    print(
        f"{m.value:>9} k={rep.k_used:4d} failures {rep.pair_failures:3d}/{rep.pair_trials}"
        f"  cap {2 / 50**3:.1e}  ok={rep.satisfied}"
    )

# %% [markdown]
# ## Undersized k is caught
#
# Forcing k far below the bound produces a failure rate that the report flags.

# %%
rep = mcverify.run_pair_trials(mcverify.VerifySpec(q, k=40, replicates=20, seed=11))
print(f"k=40: per-pair failure {1 - rep.per_pair_success_rate:.3f}, satisfied={rep.satisfied}")

# %% [markdown]
# ## Chi-square tails
#
# The squared norm of a Gaussian projection of a unit vector is chi-square
# with k degrees of freedom. Compare empirical tails with the exact values.

# %%
for k in (10, 50, 200):
    exact = math.exp(bounds.exact_tail_sum(k, 0.3))
    est = mcverify.estimate_tail_probability(k, 0.3, "both", draws=200_000, seed=k)
    se = mcverify.binomial_se(exact, 200_000)
    print(f"k={k:3d} exact {exact:.5f} empirical {est:.5f} ({(est - exact) / se:+.2f} SE)")
