# %% [markdown]
# # Sampling and applying random projections
#
# Gaussian and Achlioptas matrices, both seeded from one 64-bit master seed.
# Column j of the matrix depends only on (seed, j), so a wider matrix with
# the same seed extends a narrower one.

# %%
import numpy as np

from jlbound import projection
from jlbound.projection import ProjectionSpec

spec = ProjectionSpec(k=4, p=3, distribution="achlioptas", q=3, seed=123)
print(projection.sample_matrix(spec))

# %%
narrow = projection.sample_matrix(ProjectionSpec(k=5, p=100, seed=9))
wide = projection.sample_matrix(ProjectionSpec(k=8, p=100, seed=9))
print("prefix shared:", np.array_equal(wide[:, :5], narrow))

# %% [markdown]
# ## Distortion of one projection
#
# Project 50 points from R^2000 to k = 456 coordinates and look at the
# squared-distance ratios.

# %%
rng = np.random.default_rng(0)
X = rng.standard_normal((50, 2000))
spec = ProjectionSpec(k=456, p=2000, seed=1)
Y = projection.project(X, spec)
ratio = projection.pairwise_distances(Y) ** 2 / projection.pairwise_distances(X) ** 2
print(f"min {ratio.min():.3f}  max {ratio.max():.3f}  mean {ratio.mean():.4f}")

# %% [markdown]
# ## L2 to L1
#
# With scale 1/k the expected L1 norm of the image is sqrt(2/pi) times the
# Euclidean norm of the input.

# %%
spec = ProjectionSpec(k=168, p=2000, pairing="l2l1", seed=2)
Y = projection.project(X, spec)
ratio = projection.pairwise_distances(Y, "l1") / (np.sqrt(2 / np.pi) * projection.pairwise_distances(X))
print(f"min {ratio.min():.3f}  max {ratio.max():.3f}")

# %% [markdown]
# Sparse Achlioptas matrices with large q store only about p*k/q entries.

# %%
spec = ProjectionSpec(k=200, p=5000, distribution="achlioptas", q=50, seed=3)
S = projection.sample_sparse(spec)
print(f"nonzeros {S.nnz} of {spec.p * spec.k} ({S.nnz / (spec.p * spec.k):.3%})")
