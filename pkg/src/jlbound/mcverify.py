"""Monte Carlo checks of the distortion guarantees.

Each replicate draws a fresh projection matrix, projects a fixed point set
and counts the pairs whose projected distance lands inside the two-sided
band. The bounds are one-sided guarantees, so observed failure rates far
below the cap are the expected outcome.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from . import projection
from .bounds import BoundQuery, Method, compute_bound
from .errors import DomainError
from .io import read_csv_matrix
from .numerics import SQRT_2_OVER_PI

__all__ = [
    "SCHEMA_VERSION",
    "VerifySpec",
    "DistortionReport",
    "make_points",
    "pair_successes",
    "run_pair_trials",
    "estimate_tail_probability",
    "binomial_se",
]

SCHEMA_VERSION = 1

PointSource = Literal["gaussian", "hypercube", "file"]
Side = Literal["right", "left", "both"]


@dataclass(frozen=True)
class VerifySpec:
    query: BoundQuery
    method: Method = Method.EXACT
    pairing: str | None = None  # None: the pairing the method's guarantee is stated for
    p: int = 200
    n_points: int | None = None  # None: query.n
    replicates: int = 100
    point_source: PointSource = "gaussian"
    points_path: str | None = None
    distribution: str = "gaussian"
    q: float = 3.0
    seed: int = 0
    k: int | None = None  # overrides the bound method's k

    def __post_init__(self) -> None:
        object.__setattr__(self, "method", Method(self.method))
        if self.replicates < 1:
            raise DomainError("replicates must be >= 1")
        if self.p < 1:
            raise DomainError("p must be >= 1")
        if self.n_points is not None and self.n_points < 2:
            raise DomainError("n_points must be >= 2")
        if self.point_source not in ("gaussian", "hypercube", "file"):
            raise DomainError(f"unknown point source {self.point_source!r}")
        if self.point_source == "file" and not self.points_path:
            raise DomainError("point_source 'file' needs points_path")
        if self.pairing not in (None, "l2l2", "l2l1"):
            raise DomainError(f"unknown pairing {self.pairing!r}")
        if self.k is not None and self.k < 1:
            raise DomainError("k must be >= 1")

    @property
    def resolved_pairing(self) -> str:
        return self.pairing or self.method.pairing


@dataclass(frozen=True)
class DistortionReport:
    k_used: int
    method: str
    pairing: str
    n: int
    n_points: int
    epsilon: float
    beta: float
    replicates: int
    pair_trials: int
    pair_failures: int
    per_pair_success_rate: float
    std_error_per_pair: float
    all_pairs_success_rate: float
    std_error_all_pairs: float
    guaranteed_per_pair: float
    guaranteed_all_pairs: float
    per_pair_ok: bool
    all_pairs_ok: bool
    seed: int

    @property
    def satisfied(self) -> bool:
        return self.per_pair_ok and self.all_pairs_ok

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION}
        out.update(asdict(self))
        out["satisfied"] = self.satisfied
        return out


def binomial_se(rate: float, trials: int) -> float:
    return math.sqrt(max(rate * (1.0 - rate), 0.0) / trials)


def make_points(spec: VerifySpec) -> NDArray[np.float64]:
    if spec.point_source == "file":
        return read_csv_matrix(spec.points_path)
    n = spec.n_points or spec.query.n
    rng = projection.stream(spec.seed, projection.POINTS_STREAM)
    if spec.point_source == "gaussian":
        return rng.standard_normal((n, spec.p))
    return rng.random((n, spec.p))


def pair_successes(
    X: NDArray[np.float64], Y: NDArray[np.float64], epsilon: float, pairing: str
) -> NDArray[np.bool_]:
    """Which pairs of rows keep their distance inside the band after X -> Y.

    L2-L2 compares squared Euclidean distances against (1 +- eps) times the
    original squared distance; L2-L1 compares projected L1 distances against
    (1 +- eps) sqrt(2/pi) times the original Euclidean distance. Bounds are
    inclusive, so coincident points always succeed.
    """
    orig = projection.pairwise_distances(X, "l2")
    if pairing == "l2l2":
        ref = orig**2
        got = projection.pairwise_distances(Y, "l2") ** 2
    elif pairing == "l2l1":
        ref = SQRT_2_OVER_PI * orig
        got = projection.pairwise_distances(Y, "l1")
    else:
        raise DomainError(f"unknown pairing {pairing!r}")
    return ((1.0 - epsilon) * ref <= got) & (got <= (1.0 + epsilon) * ref)


def _replicate_block(task) -> list[tuple[int, bool]]:
    (X, k, distribution, q, pairing, epsilon, seed), reps = task
    n_pairs = X.shape[0] * (X.shape[0] - 1) // 2
    out = []
    for r in reps:
        pspec = projection.ProjectionSpec(
            k=k,
            p=X.shape[1],
            distribution=distribution,
            q=q,
            pairing=pairing,
            seed=projection.derive_seed(seed, projection.REPLICATE_STREAM, r),
        )
        n_ok = int(pair_successes(X, projection.project(X, pspec), epsilon, pairing).sum())
        out.append((n_ok, n_ok == n_pairs))
    return out


def run_pair_trials(spec: VerifySpec, jobs: int = 1, points: NDArray | None = None) -> DistortionReport:
    """Estimate per-pair and all-pairs success rates for ``spec``.

    Replicate ``r`` projects with the matrix seeded by
    ``derive_seed(spec.seed, REPLICATE_STREAM, r)``, so the report does not
    depend on ``jobs``; with ``jobs > 1`` blocks of replicates run in worker
    processes and their integer counts are summed.
    """
    q = spec.query
    k = spec.k if spec.k is not None else compute_bound(spec.method, q).k
    pairing = spec.resolved_pairing
    X = make_points(spec) if points is None else np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DomainError("need a 2-D point set with at least two points")
    n_points = X.shape[0]

    args = (X, k, spec.distribution, spec.q, pairing, q.epsilon, spec.seed)
    if jobs > 1 and spec.replicates > 1:
        blocks = [range(lo, min(lo + 16, spec.replicates)) for lo in range(0, spec.replicates, 16)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_replicate_block, [(args, b) for b in blocks])
            results = [r for part in parts for r in part]
    else:
        results = _replicate_block((args, range(spec.replicates)))

    successes = sum(s for s, _ in results)
    all_ok = sum(1 for _, a in results if a)
    trials = spec.replicates * (n_points * (n_points - 1) // 2)
    pp_rate = successes / trials
    ap_rate = all_ok / spec.replicates
    pp_se = binomial_se(pp_rate, trials)
    ap_se = binomial_se(ap_rate, spec.replicates)
    fail_cap = 2.0 * q.n ** -(2.0 + q.beta)
    all_cap = 1.0 - q.n ** -q.beta
    return DistortionReport(
        k_used=k,
        method=spec.method.value,
        pairing=pairing,
        n=q.n,
        n_points=n_points,
        epsilon=q.epsilon,
        beta=q.beta,
        replicates=spec.replicates,
        pair_trials=trials,
        pair_failures=trials - successes,
        per_pair_success_rate=pp_rate,
        std_error_per_pair=pp_se,
        all_pairs_success_rate=ap_rate,
        std_error_all_pairs=ap_se,
        guaranteed_per_pair=1.0 - fail_cap,
        guaranteed_all_pairs=all_cap,
        per_pair_ok=(1.0 - pp_rate) <= fail_cap + 3.0 * pp_se,
        all_pairs_ok=ap_rate >= all_cap - 3.0 * ap_se,
        seed=spec.seed,
    )


def estimate_tail_probability(
    k: int, epsilon: float, side: Side = "both", draws: int = 10**6, seed: int = 0
) -> float:
    """Empirical P[||y||^2 >= k(1+eps)], P[||y||^2 <= k(1-eps)] or their union,
    with ||y||^2 a sum of k squared standard normals."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if draws < 10**4:
        raise DomainError("draws must be >= 10^4")
    if side not in ("right", "left", "both"):
        raise DomainError(f"unknown side {side!r}")
    hi, lo = k * (1.0 + epsilon), k * (1.0 - epsilon)
    chunk = max(1, 4_000_000 // k)
    hits = 0
    done = 0
    i = 0
    while done < draws:
        m = min(chunk, draws - done)
        z = projection.stream(seed, projection.TAIL_STREAM, i).standard_normal((m, k))
        ss = np.einsum("ij,ij->i", z, z)
        if side == "right":
            hits += int(np.count_nonzero(ss >= hi))
        elif side == "left":
            hits += int(np.count_nonzero(ss <= lo))
        else:
            hits += int(np.count_nonzero((ss >= hi) | (ss <= lo)))
        done += m
        i += 1
    return hits / draws
