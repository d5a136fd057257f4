"""Random projection matrices and the maps they define.

Random streams
--------------
All randomness comes from numpy's ``PCG64`` bit generator seeded through
``SeedSequence``. A 64-bit master seed is split into independent child
streams by :func:`stream` using the ``spawn_key`` mechanism: column ``j`` of
a projection matrix draws from ``SeedSequence(seed, spawn_key=(0, j))``.
Gaussian entries use ``Generator.standard_normal`` (numpy's ziggurat);
Achlioptas entries threshold ``Generator.random`` uniforms. Changing any of
this changes every fixture, so it is pinned by hash tests.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.spatial.distance import pdist

from .errors import DomainError

__all__ = [
    "ProjectionSpec",
    "stream",
    "derive_seed",
    "sample_matrix",
    "sample_sparse",
    "project",
    "pairwise_distances",
    "achlioptas_mgf",
]

Distribution = Literal["gaussian", "achlioptas"]
Pairing = Literal["l2l2", "l2l1"]

# spawn_key namespaces, so column streams never collide with other uses
COLUMN_STREAM = 0
REPLICATE_STREAM = 1
POINTS_STREAM = 2
TAIL_STREAM = 3

_U64 = 2**64


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for the child stream ``key`` of ``seed``."""
    if not 0 <= seed < _U64:
        raise DomainError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def derive_seed(seed: int, *key: int) -> int:
    """A 64-bit seed for child stream ``key``; same splitting as :func:`stream`."""
    if not 0 <= seed < _U64:
        raise DomainError("seed must be an unsigned 64-bit integer")
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ProjectionSpec:
    """What to sample: entry distribution, norm pairing, shape ``p x k``, seed.

    ``q`` is the Achlioptas sparsity parameter (ignored for Gaussian). The
    L2-L1 guarantee covers q in {1, 2, 3}; larger q is accepted for sampling.
    """

    k: int
    p: int
    distribution: Distribution = "gaussian"
    q: float = 3.0
    pairing: Pairing = "l2l2"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1 or self.p < 1:
            raise DomainError("k and p must be >= 1")
        if self.distribution not in ("gaussian", "achlioptas"):
            raise DomainError(f"unknown distribution {self.distribution!r}")
        if self.pairing not in ("l2l2", "l2l1"):
            raise DomainError(f"unknown pairing {self.pairing!r}")
        if self.distribution == "achlioptas" and not self.q >= 1:
            raise DomainError("q must be >= 1")
        if not 0 <= self.seed < _U64:
            raise DomainError("seed must be an unsigned 64-bit integer")

    @property
    def scale(self) -> float:
        """1/sqrt(k) for L2-L2, 1/k for L2-L1."""
        return 1.0 / math.sqrt(self.k) if self.pairing == "l2l2" else 1.0 / self.k

    def to_dict(self) -> dict:
        return asdict(self)


def _achlioptas_column(rng: np.random.Generator, p: int, q: float) -> NDArray[np.float64]:
    u = rng.random(p)
    tail = 1.0 / (2.0 * q)
    col = np.zeros(p)
    col[u < tail] = math.sqrt(q)
    col[u >= 1.0 - tail] = -math.sqrt(q)
    return col


def _column(spec: ProjectionSpec, j: int) -> NDArray[np.float64]:
    rng = stream(spec.seed, COLUMN_STREAM, j)
    if spec.distribution == "gaussian":
        return rng.standard_normal(spec.p)
    return _achlioptas_column(rng, spec.p, spec.q)


def sample_matrix(spec: ProjectionSpec) -> NDArray[np.float64]:
    """Dense ``p x k`` random matrix; column j depends only on (seed, j)."""
    out = np.empty((spec.p, spec.k))
    for j in range(spec.k):
        out[:, j] = _column(spec, j)
    return out


def sample_sparse(spec: ProjectionSpec) -> sparse.csc_matrix:
    """Achlioptas matrix in compressed-column form, entry-for-entry equal to
    :func:`sample_matrix`. Worth it only for very sparse designs (q >= 10)."""
    if spec.distribution != "achlioptas":
        raise DomainError("sparse sampling is only defined for achlioptas matrices")
    indptr = [0]
    indices = []
    values = []
    for j in range(spec.k):
        col = _column(spec, j)
        nz = np.flatnonzero(col)
        indices.append(nz)
        values.append(col[nz])
        indptr.append(indptr[-1] + nz.size)
    return sparse.csc_matrix(
        (np.concatenate(values), np.concatenate(indices), np.asarray(indptr)),
        shape=(spec.p, spec.k),
    )


def project(X: NDArray[np.float64], spec: ProjectionSpec, gamma: NDArray | None = None) -> NDArray[np.float64]:
    """Map the rows of ``X`` (n x p) to n x k.

    ``gamma`` may be passed to reuse an already sampled matrix; it must be
    the one :func:`sample_matrix` returns for ``spec``.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != spec.p:
        raise DomainError(f"X must have shape (n, {spec.p}), got {X.shape}")
    if gamma is None:
        gamma = sample_matrix(spec)
    return (X @ gamma) * spec.scale


def pairwise_distances(X: NDArray[np.float64], norm: Literal["l1", "l2"] = "l2") -> NDArray[np.float64]:
    """Condensed distances, pairs ordered (0,1), (0,2), ..., (n-2, n-1)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DomainError("need a 2-D array with at least two rows")
    metric = {"l2": "euclidean", "l1": "cityblock"}.get(norm)
    if metric is None:
        raise DomainError(f"unknown norm {norm!r}")
    return pdist(X, metric=metric)


def achlioptas_mgf(x: float | NDArray, q: float) -> float | NDArray:
    """E[exp(x r)] for one Achlioptas entry r: 1 + (cosh(x sqrt(q)) - 1) / q."""
    return 1.0 + (np.cosh(np.asarray(x) * math.sqrt(q)) - 1.0) / q
