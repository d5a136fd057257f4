"""Minimum target dimension k for a random projection, five ways.

Every method takes a :class:`BoundQuery` ``(n, epsilon, beta)``: the per-pair
failure probability is capped at ``2 / n**(2 + beta)``, so the union bound
over all pairs leaves probability at least ``1 - 1 / n**beta`` that every
distance is preserved. ``beta = 0`` gives the classic ``1 - 2/n**2`` per-pair
statements.

========== ======== ==================================================
method     pairing  rule
========== ======== ==================================================
dg         L2-L2    ceil((24 + 12 beta) ln n / (3 eps^2 - 2 eps^3))
theorem1   L2-L2    smallest even k with ((1+eps)/eps) g(k, eps) <= n^-(2+beta)
exact      L2-L2    smallest k with exact chi-square two-sided tail <= 2 n^-(2+beta)
matousek   L2-L1    ceil(C eps^-2 (4 + 2 beta) ln n), C = 1
theorem3   L2-L1    ceil((2 + beta) ln n / -ln A(s*))
========== ======== ==================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import numerics
from .errors import ConvergenceError, DomainError

__all__ = [
    "Method",
    "BoundQuery",
    "BoundResult",
    "dg_bound",
    "g_function",
    "theorem1_bound",
    "exact_tail_sum",
    "exact_right_tail",
    "exact_left_tail",
    "exact_bound",
    "matousek_bound",
    "theorem3_bound",
    "poisson_tail_bound_right",
    "poisson_tail_bound_left",
    "compute_bound",
    "METHODS",
]


class Method(str, Enum):
    DG = "dg"
    THEOREM1 = "theorem1"
    EXACT = "exact"
    MATOUSEK = "matousek"
    THEOREM3 = "theorem3"

    @property
    def pairing(self) -> str:
        """Norm pairing the method's guarantee is stated for."""
        return "l2l1" if self in (Method.MATOUSEK, Method.THEOREM3) else "l2l2"


@dataclass(frozen=True)
class BoundQuery:
    n: int
    epsilon: float
    beta: float = 0.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise DomainError("n must be an integer >= 2")
        if not 0 < self.epsilon < 1:
            raise DomainError("epsilon must be in (0,1)")
        if not self.beta >= 0:
            raise DomainError("beta must be >= 0")

    @property
    def log_cap(self) -> float:
        """ln of the one-sided cap n^-(2+beta)."""
        return -(2.0 + self.beta) * math.log(self.n)


@dataclass
class BoundResult:
    method: Method
    k: int
    intermediates: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "k": self.k,
            "intermediates": dict(self.intermediates),
            "notes": list(self.notes),
        }


def dg_bound(q: BoundQuery) -> BoundResult:
    raw = (24.0 + 12.0 * q.beta) * math.log(q.n) / (3 * q.epsilon**2 - 2 * q.epsilon**3)
    return BoundResult(Method.DG, max(1, math.ceil(raw)), {"k_real": raw})


def g_function(k: int, epsilon: float) -> float:
    """ln g(k, eps), where g = e^{-l} l^{d-1} / (d-1)!, l = k(1+eps)/2, d = k/2."""
    if int(k) != k or k < 2 or k % 2:
        raise DomainError("k must be an even integer >= 2")
    lam1 = k * (1.0 + epsilon) / 2.0
    d = k // 2
    return -lam1 + (d - 1) * math.log(lam1) - numerics.log_gamma(d)


def _theorem1_lhs(k: int, epsilon: float) -> float:
    return math.log((1.0 + epsilon) / epsilon) + g_function(k, epsilon)


def theorem1_bound(q: BoundQuery) -> BoundResult:
    """Smallest even k with ((1+eps)/eps) g(k, eps) <= n^-(2+beta).

    g is decreasing in k, so an exponential bracket followed by bisection on
    the even integers finds the first feasible k.
    """
    cap = q.log_cap
    hi = 2
    while _theorem1_lhs(hi, q.epsilon) > cap:
        hi *= 2
    lo = hi // 2 if hi > 2 else 0  # lo is infeasible (or 0, meaning "none below")
    while hi - lo > 2:
        mid = (lo + hi) // 2
        mid -= mid % 2
        if _theorem1_lhs(mid, q.epsilon) <= cap:
            hi = mid
        else:
            lo = mid
    k = hi
    inter = {
        "g_at_k": g_function(k, q.epsilon),
        "lhs_at_k": _theorem1_lhs(k, q.epsilon),
        "log_threshold": cap,
    }
    if k > 2:
        inter["g_at_k_minus_2"] = g_function(k - 2, q.epsilon)
        inter["lhs_at_k_minus_2"] = _theorem1_lhs(k - 2, q.epsilon)
    return BoundResult(Method.THEOREM1, k, inter)


def exact_right_tail(k: int, epsilon: float) -> float:
    """ln P[chi2_k >= k(1+eps)]."""
    return numerics.log_reg_gamma_upper(k / 2.0, k * (1.0 + epsilon) / 2.0)


def exact_left_tail(k: int, epsilon: float) -> float:
    """ln P[chi2_k <= k(1-eps)]."""
    return numerics.log_reg_gamma_lower(k / 2.0, k * (1.0 - epsilon) / 2.0)


def exact_tail_sum(k: int, epsilon: float) -> float:
    """ln of the exact two-sided chi-square tail P[chi2_k outside (k(1-eps), k(1+eps))]."""
    if int(k) != k or k < 1:
        raise DomainError("k must be an integer >= 1")
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must be in (0,1)")
    return numerics.log_add(exact_right_tail(k, epsilon), exact_left_tail(k, epsilon))


def exact_bound(q: BoundQuery) -> BoundResult:
    """Smallest integer k whose exact two-sided tail is <= 2 n^-(2+beta).

    The search runs over [1, k_theorem1]; the theorem1 k is feasible because
    its bound dominates both exact tails. Monotonicity of the exact tail in k
    is assumed by the bisection and then double-checked by a short scan.
    """
    threshold = math.log(2.0) + q.log_cap

    def feasible(k: int) -> bool:
        return exact_tail_sum(k, q.epsilon) <= threshold

    upper = theorem1_bound(q).k
    if not feasible(upper):
        raise ConvergenceError("theorem1 dimension is not feasible for the exact tails")
    lo, hi = 0, upper
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    k = hi
    for cand in range(max(1, k - 4), k):
        if feasible(cand):
            k = cand
            break

    inter = {
        "log_tail_sum_at_k": exact_tail_sum(k, q.epsilon),
        "right_tail_at_k": math.exp(exact_right_tail(k, q.epsilon)),
        "left_tail_at_k": math.exp(exact_left_tail(k, q.epsilon)),
        "log_threshold": threshold,
        "search_upper": float(upper),
    }
    if k > 1:
        inter["log_tail_sum_at_k_minus_1"] = exact_tail_sum(k - 1, q.epsilon)
    return BoundResult(Method.EXACT, k, inter)


def matousek_bound(q: BoundQuery, C: float = 1.0) -> BoundResult:
    raw = C * (4.0 + 2.0 * q.beta) * math.log(q.n) / q.epsilon**2
    res = BoundResult(Method.MATOUSEK, max(1, math.ceil(raw)), {"k_real": raw, "C": C})
    if q.epsilon >= 0.5:
        res.notes.append("epsilon >= 1/2 lies outside the range this bound is stated for")
    return res


def theorem3_bound(q: BoundQuery) -> BoundResult:
    s_star = numerics.solve_fixed_point_s_star(q.epsilon)
    a_star = numerics.a_function(s_star, q.epsilon)
    if not 0 < a_star < 1:
        raise ConvergenceError(f"A(s*) = {a_star} is not in (0, 1)")
    raw = (2.0 + q.beta) * math.log(q.n) / -math.log(a_star)
    return BoundResult(
        Method.THEOREM3,
        max(1, math.ceil(raw)),
        {"s_star": s_star, "A_at_s_star": a_star, "k_real": raw},
    )


def poisson_tail_bound_right(d: int, lambda1: float) -> float:
    """ln of (l/(l-d)) l^{d-1}/(d-1)!, an upper bound on sum_{y<d} l^y/y!."""
    if int(d) != d or d < 1:
        raise DomainError("d must be an integer >= 1")
    if not lambda1 > d:
        raise DomainError("requires d < lambda1")
    return (
        math.log(lambda1)
        - math.log(lambda1 - d)
        + (d - 1) * math.log(lambda1)
        - numerics.log_gamma(d)
    )


def poisson_tail_bound_left(d: int, lambda2: float) -> float:
    """ln of (l/(d-l)) l^{d-1}/(d-1)!, an upper bound on sum_{y>=d} l^y/y!."""
    if int(d) != d or d < 1:
        raise DomainError("d must be an integer >= 1")
    if not 0 < lambda2 < d:
        raise DomainError("requires 0 < lambda2 < d")
    return (
        math.log(lambda2)
        - math.log(d - lambda2)
        + (d - 1) * math.log(lambda2)
        - numerics.log_gamma(d)
    )


METHODS = {
    Method.DG: dg_bound,
    Method.THEOREM1: theorem1_bound,
    Method.EXACT: exact_bound,
    Method.MATOUSEK: matousek_bound,
    Method.THEOREM3: theorem3_bound,
}


def compute_bound(method: Method | str, q: BoundQuery) -> BoundResult:
    try:
        m = Method(method)
    except ValueError:
        raise DomainError(f"unknown method {method!r}") from None
    return METHODS[m](q)
