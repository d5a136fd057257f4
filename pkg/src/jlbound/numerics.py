"""Log-space special functions and the scalar solver behind the bounds.

Everything that can overflow (factorials, powers of large Poisson means,
chi-square tails at k in the thousands) is evaluated as a logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import ConvergenceError, DomainError

__all__ = [
    "RootSolveConfig",
    "log_gamma",
    "std_normal_pdf",
    "std_normal_cdf",
    "log_reg_gamma_lower",
    "log_reg_gamma_upper",
    "log_poisson_cdf",
    "log_add",
    "log1mexp",
    "a_function",
    "a_second_derivative",
    "solve_fixed_point_s_star",
    "SQRT_2_OVER_PI",
]

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_EPS = np.finfo(float).eps
_TINY = 1e-300
_MAX_SERIES_ITER = 100_000


@dataclass(frozen=True)
class RootSolveConfig:
    """Tolerance, iteration cap and optional bracket for scalar solves.

    ``bracket=None`` lets the solver pick its natural bracket.
    """

    abs_tol: float = 1e-12
    max_iter: int = 200
    bracket: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be > 0")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise DomainError("bracket must satisfy low < high")


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def std_normal_pdf(s: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * s * s)


def std_normal_cdf(s: float) -> float:
    # erfc keeps full relative accuracy in the lower tail
    return 0.5 * math.erfc(-s / math.sqrt(2.0))


def log_add(a: float, b: float) -> float:
    """ln(e^a + e^b) without overflow."""
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    return a + math.log1p(math.exp(b - a))


def log1mexp(a: float) -> float:
    """ln(1 - e^a) for a <= 0 (Maechler's split)."""
    if a > 0:
        raise DomainError("log1mexp requires a <= 0")
    if a == 0:
        return -math.inf
    if a > -math.log(2.0):
        return math.log(-math.expm1(a))
    return math.log1p(-math.exp(a))


def _stirling_correction(a: float) -> float:
    """ln Gamma(a) - [(a - 1/2) ln a - a + ln sqrt(2 pi)].

    Asymptotic series for large ``a``; direct difference otherwise, where the
    magnitudes involved are small enough for the cancellation to be harmless.
    """
    if a < 15.0:
        return math.lgamma(a) - (a - 0.5) * math.log(a) + a - _LOG_SQRT_2PI
    a2 = a * a
    return (
        1.0 / 12.0
        - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * a2)) / a2) / a2) / a2
    ) / a


def _log_gamma_density_prefactor(a: float, x: float) -> float:
    """ln( x^a e^{-x} / Gamma(a) ), accurate for large a and x near a."""
    if x == 0:
        return -math.inf
    if a < 15.0:
        return a * math.log(x) - x - math.lgamma(a)
    u = (x - a) / a
    # a*ln(x/a) + a - x == a*(log1p(u) - u); no catastrophic cancellation
    return (
        a * (math.log1p(u) - u)
        + 0.5 * math.log(a)
        - _LOG_SQRT_2PI
        - _stirling_correction(a)
    )


def _log_lower_series(a: float, x: float) -> float:
    # P(a, x) = prefactor / a * sum_n x^n / ((a+1)...(a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_SERIES_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _EPS:
            return _log_gamma_density_prefactor(a, x) + math.log(total)
    raise ConvergenceError(f"incomplete gamma series did not converge (a={a}, x={x})")


def _log_upper_cf(a: float, x: float) -> float:
    # Modified Lentz evaluation of the Legendre continued fraction for Q(a, x)
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_SERIES_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return _log_gamma_density_prefactor(a, x) + math.log(h)
    raise ConvergenceError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def _check_gamma_args(d: float, x: float) -> None:
    if not d > 0:
        raise DomainError(f"shape d must be > 0, got {d!r}")
    if not x >= 0:
        raise DomainError(f"x must be >= 0, got {x!r}")


def log_reg_gamma_upper(d: float, x: float) -> float:
    """ln Q(d, x), the log survival function of a Gamma(d, 1) variable at x.

    Uses the power series for ``x < d + 1`` and the continued fraction
    otherwise; the complement is taken in log space so small tails on either
    side keep their relative accuracy.
    """
    _check_gamma_args(d, x)
    if x == 0:
        return 0.0
    if x < d + 1.0:
        return log1mexp(min(_log_lower_series(d, x), 0.0))
    return _log_upper_cf(d, x)


def log_reg_gamma_lower(d: float, x: float) -> float:
    """ln P(d, x) = ln(1 - Q(d, x))."""
    _check_gamma_args(d, x)
    if x == 0:
        return -math.inf
    if x < d + 1.0:
        return _log_lower_series(d, x)
    return log1mexp(min(_log_upper_cf(d, x), 0.0))


def log_poisson_cdf(d_minus_1: int, lam: float) -> float:
    """ln P(Y <= d_minus_1) for Y ~ Poisson(lam), summed term by term.

    This is the finite-sum side of the Gamma-Poisson identity and is kept
    independent of :func:`log_reg_gamma_upper` on purpose.
    """
    if d_minus_1 < 0 or int(d_minus_1) != d_minus_1:
        raise DomainError("d_minus_1 must be a non-negative integer")
    if not lam > 0:
        raise DomainError("lambda must be > 0")
    y = np.arange(int(d_minus_1) + 1, dtype=float)
    log_terms = y * math.log(lam) - lam - gammaln(y + 1.0)
    return float(logsumexp(log_terms))


def a_function(s: float, epsilon: float) -> float:
    """A(s) = 2 exp(-s sqrt(2/pi)(1+eps) + s^2/2) Phi(s)."""
    a = SQRT_2_OVER_PI * (1.0 + epsilon)
    return 2.0 * math.exp(-s * a + 0.5 * s * s) * std_normal_cdf(s)


def a_second_derivative(s: float, epsilon: float) -> float:
    """Closed-form second derivative of e^{-s c + s^2/2} Phi(s), c = sqrt(2/pi)(1+eps).

    This drops the constant factor 2 of :func:`a_function`, which does not
    affect its sign.
    """
    c = SQRT_2_OVER_PI * (1.0 + epsilon)
    return math.exp(-s * c + 0.5 * s * s) * (
        ((s - c) ** 2 + 1.0) * std_normal_cdf(s) + (s - 2.0 * c) * std_normal_pdf(s)
    )


def _fixed_point_residual(s: float, c: float) -> float:
    return s - c + std_normal_pdf(s) / std_normal_cdf(s)


def solve_fixed_point_s_star(epsilon: float, cfg: RootSolveConfig | None = None) -> float:
    """Minimizer s* of :func:`a_function` over s > 0.

    Solves ``s = sqrt(2/pi)(1+eps) - phi(s)/Phi(s)`` by Newton's method,
    falling back to bisection whenever a Newton step leaves the current
    sign-change bracket.
    """
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must be in (0,1)")
    cfg = cfg or RootSolveConfig()
    c = SQRT_2_OVER_PI * (1.0 + epsilon)
    lo, hi = cfg.bracket if cfg.bracket is not None else (1e-8, c)
    f_lo = _fixed_point_residual(lo, c)
    f_hi = _fixed_point_residual(hi, c)
    if f_lo * f_hi > 0:
        raise ConvergenceError(f"no sign change on bracket ({lo}, {hi})")

    s = 0.5 * (lo + hi)
    for _ in range(cfg.max_iter):
        f = _fixed_point_residual(s, c)
        if abs(f) <= cfg.abs_tol:
            break
        if (f < 0) == (f_lo < 0):
            lo, f_lo = s, f
        else:
            hi = s
        mills = std_normal_pdf(s) / std_normal_cdf(s)
        fprime = 1.0 - mills * (s + mills)
        step_ok = fprime > 0
        if step_ok:
            s_new = s - f / fprime
            step_ok = lo < s_new < hi
        s = s_new if step_ok else 0.5 * (lo + hi)
    else:
        raise ConvergenceError(f"s* solve did not converge in {cfg.max_iter} iterations")

    delta = 1e-4
    a_star = a_function(s, epsilon)
    if a_function(s - delta, epsilon) < a_star or a_function(s + delta, epsilon) < a_star:
        raise ConvergenceError("fixed point is not a local minimizer of A")
    return s
