"""Special-function substrate: log-Pochhammer, pFq series, modified Bessel I and K.

Everything here works on plain floats/complex scalars. The series routines use
term recurrences rather than per-term Gamma calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln, gammasgn

MAX_TERMS = 1_000_000
_EPS = np.finfo(float).eps


class ConvergenceError(ArithmeticError):
    """A series failed to reach the requested tolerance."""


def _is_nonpositive_int(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def log_pochhammer(a: float, n: int) -> float:
    """ln (a)_n = ln Γ(a+n) − ln Γ(a) for a > 0.

    Small n is summed directly as Σ ln(a+k) (compensated), which avoids the
    cancellation that the log-Gamma difference suffers when a ≫ n.
    """
    if a <= 0:
        raise ValueError(f"log_pochhammer needs a > 0, got {a}")
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return 0.0
    if n <= 4096:
        return math.fsum(math.log(a + k) for k in range(n))
    return float(gammaln(a + n) - gammaln(a))


def log_pochhammer_seq(a: float, n_max: int) -> np.ndarray:
    """Array of ln (a)_k for k = 0..n_max."""
    if a <= 0:
        raise ValueError(f"log_pochhammer_seq needs a > 0, got {a}")
    out = np.zeros(n_max + 1)
    if n_max > 0:
        out[1:] = np.cumsum(np.log(a + np.arange(n_max)))
    return out


@dataclass(frozen=True)
class HypergeometricParams:
    upper: tuple[float, ...]
    lower: tuple[float, ...]

    def __init__(self, upper: Sequence[float], lower: Sequence[float]):
        object.__setattr__(self, "upper", tuple(float(a) for a in upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in lower))
        for b in self.lower:
            if _is_nonpositive_int(b):
                raise ValueError(f"lower parameter {b} is a non-positive integer")
        if len(self.upper) > len(self.lower) + 1:
            raise ValueError(
                f"p={len(self.upper)} > q+1={len(self.lower) + 1}: series diverges"
            )

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class SeriesResult:
    value: complex | float
    terms_used: int
    error_bound: float


def pfq(
    params: HypergeometricParams | tuple[Sequence[float], Sequence[float]],
    x: complex | float,
    tol: float = 1e-15,
) -> SeriesResult:
    """Generalized hypergeometric series pFq(upper; lower; x) by term recurrence.

    Summation stops once three consecutive terms are below ``tol * |partial sum|``
    and the geometric tail estimate from the current term ratio is also below
    that level. ``error_bound`` is absolute: tail estimate plus a rounding
    allowance of ``2 eps Σ|t_k|``.
    """
    if not isinstance(params, HypergeometricParams):
        params = HypergeometricParams(*params)
    if not 1e-15 <= tol <= 1e-6:
        raise ValueError(f"tol must lie in [1e-15, 1e-6], got {tol}")
    is_complex = isinstance(x, complex) or np.iscomplexobj(x)
    x = complex(x) if is_complex else float(x)
    if params.p == params.q + 1 and abs(x) >= 1:
        raise ValueError("p = q+1 series only converges for |x| < 1")

    upper, lower = params.upper, params.lower
    term = 1.0 + 0j if is_complex else 1.0
    total = term
    abs_total = 1.0
    small_run = 0
    n = 0
    while n < MAX_TERMS:
        ratio = x / (n + 1)
        for a in upper:
            ratio *= a + n
        for b in lower:
            ratio /= b + n
        term = term * ratio
        n += 1
        total += term
        aterm = abs(term)
        abs_total += aterm
        scale = abs(total)
        if aterm <= tol * scale:
            small_run += 1
        else:
            small_run = 0
        if term == 0:
            # terminating series (an upper parameter hit a non-positive integer)
            return SeriesResult(_real_if(total, is_complex), n + 1, 2 * _EPS * abs_total)
        if small_run >= 3:
            rho = abs(_next_ratio(upper, lower, x, n))
            if rho < 1:
                tail = aterm * rho / (1 - rho)
                if tail <= tol * scale:
                    bound = tail + 2 * _EPS * abs_total
                    return SeriesResult(_real_if(total, is_complex), n + 1, bound)
    raise ConvergenceError(f"pFq did not converge within {MAX_TERMS} terms (x={x})")


def _next_ratio(upper, lower, x, n):
    r = x / (n + 1)
    for a in upper:
        r *= a + n
    for b in lower:
        r /= b + n
    return r


def _real_if(v, is_complex):
    return complex(v) if is_complex else float(v)


def hyp(upper: Sequence[float], lower: Sequence[float], x, tol: float = 1e-15):
    """Value-only shorthand for :func:`pfq`."""
    return pfq(HypergeometricParams(upper, lower), x, tol).value


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind via the ascending series.

    I_ν(x) = (x/2)^ν / Γ(ν+1) · 0F1(; ν+1; x²/4)
    """
    if x < 0:
        raise ValueError(f"bessel_i needs x >= 0, got {x}")
    if float(nu).is_integer() and nu < 0:
        nu = -nu
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    if _is_nonpositive_int(nu + 1):
        raise ValueError(f"order {nu} not supported")
    series = hyp([], [nu + 1], x * x / 4)
    log_pref = nu * math.log(x / 2) - gammaln(nu + 1)
    return float(gammasgn(nu + 1)) * math.exp(log_pref) * series


def bessel_k(nu: float, x: float, step: float = 1 / 16) -> float:
    """Modified Bessel function of the second kind.

    Trapezoidal rule on K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt. The
    integrand is analytic in the strip |Im t| < π/2, so the rule converges like
    exp(−π²/step).
    """
    if x <= 0:
        raise ValueError(f"bessel_k needs x > 0, got {x}")
    nu = abs(nu)

    def log_f(t):
        return nu * t - x * np.cosh(t)

    # locate the peak of exp(νt − x cosh t) and integrate until it is 40 e-folds down
    t_peak = math.asinh(nu / x)
    peak = log_f(t_peak)
    t_end = max(t_peak, 1.0)
    while log_f(t_end) > peak - 40.0:
        t_end *= 1.5
    n = int(math.ceil(t_end / step))
    t = np.arange(n + 1) * step
    vals = 0.5 * (np.exp(nu * t - x * np.cosh(t) - peak) + np.exp(-nu * t - x * np.cosh(t) - peak))
    vals[0] *= 0.5
    return float(step * math.fsum(vals) * math.exp(peak))
