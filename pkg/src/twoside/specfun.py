"""Scalar special functions backing the distribution layer.

Log-gamma and the error function come straight from libm via :mod:`math`.
The regularized incomplete gamma and beta functions are evaluated with the
classic series / continued-fraction pairs, switching representation at the
conventional boundaries (x ~ a+1 for the gamma, x ~ (a+1)/(a+b+2) for the
beta) so each converges quickly everywhere in its domain. Inverses use
Newton iteration safeguarded by a maintained bracket, falling back to
bisection whenever a Newton step would leave it.

Everything here is a pure function of its arguments and safe to call
concurrently.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "log_gamma",
    "log_choose",
    "reg_gamma_lower",
    "reg_gamma_upper",
    "inv_reg_gamma_lower",
    "reg_beta",
    "inv_reg_beta",
    "norm_cdf",
    "norm_pdf",
    "norm_quantile",
]

_SQRT2 = math.sqrt(2.0)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_TINY = 1e-300


@dataclass(frozen=True)
class Accuracy:
    """Convergence targets for the iterative kernels.

    ``rel_tol`` is a relative tolerance on the converged value (or on the
    argument, for the inverses). It must stay far tighter than anything the
    statistical layer reports, which is 3-4 significant digits.
    """

    rel_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol < 1e-6):
            raise ValueError(f"rel_tol must be in (0, 1e-6), got {self.rel_tol!r}")
        if self.max_iter < 50:
            raise ValueError(f"max_iter must be at least 50, got {self.max_iter!r}")


DEFAULT_ACCURACY = Accuracy()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"log_gamma requires finite x > 0, got {x!r}")
    return math.lgamma(x)


def log_choose(n: int, k: int) -> float:
    """Natural log of the binomial coefficient C(n, k)."""
    n = operator.index(n)
    k = operator.index(k)
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"log_choose requires 0 <= k <= n, got n={n}, k={k}")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _check_gamma_args(a: float, x: float) -> None:
    if not math.isfinite(a) or a <= 0.0:
        raise ValueError(f"shape parameter must be finite and > 0, got {a!r}")
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"argument must be finite and >= 0, got {x!r}")


def _gamma_log_scale(a: float, x: float) -> float:
    # log of x^a e^-x / Gamma(a), the prefactor shared by both expansions
    return a * math.log(x) - x - math.lgamma(a)


def _gamma_series(a: float, x: float, acc: Accuracy) -> float:
    # lower tail series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a (a+1) ... (a+n))
    # Terms shrink by q = x/denom once denom > x, so the remaining tail is
    # bounded by term * q / (1 - q); converging on that bound (with margin)
    # instead of on the last term keeps the true error inside rel_tol even
    # close to the series/fraction switch point where q is near 1.
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(acc.max_iter):
        denom += 1.0
        term *= x / denom
        total += term
        q = x / (denom + 1.0)
        if q < 1.0 and term * q / (1.0 - q) < abs(total) * (acc.rel_tol / 16.0):
            return total * math.exp(_gamma_log_scale(a, x))
    raise ArithmeticError("regularized gamma series did not converge")


def _lentz_converged(err: float, prev_err: float, rel_tol: float) -> bool:
    # The per-step factors delta approach 1 geometrically, so the remaining
    # relative error of the product is about err * r / (1 - r) with
    # r = err/prev_err. Converging on that bound (with a 16x margin) rather
    # than on the last delta alone keeps the true error inside rel_tol even
    # where the fraction converges slowly.
    if err == 0.0:
        return True
    if not math.isfinite(prev_err) or prev_err <= 0.0:
        return False
    r = err / prev_err
    return r < 1.0 and err * r / (1.0 - r) < rel_tol / 16.0


def _gamma_continued_fraction(a: float, x: float, acc: Accuracy) -> float:
    # upper tail Q(a,x) by modified Lentz evaluation of the Legendre fraction
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b if abs(b) >= _TINY else 1.0 / _TINY
    h = d
    prev_err = math.inf
    for i in range(1, acc.max_iter + 1):
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
        err = abs(delta - 1.0)
        if _lentz_converged(err, prev_err, acc.rel_tol):
            return h * math.exp(_gamma_log_scale(a, x))
        prev_err = err
    raise ArithmeticError("regularized gamma continued fraction did not converge")


def reg_gamma_lower(a: float, x: float, acc: Accuracy | None = None) -> float:
    """Regularized lower incomplete gamma function P(a, x)."""
    acc = acc or DEFAULT_ACCURACY
    _check_gamma_args(a, x)
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x, acc)
    return 1.0 - _gamma_continued_fraction(a, x, acc)


def reg_gamma_upper(a: float, x: float, acc: Accuracy | None = None) -> float:
    """Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x)."""
    acc = acc or DEFAULT_ACCURACY
    _check_gamma_args(a, x)
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x, acc)
    return _gamma_continued_fraction(a, x, acc)


def _log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def _beta_continued_fraction(x: float, a: float, b: float, acc: Accuracy) -> float:
    # modified Lentz evaluation of the standard continued fraction for I_x(a,b)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    prev_err = math.inf
    for m in range(1, acc.max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        err = abs(delta - 1.0)
        if _lentz_converged(err, prev_err, acc.rel_tol):
            return h
        prev_err = err
    raise ArithmeticError("regularized beta continued fraction did not converge")


def reg_beta(x: float, a: float, b: float, acc: Accuracy | None = None) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    acc = acc or DEFAULT_ACCURACY
    if not math.isfinite(a) or a <= 0.0 or not math.isfinite(b) or b <= 0.0:
        raise ValueError(f"shape parameters must be finite and > 0, got a={a!r}, b={b!r}")
    if not math.isfinite(x) or x < 0.0 or x > 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {x!r}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_continued_fraction(x, a, b, acc) / a
    return 1.0 - math.exp(log_front) * _beta_continued_fraction(1.0 - x, b, a, acc) / b


def _check_prob_for_inverse(p: float) -> None:
    if not math.isfinite(p) or p < 0.0 or p >= 1.0:
        raise ValueError(f"probability must lie in [0, 1), got {p!r}")


def inv_reg_gamma_lower(a: float, p: float, acc: Accuracy | None = None) -> float:
    """Inverse of ``reg_gamma_lower`` in x: returns x with P(a, x) = p.

    p = 1 is rejected (the inverse diverges); p = 0 returns 0.
    """
    acc = acc or DEFAULT_ACCURACY
    if not math.isfinite(a) or a <= 0.0:
        raise ValueError(f"shape parameter must be finite and > 0, got {a!r}")
    _check_prob_for_inverse(p)
    if p == 0.0:
        return 0.0

    lo = 0.0
    hi = a + 10.0 * math.sqrt(a) + 10.0
    for _ in range(600):
        if reg_gamma_lower(a, hi, acc) >= p:
            break
        lo = hi
        hi *= 2.0
    else:
        raise ArithmeticError("failed to bracket the inverse incomplete gamma")

    # Wilson-Hilferty start, falling back to the small-x power-law start
    z = norm_quantile(p)
    x = a * (1.0 - 1.0 / (9.0 * a) + z * math.sqrt(1.0 / (9.0 * a))) ** 3
    if not (lo < x < hi):
        x = math.exp((math.log(p) + math.log(a) + math.lgamma(a)) / a)
    if not (lo < x < hi):
        x = 0.5 * (lo + hi)

    log_gamma_a = math.lgamma(a)
    for _ in range(acc.max_iter):
        fx = reg_gamma_lower(a, x, acc) - p
        if fx > 0.0:
            hi = x
        elif fx < 0.0:
            lo = x
        else:
            return x
        log_pdf = (a - 1.0) * math.log(x) - x - log_gamma_a
        step = fx * math.exp(-log_pdf) if log_pdf > -700.0 else math.inf
        nxt = x - step
        if not math.isfinite(nxt) or not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= acc.rel_tol * max(abs(nxt), _TINY):
            return nxt
        x = nxt
    return x


def inv_reg_beta(p: float, a: float, b: float, acc: Accuracy | None = None) -> float:
    """Inverse of ``reg_beta`` in x: returns x in [0, 1] with I_x(a, b) = p."""
    acc = acc or DEFAULT_ACCURACY
    if not math.isfinite(a) or a <= 0.0 or not math.isfinite(b) or b <= 0.0:
        raise ValueError(f"shape parameters must be finite and > 0, got a={a!r}, b={b!r}")
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0

    lo, hi = 0.0, 1.0
    x = a / (a + b)
    log_beta_ab = _log_beta(a, b)
    for _ in range(acc.max_iter):
        fx = reg_beta(x, a, b, acc) - p
        if fx > 0.0:
            hi = x
        elif fx < 0.0:
            lo = x
        else:
            return x
        log_pdf = (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - log_beta_ab
        step = fx * math.exp(-log_pdf) if log_pdf > -700.0 else math.inf
        nxt = x - step
        if not math.isfinite(nxt) or not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= acc.rel_tol * max(abs(nxt), _TINY):
            return nxt
        x = nxt
    return x


def norm_cdf(x: float) -> float:
    """Standard normal distribution function, accurate in both tails."""
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x!r}")
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    """Standard normal density."""
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x!r}")
    return math.exp(-0.5 * x * x) / _SQRT_TWO_PI


# Acklam's rational approximation for the normal quantile; two Halley
# refinements against the erfc-based cdf push it to full double precision.
_NQ_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
         1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_NQ_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
         6.680131188771972e+01, -1.328068155288572e+01)
_NQ_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
         -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_NQ_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
         3.754408661907416e+00)
_NQ_SPLIT = 0.02425


def norm_quantile(p: float) -> float:
    """Inverse of ``norm_cdf`` on (0, 1)."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"probability must lie in (0, 1), got {p!r}")
    a, b, c, d = _NQ_A, _NQ_B, _NQ_C, _NQ_D
    if p < _NQ_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
             / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    elif p > 1.0 - _NQ_SPLIT:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = -((((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
              / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0))
    else:
        q = p - 0.5
        r = q * q
        x = ((((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
             / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0))
    for _ in range(2):
        err = norm_cdf(x) - p
        u = err * _SQRT_TWO_PI * math.exp(0.5 * x * x)
        x -= u / (1.0 + 0.5 * x * u)
    return x
