"""Distribution families used as null distributions for two-sided testing.

Continuous families: chi-square, the F ratio, the uniform, an asymmetric
triangular, and a left-truncated standard normal. Discrete families: the
binomial, the central hypergeometric (Fisher's exact null), and Fisher's
noncentral hypergeometric.

Discrete conventions differ across libraries, so they are pinned here:

- ``cdf(x)`` is P(X <= floor(x)).
- ``sf(x)`` is the inclusive upper tail P(X >= ceil(x)). In particular
  ``sf(k)`` at a support point k includes the mass at k, matching the
  one-sided p-value convention of exact tests.
- ``quantile(p)`` is the smallest support point whose cdf reaches p.
- ``median()`` is ``quantile(0.5)``.
- ``mode_set()`` scans the mass function and returns every argmax (two
  neighbouring points tie at certain parameter boundaries).

All instances are immutable; discrete families cache their mass/tail tables
on first use.
"""

from __future__ import annotations

import math
import operator
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from . import specfun

__all__ = [
    "Support",
    "Distribution",
    "ChiSquare",
    "FRatio",
    "Uniform",
    "Triangular",
    "TruncatedNormal",
    "Binomial",
    "Hypergeometric",
    "NoncentralHypergeometric",
]

_LN2 = math.log(2.0)

# relative tolerance for calling two masses tied when scanning for modes
_MODE_TIE_TOL = 1e-9


@dataclass(frozen=True)
class Support:
    """Closed support interval; discrete supports are contiguous integers."""

    lo: float
    hi: float
    is_discrete: bool

    def points(self) -> range:
        if not self.is_discrete:
            raise TypeError("points() is only defined for discrete supports")
        return range(int(self.lo), int(self.hi) + 1)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


class Distribution:
    """Shared interface. Subclasses implement the abstract methods below."""

    is_discrete: bool = False

    def support(self) -> Support:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def sf(self, x: float) -> float:
        """Upper tail probability; inclusive of x for discrete families."""
        return 1.0 - self.cdf(x)

    def pdf_or_pmf(self, x: float) -> float:
        """Density (continuous) or probability mass (discrete) at x."""
        raise NotImplementedError

    def quantile(self, p: float) -> float:
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def mode_set(self) -> list[float]:
        """All global maximizers of the density or mass function."""
        raise NotImplementedError

    def median(self) -> float:
        return self.quantile(0.5)


def _check_prob_open(p: float) -> None:
    if not (0.0 < p < 1.0):
        raise ValueError(f"probability must lie in (0, 1), got {p!r}")


# ---------------------------------------------------------------------------
# continuous families


@dataclass(frozen=True)
class ChiSquare(Distribution):
    """Chi-square with ``df`` degrees of freedom."""

    df: int

    def __post_init__(self) -> None:
        if operator.index(self.df) < 1:
            raise ValueError(f"df must be a positive integer, got {self.df!r}")

    def support(self) -> Support:
        return Support(0.0, math.inf, False)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        return specfun.reg_gamma_lower(self.df / 2.0, x / 2.0)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        return specfun.reg_gamma_upper(self.df / 2.0, x / 2.0)

    def pdf_or_pmf(self, x: float) -> float:
        k = self.df
        if x < 0.0:
            return 0.0
        if x == 0.0:
            if k < 2:
                return math.inf
            return 0.5 if k == 2 else 0.0
        half = k / 2.0
        return math.exp((half - 1.0) * math.log(x) - 0.5 * x - half * _LN2 - math.lgamma(half))

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        return 2.0 * specfun.inv_reg_gamma_lower(self.df / 2.0, p)

    def mean(self) -> float:
        return float(self.df)

    def mode_set(self) -> list[float]:
        return [float(max(self.df - 2, 0))]


@dataclass(frozen=True)
class FRatio(Distribution):
    """F distribution with ``d1`` numerator and ``d2`` denominator df."""

    d1: int
    d2: int

    def __post_init__(self) -> None:
        if operator.index(self.d1) < 1 or operator.index(self.d2) < 1:
            raise ValueError(f"degrees of freedom must be positive integers, got {self.d1!r}, {self.d2!r}")

    def support(self) -> Support:
        return Support(0.0, math.inf, False)

    def cdf(self, x: float) -> float:
        if x <= 0.0:
            return 0.0
        y = self.d1 * x / (self.d1 * x + self.d2)
        return specfun.reg_beta(y, self.d1 / 2.0, self.d2 / 2.0)

    def sf(self, x: float) -> float:
        if x <= 0.0:
            return 1.0
        # complement through the swapped-parameter identity keeps the far
        # tail accurate instead of cancelling against 1
        y = self.d2 / (self.d1 * x + self.d2)
        return specfun.reg_beta(y, self.d2 / 2.0, self.d1 / 2.0)

    def pdf_or_pmf(self, x: float) -> float:
        d1, d2 = self.d1, self.d2
        if x < 0.0:
            return 0.0
        if x == 0.0:
            if d1 < 2:
                return math.inf
            return 1.0 if d1 == 2 else 0.0
        a, b = d1 / 2.0, d2 / 2.0
        log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
        log_pdf = (a * math.log(d1 / d2) + (a - 1.0) * math.log(x)
                   - (a + b) * math.log1p(d1 * x / d2) - log_beta)
        return math.exp(log_pdf)

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        y = specfun.inv_reg_beta(p, self.d1 / 2.0, self.d2 / 2.0)
        return self.d2 * y / (self.d1 * (1.0 - y))

    def mean(self) -> float:
        if self.d2 <= 2:
            raise ValueError(f"mean is undefined for denominator df <= 2, got {self.d2}")
        return self.d2 / (self.d2 - 2.0)

    def mode_set(self) -> list[float]:
        if self.d1 <= 2:
            return [0.0]
        return [(self.d1 - 2.0) * self.d2 / (self.d1 * (self.d2 + 2.0))]


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform on [lower, upper]."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)) or self.lower >= self.upper:
            raise ValueError(f"need finite lower < upper, got {self.lower!r}, {self.upper!r}")

    def support(self) -> Support:
        return Support(self.lower, self.upper, False)

    def cdf(self, x: float) -> float:
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        return (x - self.lower) / (self.upper - self.lower)

    def pdf_or_pmf(self, x: float) -> float:
        if self.lower <= x <= self.upper:
            return 1.0 / (self.upper - self.lower)
        return 0.0

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        return self.lower + p * (self.upper - self.lower)

    def mean(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def mode_set(self) -> list[float]:
        raise ValueError("the uniform density is flat, so its mode is not unique")


@dataclass(frozen=True)
class Triangular(Distribution):
    """Asymmetric triangular density on [-left, right] peaking at 0.

    ``left`` and ``right`` are the positive distances from the peak to the
    two endpoints; the density rises linearly on [-left, 0] and falls
    linearly on [0, right].
    """

    left: float
    right: float

    def __post_init__(self) -> None:
        ok = math.isfinite(self.left) and math.isfinite(self.right)
        if not ok or self.left <= 0.0 or self.right <= 0.0:
            raise ValueError(f"need finite left > 0 and right > 0, got {self.left!r}, {self.right!r}")

    def support(self) -> Support:
        return Support(-self.left, self.right, False)

    def cdf(self, x: float) -> float:
        a, b = self.left, self.right
        if x <= -a:
            return 0.0
        if x >= b:
            return 1.0
        if x <= 0.0:
            # grouped so that cdf(0) evaluates to exactly a / (a + b)
            return ((x + a) / a) * ((x + a) / (a + b))
        return 1.0 - ((b - x) / b) * ((b - x) / (a + b))

    def pdf_or_pmf(self, x: float) -> float:
        a, b = self.left, self.right
        if x < -a or x > b:
            return 0.0
        if x <= 0.0:
            return 2.0 * (x + a) / (a * (a + b))
        return 2.0 * (b - x) / (b * (a + b))

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        a, b = self.left, self.right
        split = a / (a + b)
        if p <= split:
            return -a + math.sqrt(p * a * (a + b))
        return b - math.sqrt((1.0 - p) * b * (a + b))

    def mean(self) -> float:
        return (self.right - self.left) / 3.0

    def mode_set(self) -> list[float]:
        return [0.0]


@dataclass(frozen=True)
class TruncatedNormal(Distribution):
    """Standard normal conditioned on X >= -cutoff, for cutoff > 0.

    The mode stays at 0 while the mean shifts right, which makes this a
    handy asymmetric family with unbounded support.
    """

    cutoff: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.cutoff) or self.cutoff <= 0.0:
            raise ValueError(f"cutoff must be finite and > 0, got {self.cutoff!r}")

    def _tail_mass(self) -> float:
        # P(Z >= -cutoff) for a standard normal Z
        return 1.0 - specfun.norm_cdf(-self.cutoff)

    def support(self) -> Support:
        return Support(-self.cutoff, math.inf, False)

    def cdf(self, x: float) -> float:
        if x <= -self.cutoff:
            return 0.0
        lo = specfun.norm_cdf(-self.cutoff)
        return (specfun.norm_cdf(x) - lo) / (1.0 - lo)

    def pdf_or_pmf(self, x: float) -> float:
        if x < -self.cutoff:
            return 0.0
        return specfun.norm_pdf(x) / self._tail_mass()

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        lo = specfun.norm_cdf(-self.cutoff)
        return specfun.norm_quantile(lo + p * (1.0 - lo))

    def mean(self) -> float:
        return specfun.norm_pdf(-self.cutoff) / self._tail_mass()

    def mode_set(self) -> list[float]:
        return [0.0]


# ---------------------------------------------------------------------------
# discrete families


class _Tables(NamedTuple):
    pmf: list[float]
    cdf: list[float]  # cdf[i] = P(X <= lo + i)
    sf: list[float]   # sf[i] = P(X >= lo + i), inclusive


@lru_cache(maxsize=None)
def _discrete_tables(d: "_Discrete") -> _Tables:
    lo, hi = d._bounds()
    logw = [d._log_weight(k) for k in range(lo, hi + 1)]
    top = max(logw)
    raw = [math.exp(v - top) for v in logw]
    total = math.fsum(raw)
    pmf = [v / total for v in raw]
    cdf: list[float] = []
    acc = 0.0
    for v in pmf:
        acc += v
        cdf.append(acc)
    sf: list[float] = [0.0] * len(pmf)
    acc = 0.0
    for i in range(len(pmf) - 1, -1, -1):
        acc += pmf[i]
        sf[i] = acc
    return _Tables(pmf, cdf, sf)


class _Discrete(Distribution):
    """Base for integer-supported families; tables are cached per instance."""

    is_discrete = True

    def _bounds(self) -> tuple[int, int]:
        raise NotImplementedError

    def _log_weight(self, k: int) -> float:
        """Log mass up to a constant; normalized when the tables are built."""
        raise NotImplementedError

    def _tables(self) -> _Tables:
        return _discrete_tables(self)

    def support(self) -> Support:
        lo, hi = self._bounds()
        return Support(float(lo), float(hi), True)

    def pdf_or_pmf(self, x: float) -> float:
        if not float(x).is_integer():
            raise ValueError(f"{type(self).__name__} is discrete; mass requested at non-integer {x!r}")
        k = int(x)
        lo, hi = self._bounds()
        if k < lo or k > hi:
            return 0.0
        return self._tables().pmf[k - lo]

    def cdf(self, x: float) -> float:
        lo, hi = self._bounds()
        if x < lo:
            return 0.0
        if x >= hi:
            return 1.0
        return self._tables().cdf[math.floor(x) - lo]

    def sf(self, x: float) -> float:
        lo, hi = self._bounds()
        if x <= lo:
            return 1.0
        if x > hi:
            return 0.0
        return self._tables().sf[math.ceil(x) - lo]

    def quantile(self, p: float) -> float:
        _check_prob_open(p)
        lo, _ = self._bounds()
        cdf = self._tables().cdf
        idx = bisect_left(cdf, p)
        if idx >= len(cdf):
            idx = len(cdf) - 1
        return float(lo + idx)

    def mode_set(self) -> list[float]:
        lo, _ = self._bounds()
        pmf = self._tables().pmf
        top = max(pmf)
        return [float(lo + i) for i, v in enumerate(pmf) if v >= top * (1.0 - _MODE_TIE_TOL)]


@dataclass(frozen=True)
class Binomial(_Discrete):
    """Binomial with ``n`` trials and success probability ``p``."""

    n: int
    p: float

    def __post_init__(self) -> None:
        if operator.index(self.n) < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must lie strictly in (0, 1), got {self.p!r}")

    def _bounds(self) -> tuple[int, int]:
        return 0, self.n

    def _log_weight(self, k: int) -> float:
        return specfun.log_choose(self.n, k) + k * math.log(self.p) + (self.n - k) * math.log1p(-self.p)

    def mean(self) -> float:
        return self.n * self.p


@dataclass(frozen=True)
class Hypergeometric(_Discrete):
    """Count in cell (1,1) of a 2x2 table with fixed margins.

    ``row1`` and ``col1`` are the first row and column totals and ``total``
    the table total; this is the null distribution of Fisher's exact test.
    """

    row1: int
    col1: int
    total: int

    def __post_init__(self) -> None:
        r, c, n = operator.index(self.row1), operator.index(self.col1), operator.index(self.total)
        if n < 1 or not (0 <= r <= n) or not (0 <= c <= n):
            raise ValueError(f"margins must satisfy 0 <= row1, col1 <= total, got {r}, {c}, {n}")

    def _bounds(self) -> tuple[int, int]:
        return max(0, self.row1 + self.col1 - self.total), min(self.row1, self.col1)

    def _log_weight(self, k: int) -> float:
        return (specfun.log_choose(self.row1, k)
                + specfun.log_choose(self.total - self.row1, self.col1 - k)
                - specfun.log_choose(self.total, self.col1))

    def mean(self) -> float:
        return self.row1 * self.col1 / self.total


@dataclass(frozen=True)
class NoncentralHypergeometric(_Discrete):
    """Fisher's noncentral hypergeometric: the 2x2 cell count when the
    underlying odds ratio is ``odds`` instead of 1."""

    row1: int
    col1: int
    total: int
    odds: float

    def __post_init__(self) -> None:
        r, c, n = operator.index(self.row1), operator.index(self.col1), operator.index(self.total)
        if n < 1 or not (0 <= r <= n) or not (0 <= c <= n):
            raise ValueError(f"margins must satisfy 0 <= row1, col1 <= total, got {r}, {c}, {n}")
        if not math.isfinite(self.odds) or self.odds <= 0.0:
            raise ValueError(f"odds must be finite and > 0, got {self.odds!r}")

    def _bounds(self) -> tuple[int, int]:
        return max(0, self.row1 + self.col1 - self.total), min(self.row1, self.col1)

    def _log_weight(self, k: int) -> float:
        # unnormalized: C(row1, k) C(total-row1, col1-k) odds^k, summed out
        # in log space when the tables are normalized
        return (specfun.log_choose(self.row1, k)
                + specfun.log_choose(self.total - self.row1, self.col1 - k)
                + k * math.log(self.odds))

    def mean(self) -> float:
        lo, _ = self._bounds()
        pmf = self._tables().pmf
        return math.fsum((lo + i) * v for i, v in enumerate(pmf))
