"""Power, bias, and optimal-weight analysis for two-sided tests.

A two-sided critical region at level alpha is fixed by the left-tail weight
w_L: reject below quantile(w_L * alpha) or above quantile(1 - (1-w_L) * alpha).
The doubled p-value corresponds to w_L = 1/2, the conditional p-value to
w_L = F(A). This module computes power curves for such regions, the bias
(minimum power minus level) over scale alternatives, the weight that makes
the test unbiased (zero power derivative at the null), the acceptance
region of the minimum-likelihood p-value, and the tabular/figure series
summarizing all of it for the binomial and hypergeometric test families.

Tail-moment integrals use closed forms: for chi-square,
integral_0^t x dF_k(x) = k F_{k+2}(t); the variance-ratio family has the
analogous incomplete-beta identity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from .dist import Binomial, ChiSquare, Distribution, FRatio, Hypergeometric, TruncatedNormal
from .pvalue import (
    CONDITIONAL,
    DOUBLED,
    MIN_LIKELIHOOD,
    TailAnchor,
    conjugate_point,
    p_conditional_continuous,
    p_conditional_discrete,
    p_doubled,
    p_min_likelihood,
    resolve_anchor,
    tail_weights,
)
from .roots import brentq
from .specfun import reg_beta, reg_gamma_lower

__all__ = [
    "UMPU",
    "BIAS_METHODS",
    "CriticalRegion",
    "PowerCurve",
    "BiasReport",
    "critical_region_from_weights",
    "variance_power",
    "power_curve",
    "lower_partial_mean",
    "power_derivative_at_null",
    "umpu_weights",
    "minlik_region",
    "bias",
    "binomial_weight_table",
    "fisher_pvalue_table",
    "figure_data",
    "TABLE1_NS",
    "TABLE1_PS",
    "FIGURES",
]

UMPU = "umpu"
# region constructions whose bias can be computed
BIAS_METHODS = (DOUBLED, CONDITIONAL, UMPU, MIN_LIKELIHOOD)

TABLE1_NS = (10, 11, 20, 21, 50, 51, 100, 101, 200, 201, 500, 501, 1000, 1001)
TABLE1_PS = (0.1, 0.2)

FIGURES = ("fig1", "fig2", "fig3", "fig4")

# bias minimization: coarse log-grid over rho, then golden-section refinement
_RHO_LOG_LO = -4.0
_RHO_LOG_HI = 4.0
_RHO_GRID_POINTS = 400
_RHO_REFINE_TOL = 1e-8

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CriticalRegion:
    """Two-sided rejection region {x < c_left or x > c_right}.

    anchor is the point A with F(A) = F(c_left)/alpha — the tail split for
    which the conditional p-value reproduces exactly this region.
    """

    c_left: float
    c_right: float
    alpha: float
    w_left: float
    anchor: float


@dataclass(frozen=True)
class PowerCurve:
    """Power of one region over a grid of scale alternatives rho."""

    rho_grid: tuple[float, ...]
    power: tuple[float, ...]
    method: str
    level: float


@dataclass(frozen=True)
class BiasReport:
    """Minimum power over scale alternatives, relative to the level."""

    method: str
    level: float
    min_power: float
    bias: float
    argmin_rho: float


def critical_region_from_weights(d: Distribution, alpha: float, w_left: float) -> CriticalRegion:
    """The level-alpha region with probability w_left*alpha in the left tail."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not (0.0 < w_left < 1.0):
        raise ValueError(f"w_left must lie in (0, 1), got {w_left!r}")
    if d.is_discrete:
        raise ValueError("critical regions at exact level alpha need a continuous distribution")
    return CriticalRegion(
        c_left=d.quantile(w_left * alpha),
        c_right=d.quantile(1.0 - (1.0 - w_left) * alpha),
        alpha=alpha,
        w_left=w_left,
        anchor=d.quantile(w_left),
    )


def variance_power(d: Distribution, region: CriticalRegion, rho: float) -> float:
    """Power of the region against the scale alternative rho.

    For a statistic X with X ~ chi2/rho (rho = null variance over true
    variance), the rejection probability is F(rho*c_left) + 1 - F(rho*c_right);
    the same form covers the variance-ratio test.
    """
    if not (rho > 0.0) or not math.isfinite(rho):
        raise ValueError(f"rho must be positive, got {rho!r}")
    return d.cdf(rho * region.c_left) + d.sf(rho * region.c_right)


def power_curve(d: Distribution, region: CriticalRegion, rho_grid: Sequence[float], *,
                method: str, level: float) -> PowerCurve:
    """Evaluate variance_power over a grid of alternatives."""
    rhos = tuple(float(r) for r in rho_grid)
    return PowerCurve(
        rho_grid=rhos,
        power=tuple(variance_power(d, region, r) for r in rhos),
        method=method,
        level=level,
    )


def lower_partial_mean(d: Distribution, t: float) -> float:
    """integral_{lo}^{t} x dF(x), in closed form.

    chi-square(k): k * F_{k+2}(t); variance-ratio(d1, d2): the mean times
    the regularized incomplete beta at the transformed argument, which
    needs d2 > 2 for the mean to exist.
    """
    if isinstance(d, ChiSquare):
        if t <= 0.0:
            return 0.0
        return d.df * reg_gamma_lower(d.df / 2.0 + 1.0, t / 2.0)
    if isinstance(d, FRatio):
        if t <= 0.0:
            return 0.0
        mean = d.mean()  # raises for d2 <= 2, where the integral diverges too
        y = d.d1 * t / (d.d1 * t + d.d2)
        return mean * reg_beta(y, d.d1 / 2.0 + 1.0, d.d2 / 2.0 - 1.0)
    raise ValueError(
        f"no closed-form partial mean for {type(d).__name__}; "
        "supported families: ChiSquare, FRatio"
    )


def power_derivative_at_null(d: Distribution, alpha: float, w_left: float) -> float:
    """Derivative of the power in the variance parameter at the null.

    Positive when the left tail carries too little weight, negative when
    it carries too much, zero exactly for the unbiased (UMPU) choice of
    w_left, and strictly decreasing in w_left.

    For a chi-square statistic the derivative is taken in the natural
    (exponential-family) parameter, with the closed form
    integral_{tails} x dF - alpha * E.  The variance-ratio statistic is a
    scale family but not an exponential family in the ratio, so there the
    derivative is taken directly in the scale parameter:

        c_R f(c_R) - c_L f(c_L)
            = [y_R^a (1 - y_R)^b - y_L^a (1 - y_L)^b] / B(a, b)

    with y = d1 x / (d1 x + d2), a = d1/2, b = d2/2.  With equal
    numerator and denominator degrees of freedom that expression vanishes
    at w_left = 1/2 exactly, recovering the classical result that the
    equal-tails variance-ratio test is unbiased for equal sample sizes.
    """
    region = critical_region_from_weights(d, alpha, w_left)
    if isinstance(d, FRatio):
        a = d.d1 / 2.0
        b = d.d2 / 2.0
        log_beta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)

        def cut_term(c: float) -> float:
            y = d.d1 * c / (d.d1 * c + d.d2)
            return math.exp(a * math.log(y) + b * math.log1p(-y) - log_beta)

        return cut_term(region.c_right) - cut_term(region.c_left)
    mean = d.mean()
    left = lower_partial_mean(d, region.c_left)
    right = mean - lower_partial_mean(d, region.c_right)
    return left + right - alpha * mean


def umpu_weights(d: Distribution, alpha: float) -> tuple[float, CriticalRegion]:
    """The left-tail weight making the level-alpha test unbiased.

    Solves power_derivative_at_null = 0 in w_left; returns the weight and
    its critical region.
    """
    lo, hi = 1e-6, 1.0 - 1e-6
    g_lo = power_derivative_at_null(d, alpha, lo)
    g_hi = power_derivative_at_null(d, alpha, hi)
    if not (g_lo > 0.0 > g_hi):
        raise ValueError(
            "power derivative does not change sign over w_left in "
            f"[{lo}, {hi}]: got {g_lo!r} and {g_hi!r}"
        )
    w_star = brentq(lambda w: power_derivative_at_null(d, alpha, w), lo, hi,
                    rtol=1e-14, atol=1e-14)
    return w_star, critical_region_from_weights(d, alpha, w_star)


def minlik_region(d: Distribution, alpha: float) -> tuple[float, float]:
    """Acceptance bounds (l, r) of the level-alpha minimum-likelihood test.

    Solves f(l) = f(r) with F(l) + 1 - F(r) = alpha, i.e. the
    highest-density region of probability 1 - alpha; rejection means
    p_min_likelihood below alpha. When the mode sits on the lower support
    boundary the region degenerates to a single right-hand tail cut.
    """
    if d.is_discrete:
        raise ValueError("the minimum-likelihood region is defined for continuous densities")
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    sup = d.support()
    mode = d.mode_set()[0]
    if mode == sup.lo:
        return sup.lo, d.quantile(1.0 - alpha)

    def tail_mass(left: float) -> float:
        partner = conjugate_point(d, left)
        right_mass = d.sf(partner) if partner is not None else 0.0
        return d.cdf(left) + right_mass - alpha

    lo = d.quantile(min(alpha, 0.5) * 1e-8)
    hi = sup.lo + (mode - sup.lo) * (1.0 - 1e-9)
    if not (tail_mass(lo) < 0.0 < tail_mass(hi)):
        raise ValueError(f"could not bracket the density level for alpha={alpha!r}")
    left = brentq(tail_mass, lo, hi, rtol=1e-13, atol=1e-300)
    right = conjugate_point(d, left)
    if right is None:  # not reachable for an interior mode, kept for safety
        right = sup.hi
    return left, right


def _golden_section_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Argmin of a unimodal f on [a, b] by golden-section search."""
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return (a + b) / 2.0


def _region_for_method(d: Distribution, method: str, alpha: float,
                       anchor: TailAnchor) -> tuple[float, float, float]:
    """(c_left, c_right, w_left) of the level-alpha region for a method."""
    if method == DOUBLED:
        region = critical_region_from_weights(d, alpha, 0.5)
    elif method == CONDITIONAL:
        try:
            a_value = resolve_anchor(d, anchor)
        except ValueError as exc:
            if anchor != "mean":
                raise
            warnings.warn(f"mean anchor unavailable ({exc}); falling back to the median",
                          stacklevel=3)
            a_value = d.median()
        region = critical_region_from_weights(d, alpha, d.cdf(a_value))
    elif method == UMPU:
        _, region = umpu_weights(d, alpha)
    elif method == MIN_LIKELIHOOD:
        left, right = minlik_region(d, alpha)
        return left, right, (d.cdf(left) / alpha if alpha > 0 else math.nan)
    else:
        raise ValueError(f"unknown bias method {method!r}; expected one of {BIAS_METHODS}")
    return region.c_left, region.c_right, region.w_left


def bias(d: Distribution, method: str, alpha: float, *,
         anchor: TailAnchor = "mean") -> BiasReport:
    """Minimum of power(rho) - alpha over scale alternatives rho.

    The minimum is located on a 400-point logarithmic grid over
    rho in [e^-4, e^4] and refined by golden-section search; the grid
    guards against the two-sided power's double dip around the null.
    """
    c_left, c_right, _ = _region_for_method(d, method, alpha, anchor)

    def power(rho: float) -> float:
        return d.cdf(rho * c_left) + d.sf(rho * c_right)

    n = _RHO_GRID_POINTS
    logs = [_RHO_LOG_LO + (_RHO_LOG_HI - _RHO_LOG_LO) * i / (n - 1) for i in range(n)]
    rhos = [math.exp(t) for t in logs]
    powers = [power(r) for r in rhos]
    i0 = min(range(n), key=powers.__getitem__)
    lo = rhos[max(0, i0 - 1)]
    hi = rhos[min(n - 1, i0 + 1)]
    argmin_rho = _golden_section_min(power, lo, hi, _RHO_REFINE_TOL)
    min_power = power(argmin_rho)
    # the refined point can only improve on the grid candidate
    if powers[i0] < min_power:
        argmin_rho, min_power = rhos[i0], powers[i0]
    return BiasReport(method=method, level=alpha, min_power=min_power,
                      bias=min_power - alpha, argmin_rho=argmin_rho)


def binomial_weight_table(ns: Sequence[int] = TABLE1_NS,
                          ps: Sequence[float] = TABLE1_PS) -> list[dict]:
    """Tail weights of the binomial about the mean anchor, one row per (n, p).

    Columns: n, p, w_left = P(X <= np), weight_ratio = w_left/w_right, and
    w_left_modified = w_left/(1 + P(np)) when the mean np is attainable
    (equal to w_left otherwise).
    """
    rows = []
    for n in ns:
        for p in ps:
            d = Binomial(n, p)
            a = d.mean()
            w = tail_weights(d, a)
            if float(a).is_integer():
                w_mod = w.w_left / (1.0 + d.pdf_or_pmf(a))
            else:
                w_mod = w.w_left
            rows.append({
                "n": n,
                "p": p,
                "w_left": w.w_left,
                "weight_ratio": w.w_left / w.w_right,
                "w_left_modified": w_mod,
            })
    return rows


def fisher_pvalue_table(row1: int, col1: int, total: int) -> list[dict]:
    """Per-table p-values across a whole margin family, one row per n11.

    Columns: n11, prob = P(n11), p_one_sided = min of the two inclusive
    tails, p_min_likelihood, and p_conditional about the mean anchor.
    """
    d = Hypergeometric(row1, col1, total)
    a = d.mean()
    rows = []
    for k in d.support().points():
        x = float(k)
        rows.append({
            "n11": k,
            "prob": d.pdf_or_pmf(x),
            "p_one_sided": min(d.cdf(x), d.sf(x)),
            "p_min_likelihood": p_min_likelihood(d, x),
            "p_conditional": p_conditional_discrete(d, x, a),
        })
    return rows


def _fig1(resolution: int) -> tuple[list[str], list[tuple]]:
    d = ChiSquare(5)
    alpha = 0.05
    left, right = minlik_region(d, alpha)
    regions = [
        ("power_min_likelihood", left, right),
    ]
    doubled = critical_region_from_weights(d, alpha, 0.5)
    conditional = critical_region_from_weights(d, alpha, d.cdf(d.mean()))
    _, umpu_region = umpu_weights(d, alpha)
    regions.append(("power_doubled", doubled.c_left, doubled.c_right))
    regions.append(("power_conditional", conditional.c_left, conditional.c_right))
    regions.append(("power_umpu", umpu_region.c_left, umpu_region.c_right))

    lo, hi = 0.05, 6.0
    grid = sorted({lo + (hi - lo) * i / (resolution - 1) for i in range(resolution)} | {1.0})
    header = ["rho"] + [name for name, _, _ in regions]
    rows = []
    for rho in grid:
        rows.append(tuple([rho] + [d.cdf(rho * cl) + d.sf(rho * cr) for _, cl, cr in regions]))
    return header, rows


def _fig2(resolution: int) -> tuple[list[str], list[tuple]]:
    del resolution  # sample sizes are a fixed integer range
    alpha = 0.05
    header = ["panel", "n", "bias_doubled", "bias_conditional"]
    rows = []
    for n in range(3, 51):
        d = ChiSquare(n - 1)
        rows.append(("one_sample", n,
                     bias(d, DOUBLED, alpha).bias,
                     bias(d, CONDITIONAL, alpha).bias))
    # two-sample panel: first sample of size 6; the mean anchor needs n2 >= 4
    for n2 in range(4, 51):
        d = FRatio(5, n2 - 1)
        rows.append(("two_sample", n2,
                     bias(d, DOUBLED, alpha).bias,
                     bias(d, CONDITIONAL, alpha).bias))
    return header, rows


def _fig3(resolution: int) -> tuple[list[str], list[tuple]]:
    header = ["panel", "x", "p_min_likelihood", "p_doubled_raw", "p_conditional"]
    rows = []
    chisq = ChiSquare(5)
    anchor = chisq.mean()
    for i in range(resolution + 1):
        x = 20.0 * i / resolution
        rows.append(("chisq5", x,
                     p_min_likelihood(chisq, x),
                     p_doubled(chisq, x, anchor, truncate=False),
                     p_conditional_continuous(chisq, x, anchor)))
    trunc = TruncatedNormal(0.5)
    t_anchor = trunc.mean()
    for i in range(resolution + 1):
        x = -0.5 + 4.5 * i / resolution
        rows.append(("truncnorm05", x,
                     p_min_likelihood(trunc, x),
                     p_doubled(trunc, x, t_anchor, truncate=False),
                     p_conditional_continuous(trunc, x, t_anchor)))
    return header, rows


def _fig4(resolution: int) -> tuple[list[str], list[tuple]]:
    del resolution  # support is a fixed integer range
    header = ["panel", "x", "p_min_likelihood", "p_conditional",
              "p_conditional_modified", "p_doubled"]
    rows = []
    for panel, n in (("binom10", 10), ("binom11", 11)):
        d = Binomial(n, 0.2)
        a = d.mean()
        for k in d.support().points():
            x = float(k)
            rows.append((panel, x,
                         p_min_likelihood(d, x),
                         p_conditional_discrete(d, x, a),
                         p_conditional_discrete(d, x, a, modified=True),
                         p_doubled(d, x)))
    return header, rows


def figure_data(which: str, resolution: int = 512) -> tuple[list[str], list[tuple]]:
    """Deterministic (header, rows) series behind each published figure.

    fig1: power of the four 5%-level chi-square(5) variance tests over rho.
    fig2: bias of the doubled and conditional variance tests by sample size
          (one-sample chi-square panel; two-sample panel with n1 = 6).
    fig3: the three p-value curves for chi-square(5) and the normal
          truncated at -0.5 (doubled series untruncated, as plotted).
    fig4: the four p-value curves across the support of binomial(10, 0.2)
          and binomial(11, 0.2).

    resolution controls continuous grids (fig1, fig3); fig2 and fig4 use
    fixed integer ranges.
    """
    if not isinstance(which, str) or which not in FIGURES:
        raise ValueError(f"unknown figure {which!r}; expected one of {FIGURES}")
    if not isinstance(resolution, int) or isinstance(resolution, bool) or resolution < 4:
        raise ValueError(f"resolution must be an integer >= 4, got {resolution!r}")
    builder = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4}[which]
    return builder(resolution)
