"""Two-sided p-value constructions for asymmetric null distributions.

A two-sided p-value needs a rule for combining the two tails. The rules
implemented here, for an observed value x and a tail anchor A that splits
the support:

- ``doubled``: twice the smaller tail probability, by default truncated
  at 1. The discrete form is 2 * min(P(X <= x), P(X >= x)).
- ``weighted``: each tail divided by a caller-chosen weight; the doubled
  rule is the special case with weights (1/2, 1/2).
- ``conditional``: each tail divided by its own null probability, i.e. the
  p-value conditional on the observed side of the anchor. The discrete
  version uses inclusive tail weights P(X <= A) and P(X >= A).
- ``conditional_modified``: discrete variant dividing both weights by
  1 + P(X = A) when the anchor is attainable, which penalizes the
  anchor point itself less severely.
- ``min_likelihood``: total null probability of outcomes no more likely
  than the observed one.

Anchors are resolved by :func:`resolve_anchor` from "mean", "mode",
"median", or an explicit numeric value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .dist import Distribution, Uniform
from .roots import brentq

__all__ = [
    "DOUBLED",
    "WEIGHTED",
    "CONDITIONAL",
    "CONDITIONAL_MODIFIED",
    "MIN_LIKELIHOOD",
    "METHODS",
    "MEAN",
    "MODE",
    "MEDIAN",
    "TailAnchor",
    "Weights",
    "resolve_anchor",
    "tail_weights",
    "p_value",
    "p_weighted",
    "p_doubled",
    "p_conditional_continuous",
    "p_conditional_discrete",
    "p_min_likelihood",
    "conjugate_point",
    "pc_equivalent_point",
]

DOUBLED = "doubled"
WEIGHTED = "weighted"
CONDITIONAL = "conditional"
CONDITIONAL_MODIFIED = "conditional_modified"
MIN_LIKELIHOOD = "min_likelihood"
METHODS = (DOUBLED, WEIGHTED, CONDITIONAL, CONDITIONAL_MODIFIED, MIN_LIKELIHOOD)

MEAN = "mean"
MODE = "mode"
MEDIAN = "median"

TailAnchor = Union[float, str]

# relative tolerance for treating two masses as tied in min-likelihood sums
DEFAULT_TIE_TOL = 1e-9

# tolerance of the bracketing search for conjugate points
_ROOT_RTOL = 1e-13


@dataclass(frozen=True)
class Weights:
    """Tail weights (w_left, w_right).

    For the weighted construction they must sum to 1. Conditional tail
    weights of a discrete family sum to 1 + P(X = A) instead, because both
    tails include the anchor point; either normalization is accepted here
    and validated where it matters.
    """

    w_left: float
    w_right: float

    def __post_init__(self) -> None:
        for name, w in (("w_left", self.w_left), ("w_right", self.w_right)):
            if not math.isfinite(w) or not (0.0 < w <= 1.0):
                raise ValueError(f"{name} must lie in (0, 1], got {w!r}")


def resolve_anchor(d: Distribution, anchor: TailAnchor) -> float:
    """Resolve "mean" / "mode" / "median" / an explicit number to a point.

    The mode is rejected when it is not unique (flat or two-point-tied
    densities), and explicit values must lie inside the closed convex hull
    of the support.
    """
    if isinstance(anchor, str):
        if anchor == MEAN:
            return d.mean()
        if anchor == MEDIAN:
            return float(d.median())
        if anchor == MODE:
            modes = d.mode_set()
            if len(modes) != 1:
                listed = " and ".join(f"{m:g}" for m in modes)
                raise ValueError(
                    f"mode is not unique (modes at {listed}); pass an explicit anchor value"
                )
            return modes[0]
        raise ValueError(f"unknown anchor {anchor!r}; expected 'mean', 'mode', 'median', or a number")
    value = float(anchor)
    if math.isnan(value):
        raise ValueError("anchor value must not be NaN")
    sup = d.support()
    if not (sup.lo <= value <= sup.hi):
        raise ValueError(f"anchor {value!r} lies outside the support [{sup.lo!r}, {sup.hi!r}]")
    return value


def tail_weights(d: Distribution, anchor_value: float) -> Weights:
    """Null probabilities of the two tails cut at the anchor.

    Discrete tails are inclusive on both sides, so the weights sum to
    1 + P(X = A) when the anchor is attainable.
    """
    if d.is_discrete:
        return Weights(d.cdf(anchor_value), d.sf(anchor_value))
    lower = d.cdf(anchor_value)
    return Weights(lower, 1.0 - lower)


def _modified_scale(d: Distribution, anchor_value: float) -> float:
    """1 + P(X = A) when the anchor is an attainable support point, else 1."""
    if not d.is_discrete or not float(anchor_value).is_integer():
        return 1.0
    sup = d.support()
    if not sup.contains(anchor_value):
        return 1.0
    return 1.0 + d.pdf_or_pmf(anchor_value)


def p_weighted(d: Distribution, x: float, anchor_value: float, weights: Weights) -> float:
    """Tail probability divided by its weight, capped at 1 (continuous)."""
    if d.is_discrete:
        raise ValueError("p_weighted is defined for continuous distributions; "
                         "use p_conditional_discrete for discrete families")
    if abs(weights.w_left + weights.w_right - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {weights.w_left!r} + {weights.w_right!r}")
    if x == anchor_value:
        return 1.0
    if x < anchor_value:
        return min(1.0, d.cdf(x) / weights.w_left)
    return min(1.0, d.sf(x) / weights.w_right)


def p_doubled(d: Distribution, x: float, anchor_value: float | None = None, *,
              truncate: bool = True) -> float:
    """Twice the smaller tail probability.

    Continuous families need the anchor to pick the tail; the discrete form
    doubles the smaller of the two inclusive tails and needs no anchor.
    With ``truncate=False`` the raw doubled value is returned even when it
    exceeds 1, which is what the diagnostic figure series plot.
    """
    if d.is_discrete:
        raw = 2.0 * min(d.cdf(x), d.sf(x))
    else:
        if anchor_value is None:
            raise ValueError("continuous doubled p-values need an anchor to pick the tail")
        if x == anchor_value:
            return 1.0
        raw = 2.0 * d.cdf(x) if x < anchor_value else 2.0 * d.sf(x)
    return min(1.0, raw) if truncate else raw


def p_conditional_continuous(d: Distribution, x: float, anchor_value: float) -> float:
    """Tail probability divided by the anchored tail's null probability."""
    if d.is_discrete:
        raise ValueError("use p_conditional_discrete for discrete families")
    w_left = d.cdf(anchor_value)
    if w_left <= 0.0 or w_left >= 1.0:
        raise ValueError(
            f"anchor {anchor_value!r} sits at or outside the support boundary; "
            "the conditional p-value needs both tails to have positive probability"
        )
    if x == anchor_value:
        return 1.0
    if x < anchor_value:
        return d.cdf(x) / w_left
    return d.sf(x) / (1.0 - w_left)


def p_conditional_discrete(d: Distribution, x: float, anchor_value: float, *,
                           modified: bool = False) -> float:
    """Inclusive tail probability divided by the tail weight, capped at 1.

    With ``modified=True`` both weights are divided by 1 + P(X = A) when the
    anchor is attainable; for unattainable anchors the two variants agree.
    """
    if not d.is_discrete:
        raise ValueError("use p_conditional_continuous for continuous families")
    w = tail_weights(d, anchor_value)
    scale = _modified_scale(d, anchor_value) if modified else 1.0
    if x == anchor_value:
        return 1.0
    if x < anchor_value:
        return min(1.0, d.cdf(x) * scale / w.w_left)
    return min(1.0, d.sf(x) * scale / w.w_right)


def p_min_likelihood(d: Distribution, x: float, *, tie_tol: float = DEFAULT_TIE_TOL) -> float:
    """Null probability of outcomes no more likely than the observed one.

    Discrete: the sum of every mass within ``tie_tol`` (relative) of being
    at most the observed mass, so exact ties land on the same side of the
    cut regardless of rounding. Continuous: the observed tail plus the
    opposite tail beyond the equal-density point; a flat (uniform) density
    gives 1 identically.
    """
    if d.is_discrete:
        px = d.pdf_or_pmf(x)
        if px <= 0.0:
            return 0.0
        cut = px * (1.0 + tie_tol)
        pmf = d._tables().pmf
        return min(1.0, math.fsum(v for v in pmf if v <= cut))

    if isinstance(d, Uniform):
        return 1.0
    sup = d.support()
    if not sup.contains(x):
        return 0.0
    mode = d.mode_set()[0]
    if x == mode:
        return 1.0
    partner = conjugate_point(d, x)
    if x < mode:
        other = d.sf(partner) if partner is not None else 0.0
        return min(1.0, d.cdf(x) + other)
    other = d.cdf(partner) if partner is not None else 0.0
    return min(1.0, d.sf(x) + other)


def conjugate_point(d: Distribution, x: float) -> float | None:
    """The point on the other side of the mode with the same density as x.

    Returns None when no such point exists, i.e. when the density at the
    opposite support boundary still exceeds the density at x. Requires a
    continuous unimodal family and x distinct from the mode.
    """
    if d.is_discrete:
        raise ValueError("conjugate points are defined for continuous densities")
    mode = d.mode_set()[0]
    if x == mode:
        raise ValueError("the conjugate point is degenerate at the mode")
    sup = d.support()
    if not sup.contains(x):
        raise ValueError(f"x={x!r} lies outside the support [{sup.lo!r}, {sup.hi!r}]")
    fx = d.pdf_or_pmf(x)

    def height(t: float) -> float:
        return d.pdf_or_pmf(t) - fx

    if x < mode:
        # search to the right of the mode, expanding toward +inf if needed
        if math.isfinite(sup.hi):
            hi = sup.hi
            boundary = d.pdf_or_pmf(hi)
            if boundary > fx:
                return None
            if boundary == fx:
                return hi
        else:
            step = max(1.0, mode - x)
            hi = mode + step
            for _ in range(600):
                if d.pdf_or_pmf(hi) < fx:
                    break
                step *= 2.0
                hi = mode + step
            else:
                return None
        return brentq(height, mode, hi, rtol=_ROOT_RTOL, atol=1e-300)

    lo = sup.lo
    if lo == mode:
        # density is already decreasing from the boundary; no left branch
        return None
    boundary = d.pdf_or_pmf(lo)
    if boundary > fx:
        return None
    if boundary == fx:
        return lo
    return brentq(height, lo, mode, rtol=_ROOT_RTOL, atol=1e-300)


def pc_equivalent_point(d: Distribution, x: float, anchor_value: float) -> float | None:
    """The point in the opposite tail with the same conditional p-value as x.

    For continuous families the conditional p-value is uniform within each
    tail, so the equivalent point is a pure quantile computation. Returns
    None when the opposite tail cannot attain the value (only possible at
    the extreme ends, through rounding).
    """
    if d.is_discrete:
        raise ValueError("conditional equivalent points are defined for continuous families")
    if x == anchor_value:
        raise ValueError("x must differ from the anchor")
    w_left = d.cdf(anchor_value)
    pc = p_conditional_continuous(d, x, anchor_value)
    if x < anchor_value:
        target = 1.0 - (1.0 - w_left) * pc
    else:
        target = w_left * pc
    if not (0.0 < target < 1.0):
        return None
    return d.quantile(target)


def p_value(d: Distribution, x: float, method: str, *,
            anchor_value: float | None = None,
            weights: Weights | None = None,
            truncate: bool = True,
            tie_tol: float = DEFAULT_TIE_TOL) -> float:
    """Dispatch a two-sided p-value by method name.

    ``anchor_value`` must already be resolved (see :func:`resolve_anchor`);
    it is required by every method except ``min_likelihood``. The
    ``weighted`` method additionally requires ``weights``.
    """
    if method == MIN_LIKELIHOOD:
        return p_min_likelihood(d, x, tie_tol=tie_tol)
    if method not in METHODS:
        raise ValueError(f"unknown p-value method {method!r}; expected one of {METHODS}")
    if anchor_value is None and not (method == DOUBLED and d.is_discrete):
        raise ValueError(f"method {method!r} needs a resolved anchor value")
    if method == DOUBLED:
        return p_doubled(d, x, anchor_value, truncate=truncate)
    if method == WEIGHTED:
        if weights is None:
            raise ValueError("the weighted method needs explicit weights")
        return p_weighted(d, x, anchor_value, weights)
    modified = method == CONDITIONAL_MODIFIED
    if d.is_discrete:
        return p_conditional_discrete(d, x, anchor_value, modified=modified)
    # for continuous families P(X = A) = 0, so the modified variant
    # coincides with the plain conditional one
    return p_conditional_continuous(d, x, anchor_value)
