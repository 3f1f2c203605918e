"""Acceptance gate: fifteen criteria, one pass/fail line each.

Run ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Tolerances are half a unit in the last printed digit of the
reference value unless a looser tolerance is stated explicitly.

Reference entries that are themselves defective — formed by dividing
already-rounded values, truncated instead of rounded, or misprinted — are
asserted against exact recomputation (rational arithmetic or independent
quadrature) instead of the rounded entry, with a printed note. This keeps
the gate anchored to the mathematics rather than to rounding artifacts.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from math import comb

import pytest

from twoside import analysis, pvalue, specfun, stattests
from twoside.dist import (
    Binomial,
    ChiSquare,
    FRatio,
    Hypergeometric,
    Triangular,
    TruncatedNormal,
    Uniform,
)

CHISQ5 = ChiSquare(5)
ALPHA = 0.05


def criterion(number: int, blurb: str):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"CRITERION {number:2d}: FAIL — {blurb}")
                raise
            print(f"CRITERION {number:2d}: PASS — {blurb}")
        return wrapper
    return decorate


# ---------------------------------------------------------------------------
# shared exact oracles


def binom_pmf_exact(n: int, p: float) -> dict[int, Fraction]:
    pf = Fraction(p)
    return {k: comb(n, k) * pf**k * (1 - pf) ** (n - k) for k in range(n + 1)}


def hyper_pmf_exact(row1: int, col1: int, total: int) -> dict[int, Fraction]:
    denom = comb(total, row1)
    lo = max(0, row1 + col1 - total)
    hi = min(row1, col1)
    return {k: Fraction(comb(col1, k) * comb(total - col1, row1 - k), denom)
            for k in range(lo, hi + 1)}


_TIE = Fraction(1) + Fraction(1, 10**9)


def oracle_discrete(pmf: dict[int, Fraction], x: int, method: str,
                    anchor: float) -> Fraction:
    """Full-support enumeration of a discrete two-sided p-value.

    Tail masses are exact rationals; the anchor comparison uses the float
    anchor because the anchor convention itself is float-valued.
    """
    cdf_x = sum(q for k, q in pmf.items() if k <= x)
    sf_x = sum(q for k, q in pmf.items() if k >= x)
    if method == pvalue.DOUBLED:
        return min(Fraction(1), 2 * min(cdf_x, sf_x))
    if method == pvalue.MIN_LIKELIHOOD:
        cut = pmf[x] * _TIE
        return sum(q for q in pmf.values() if q <= cut)
    w_left = sum(q for k, q in pmf.items() if k <= anchor)
    w_right = sum(q for k, q in pmf.items() if k >= anchor)
    attainable = anchor == math.floor(anchor) and int(anchor) in pmf
    if x == anchor:
        return Fraction(1)
    base = cdf_x / w_left if x < anchor else sf_x / w_right
    if method == pvalue.CONDITIONAL:
        return min(Fraction(1), base)
    scale = 1 + pmf[int(anchor)] if attainable else Fraction(1)
    return min(Fraction(1), scale * base)


def corrected_trapezoid(g, gp_a: float, gp_b: float, a: float, b: float,
                        panels: int) -> float:
    h = (b - a) / panels
    inner = math.fsum(g(a + i * h) for i in range(1, panels))
    total = h * (0.5 * (g(a) + g(b)) + inner)
    return total - h * h / 12.0 * (gp_b - gp_a)


def gamma_lower_oracle(a: float, x: float, panels: int = 10_000) -> float:
    """integral_0^x t^(a-1) e^(-t) dt / Gamma(a), via t = u^2."""
    c = 2.0 * math.exp(-math.lgamma(a))

    def g(u: float) -> float:
        return c * u ** (2.0 * a - 1.0) * math.exp(-u * u)

    def gp(u: float) -> float:
        lead = 0.0 if abs(2.0 * a - 1.0) < 1e-15 else (2.0 * a - 1.0) * u ** (2.0 * a - 2.0)
        return c * math.exp(-u * u) * (lead - 2.0 * u ** (2.0 * a))

    b = math.sqrt(x)
    return corrected_trapezoid(g, gp(0.0), gp(b), 0.0, b, panels)


def beta_oracle(x: float, a: float, b: float, panels: int = 10_000) -> float:
    """integral_0^x t^(a-1)(1-t)^(b-1) dt / B(a,b), via t = u^2 (a >= 1)."""
    log_b = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    c = 2.0 * math.exp(-log_b)

    def g(u: float) -> float:
        return c * u ** (2.0 * a - 1.0) * (1.0 - u * u) ** (b - 1.0)

    def gp(u: float) -> float:
        t1 = (2.0 * a - 1.0) * u ** (2.0 * a - 2.0) * (1.0 - u * u) ** (b - 1.0)
        t2 = 2.0 * (b - 1.0) * u ** (2.0 * a) * (1.0 - u * u) ** (b - 2.0)
        return c * (t1 - t2)

    ub = math.sqrt(x)
    return corrected_trapezoid(g, gp(0.0), gp(ub), 0.0, ub, panels)


def chi5_sf_oracle(t: float) -> float:
    """1 - integral_0^t f_5 via quadrature, independent of specfun."""
    k = 5
    c = 2.0 * math.exp(-(k / 2.0) * math.log(2.0) - math.lgamma(k / 2.0))

    def g(u: float) -> float:
        return c * u ** (k - 1) * math.exp(-u * u / 2.0)

    def gp(u: float) -> float:
        return c * math.exp(-u * u / 2.0) * ((k - 1) * u ** (k - 2) - u**k)

    b = math.sqrt(t)
    return 1.0 - corrected_trapezoid(g, gp(0.0), gp(b), 0.0, b, 10_000)


# ---------------------------------------------------------------------------
# golden-value suite


@criterion(1, "chi-square(5) tail values and equal-density conjugate points")
def test_criterion_01():
    d = CHISQ5
    assert d.cdf(1.0) == pytest.approx(0.0374, abs=5e-5)
    assert d.pdf_or_pmf(1.0) == pytest.approx(0.0807, abs=5e-5)
    cj1 = pvalue.conjugate_point(d, 1.0)
    assert cj1 == pytest.approx(6.711, abs=1e-3)
    # the reference prints sf(conjugate) = 0.2431, which reproduces only if
    # the conjugate is evaluated slightly low (≈6.710); the exact values are
    # sf(6.711441) = 0.2430004 and sf(6.711) = 0.2430360, both confirmed by
    # independent quadrature and both rounding to 0.2430
    assert d.sf(cj1) == pytest.approx(chi5_sf_oracle(cj1), abs=1e-9)
    assert d.sf(cj1) == pytest.approx(0.2430004, abs=5e-7)
    assert d.sf(6.711) == pytest.approx(0.2430360, abs=5e-7)
    assert d.sf(cj1) == pytest.approx(0.2431, abs=1.5e-4)
    print("note: sf at the conjugate of 1 is 0.24300 (quadrature-confirmed); "
          "the printed 0.2431 needs the conjugate rounded down to ~6.710")

    assert d.cdf(0.5) == pytest.approx(0.0079, abs=5e-5)
    assert d.pdf_or_pmf(0.5) == pytest.approx(0.0366, abs=5e-5)
    cj05 = pvalue.conjugate_point(d, 0.5)
    assert min(abs(cj05 - 9.255), abs(cj05 - 9.256)) <= 1e-3
    assert d.sf(cj05) == pytest.approx(0.0993, abs=5e-5)
    assert d.sf(cj05) == pytest.approx(chi5_sf_oracle(cj05), abs=1e-9)


@criterion(2, "conditional p-value chain for the chi-square(5) variance test")
def test_criterion_02():
    d = CHISQ5
    assert d.cdf(5.0) == pytest.approx(0.584, abs=5e-4)
    assert pvalue.p_conditional_continuous(d, 0.5, 5.0) == pytest.approx(0.0135, abs=5e-5)
    assert pvalue.p_conditional_continuous(d, 9.256, 5.0) == pytest.approx(0.239, abs=5e-4)
    point = pvalue.pc_equivalent_point(d, 0.5, 5.0)
    assert point == pytest.approx(16.48, abs=1e-2)
    assert d.sf(point) == pytest.approx(0.0056, abs=5e-5)


@criterion(3, "optimal unbiased weights and critical region at the 5% level")
def test_criterion_03():
    w_star, region = analysis.umpu_weights(CHISQ5, ALPHA)
    assert region.c_left == pytest.approx(0.989, abs=1e-3)
    assert region.c_right == pytest.approx(14.37, abs=1e-2)
    assert w_star * ALPHA == pytest.approx(0.037, abs=5e-4)
    assert (1.0 - w_star) * ALPHA == pytest.approx(0.013, abs=5e-4)
    assert w_star == pytest.approx(0.731, abs=1e-3)
    assert region.anchor == pytest.approx(6.403, abs=5e-3)


@criterion(4, "bias and minimum power of the 5%-level variance tests")
def test_criterion_04():
    doubled = analysis.bias(CHISQ5, "doubled", ALPHA)
    conditional = analysis.bias(CHISQ5, "conditional", ALPHA)
    minlik = analysis.bias(CHISQ5, "min_likelihood", ALPHA)
    assert doubled.bias == pytest.approx(-0.0046, abs=2e-4)
    assert conditional.bias == pytest.approx(-0.0020, abs=2e-4)
    assert doubled.min_power == pytest.approx(0.045, abs=1e-3)
    assert conditional.min_power == pytest.approx(0.048, abs=1e-3)
    assert minlik.min_power == pytest.approx(0.01, abs=2e-3)


@criterion(5, "truncated-normal mean and left-tail weight")
def test_criterion_05():
    d = TruncatedNormal(0.5)
    mean = d.mean()
    assert mean == pytest.approx(0.509, abs=1e-3)
    assert d.cdf(mean) == pytest.approx(0.558, abs=1e-3)


REFERENCE_WEIGHTS = {
    (10, 0.1): (0.736, 1.130, 0.531), (10, 0.2): (0.678, 1.086, 0.521),
    (11, 0.1): (0.697, 2.304, 0.697), (11, 0.2): (0.617, 1.614, 0.617),
    (20, 0.1): (0.677, 1.113, 0.527), (20, 0.2): (0.630, 1.070, 0.517),
    (21, 0.1): (0.648, 1.844, 0.648), (21, 0.2): (0.586, 1.416, 0.586),
    (50, 0.1): (0.616, 1.083, 0.520), (50, 0.2): (0.584, 1.049, 0.512),
    (51, 0.1): (0.598, 1.485, 0.598), (51, 0.2): (0.556, 1.250, 0.556),
    (100, 0.1): (0.583, 1.063, 0.515), (100, 0.2): (0.559, 1.036, 0.509),
    (101, 0.1): (0.570, 1.325, 0.570), (101, 0.2): (0.540, 1.172, 0.540),
    (200, 0.1): (0.559, 1.046, 0.511), (200, 0.2): (0.542, 1.026, 0.507),
    (201, 0.1): (0.550, 1.221, 0.550), (201, 0.2): (0.528, 1.119, 0.528),
    (500, 0.1): (0.538, 1.030, 0.507), (500, 0.2): (0.527, 1.017, 0.504),
    (501, 0.1): (0.532, 1.135, 0.532), (501, 0.2): (0.518, 1.074, 0.518),
    (1000, 0.1): (0.527, 1.022, 0.505), (1000, 0.2): (0.519, 1.012, 0.503),
    (1001, 0.1): (0.522, 1.094, 0.522), (1001, 0.2): (0.513, 1.052, 0.513),
}


@criterion(6, "binomial tail-weight table regeneration, 28 rows to ±0.001")
def test_criterion_06():
    rows = analysis.binomial_weight_table()
    assert len(rows) == 28
    tol = 1e-3 + 1e-9
    for row in rows:
        w_l, ratio, w_l_mod = REFERENCE_WEIGHTS[(row["n"], row["p"])]
        assert row["w_left"] == pytest.approx(w_l, abs=tol)
        assert row["weight_ratio"] == pytest.approx(ratio, abs=tol)
        assert row["w_left_modified"] == pytest.approx(w_l_mod, abs=tol)


@criterion(7, "binomial spot p-values and modified/conditional ratio identities")
def test_criterion_07():
    # --- n=10, p=0.2, x=5 ---------------------------------------------------
    d10 = Binomial(10, 0.2)
    anchor = 2.0
    pmf = binom_pmf_exact(10, 0.2)
    p_prob = pvalue.p_value(d10, 5, pvalue.MIN_LIKELIHOOD)
    p_f = pvalue.p_value(d10, 5, pvalue.DOUBLED)
    p_c = pvalue.p_value(d10, 5, pvalue.CONDITIONAL, anchor_value=anchor)
    p_cm = pvalue.p_value(d10, 5, pvalue.CONDITIONAL_MODIFIED, anchor_value=anchor)
    assert p_prob == pytest.approx(0.033, abs=5e-4)
    assert p_f == pytest.approx(0.066, abs=5e-4)
    assert p_cm == pytest.approx(0.068, abs=5e-4)
    # printed .052 truncated the exact conditional value 0.052538 (correct
    # rounding .053); assert the exact rational instead
    exact_pc = float(oracle_discrete(pmf, 5, pvalue.CONDITIONAL, anchor))
    assert p_c == pytest.approx(exact_pc, abs=1e-12)
    assert p_c == pytest.approx(0.052, abs=1e-3)
    print("note: conditional p at (n=10, p=.2, x=5) is 0.052538 exactly; the "
          "printed .052 is a truncation of it")

    # ratio identities (±0.01 on ratios)
    scale = 1.0 + d10.pdf_or_pmf(2)
    assert scale == pytest.approx(1.3, abs=1e-2)
    for x in range(11):
        if x == 2:
            continue
        pc_x = pvalue.p_value(d10, x, pvalue.CONDITIONAL, anchor_value=anchor)
        pcm_x = pvalue.p_value(d10, x, pvalue.CONDITIONAL_MODIFIED,
                               anchor_value=anchor)
        if pcm_x < 1.0:
            assert pcm_x / pc_x == pytest.approx(1.3, abs=1e-2)
    for x in range(4, 11):
        pp_x = pvalue.p_value(d10, x, pvalue.MIN_LIKELIHOOD)
        pc_x = pvalue.p_value(d10, x, pvalue.CONDITIONAL, anchor_value=anchor)
        pcm_x = pvalue.p_value(d10, x, pvalue.CONDITIONAL_MODIFIED,
                               anchor_value=anchor)
        assert pc_x / pp_x == pytest.approx(1.60, abs=1e-2)
        assert pcm_x / pp_x == pytest.approx(2.09, abs=1e-2)

    # --- n=101, p=0.1, x=17 -------------------------------------------------
    d101 = Binomial(101, 0.1)
    anchor101 = pvalue.resolve_anchor(d101, pvalue.MEAN)
    pmf101 = binom_pmf_exact(101, 0.1)
    p_prob = pvalue.p_value(d101, 17, pvalue.MIN_LIKELIHOOD)
    p_f = pvalue.p_value(d101, 17, pvalue.DOUBLED)
    p_c = pvalue.p_value(d101, 17, pvalue.CONDITIONAL, anchor_value=anchor101)
    assert p_prob == pytest.approx(0.030, abs=5e-4)
    assert p_c == pytest.approx(0.052, abs=5e-4)
    # the printed doubled value 0.06 equals 2 x 0.030 — the min-likelihood
    # value doubled by mistake; the doubled method doubles the one-sided
    # tail 0.022528, giving 0.045056 (asserted exactly)
    exact_pf = float(oracle_discrete(pmf101, 17, pvalue.DOUBLED, anchor101))
    assert p_f == pytest.approx(exact_pf, abs=1e-12)
    assert p_f == pytest.approx(0.0450560, abs=5e-7)
    print("note: doubled p at (n=101, p=.1, x=17) is 0.045056 exactly; the "
          "printed 0.06 doubles the min-likelihood value 0.030 instead of "
          "the one-sided tail 0.0225")


# (prob, p_one_sided, p_min_likelihood, p_conditional) per n11; None marks a
# defective printed cell handled by exact recomputation below
REFERENCE_FAMILY1 = {
    0: (0.143, 0.143, 0.286, 0.274),
    1: (0.378, 0.521, 1.0, 1.0),
    2: (0.336, 0.479, 0.622, 1.0),
    3: (0.124, 0.143, 0.143, 0.299),
    4: (0.019, 0.019, 0.019, 0.040),
    5: (0.001, 0.001, 0.001, 0.002),
}
REFERENCE_FAMILY2 = {
    0: (0.258, 0.258, 0.570, 0.374),
    1: (0.430, 0.689, 1.0, 1.0),
    2: (0.246, 0.311, 0.311, 1.0),
    3: (0.059, 0.065, 0.065, None),   # printed .209 = .065/.311 (rounded division)
    4: (0.006, 0.006, 0.006, None),   # printed .028 is a misprint; exact 0.0197
    5: (0.0002, 0.0002, 0.0002, 0.0006),
}


def _table2_exact(row1: int, col1: int, total: int) -> list[dict[str, Fraction]]:
    pmf = hyper_pmf_exact(row1, col1, total)
    anchor = Fraction(row1 * col1, total)
    w_left = sum(q for k, q in pmf.items() if k <= anchor)
    w_right = sum(q for k, q in pmf.items() if k >= anchor)
    out = []
    for k in sorted(pmf):
        cdf_k = sum(q for u, q in pmf.items() if u <= k)
        sf_k = sum(q for u, q in pmf.items() if u >= k)
        p_min = sum(q for q in pmf.values() if q <= pmf[k])
        if k == anchor:
            p_cond = Fraction(1)
        elif k < anchor:
            p_cond = min(Fraction(1), cdf_k / w_left)
        else:
            p_cond = min(Fraction(1), sf_k / w_right)
        out.append({"n11": k, "prob": pmf[k], "p_one_sided": min(cdf_k, sf_k),
                    "p_min_likelihood": p_min, "p_conditional": p_cond})
    return out


@criterion(8, "hypergeometric p-value tables for both margin families")
def test_criterion_08():
    for margins, reference in (((9, 5, 30), REFERENCE_FAMILY1),
                               ((9, 5, 40), REFERENCE_FAMILY2)):
        rows = analysis.fisher_pvalue_table(*margins)
        exact_rows = _table2_exact(*margins)
        for row, exact in zip(rows, exact_rows):
            assert row["n11"] == exact["n11"]
            # exact recomputation: every cell against rational arithmetic
            for key in ("prob", "p_one_sided", "p_min_likelihood", "p_conditional"):
                assert row[key] == pytest.approx(float(exact[key]), abs=1e-12)
            # printed entries at ±0.001 (±0.0005 for 4-decimal entries)
            printed = reference[row["n11"]]
            for key, ref in zip(("prob", "p_one_sided", "p_min_likelihood",
                                 "p_conditional"), printed):
                if ref is None:
                    continue
                tol = (5e-4 if ref < 0.001 else 1e-3) + 1e-9
                assert row[key] == pytest.approx(ref, abs=tol)
    rows40 = {r["n11"]: r for r in analysis.fisher_pvalue_table(9, 5, 40)}
    assert rows40[3]["p_conditional"] == pytest.approx(1197.0 / 5692.0, abs=1e-12)
    assert rows40[4]["p_conditional"] == pytest.approx(28.0 / 1423.0, abs=1e-12)
    print("note: margin family (9,5,40) conditional cells at n11=3,4 are "
          "1197/5692 = 0.2103 and 28/1423 = 0.0197 exactly; the printed .209 "
          "divides already-rounded entries (.065/.311) and .028 is a misprint")


@criterion(9, "association-statistic orderings for margins (9,5,30)")
def test_criterion_09():
    assert stattests.davis_ordering(9, 5, 30, "t1") == [
        (1,), (2,), (0,), (3,), (4,), (5,)]
    assert stattests.davis_ordering(9, 5, 30, "t4") == [
        (2,), (1,), (3,), (4,), (0,), (5,)]
    assert stattests.davis_ordering(9, 5, 30, "t5") == [
        (1, 2), (0, 3), (4,), (5,)]
    assert stattests.davis_ordering(9, 5, 30, "t6") == [
        (2,), (1,), (3,), (0,), (4,), (5,)]


# ---------------------------------------------------------------------------
# property suite


@criterion(10, "discrete p-values equal full-support enumeration (brute force)")
def test_criterion_10():
    methods = (pvalue.DOUBLED, pvalue.CONDITIONAL, pvalue.CONDITIONAL_MODIFIED,
               pvalue.MIN_LIKELIHOOD)
    worst = 0.0
    checked = 0

    def sweep(d, pmf):
        nonlocal worst, checked
        anchor = pvalue.resolve_anchor(d, pvalue.MEAN)
        for x in d.support().points():
            for method in methods:
                got = pvalue.p_value(d, x, method, anchor_value=anchor)
                want = float(oracle_discrete(pmf, x, method, anchor))
                err = abs(got - want)
                worst = max(worst, err)
                checked += 1
                assert err <= 1e-12, (d, x, method, got, want)

    for n in range(1, 13):
        for p in (0.1, 0.2, 0.5):
            sweep(Binomial(n, p), binom_pmf_exact(n, p))
    for total in range(2, 41):
        for row1 in range(1, total):
            for col1 in range(1, total):
                sweep(Hypergeometric(row1, col1, total),
                      hyper_pmf_exact(row1, col1, total))
    assert checked > 500_000
    print(f"note: {checked} comparisons, worst |error| = {worst:.3e}")


class _MonotoneImage:
    """Continuous distribution of T(X), for strictly increasing T."""

    is_discrete = False

    def __init__(self, base, inverse):
        self._base = base
        self._inverse = inverse

    def cdf(self, y: float) -> float:
        return self._base.cdf(self._inverse(y))

    def sf(self, y: float) -> float:
        return self._base.sf(self._inverse(y))


@criterion(11, "conditional p-value invariance under monotone transforms")
def test_criterion_11():
    cases = [
        (CHISQ5, [0.3, 0.9, 2.0, 4.0, 6.0, 9.0, 13.0]),
        (FRatio(5, 11), [0.2, 0.5, 0.9, 1.5, 2.5, 4.0]),
    ]
    transforms = [
        (math.log, math.exp),
        (lambda x: 3.0 * x + 2.0, lambda y: (y - 2.0) / 3.0),
    ]
    for d, grid in cases:
        anchor = pvalue.resolve_anchor(d, pvalue.MEAN)
        for forward, inverse in transforms:
            image = _MonotoneImage(d, inverse)
            for x in grid:
                direct = pvalue.p_conditional_continuous(d, x, anchor)
                mapped = pvalue.p_conditional_continuous(
                    image, forward(x), forward(anchor))
                assert mapped == pytest.approx(direct, abs=1e-10)


@criterion(12, "triangular mode-conditional identity and uniform degeneracy")
def test_criterion_12():
    d = Triangular(1.0, 3.0)
    for i in range(200):
        x = -1.0 + 4.0 * (i + 0.5) / 200.0
        p_cond = pvalue.p_conditional_continuous(d, x, 0.0)
        p_min = pvalue.p_min_likelihood(d, x)
        assert p_cond == pytest.approx(p_min, abs=1e-10)
    u = Uniform(0.0, 1.0)
    for i in range(1, 20):
        assert pvalue.p_min_likelihood(u, i / 20.0) == 1.0


@criterion(13, "power-derivative ordering in the left-tail weight")
def test_criterion_13():
    grid = [0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.95]
    for k in (3, 5, 10):
        d = ChiSquare(k)
        for alpha in (0.01, 0.05, 0.1):
            vals = [analysis.power_derivative_at_null(d, alpha, w) for w in grid]
            assert all(a > b for a, b in zip(vals, vals[1:]))
            f_at_mean = d.cdf(float(k))
            assert abs(analysis.power_derivative_at_null(d, alpha, f_at_mean)) < abs(
                analysis.power_derivative_at_null(d, alpha, 0.5))


@criterion(14, "variance-ratio bias crossover for unequal sample sizes")
def test_criterion_14():
    # first sample size 6 (numerator df 5); asserted only at sample-size
    # ratios of 2.0 and 3.0 — below a ratio of about 1.7 the two biases are
    # too close to order reliably, so nothing is asserted there
    for n2 in (12, 18):
        d = FRatio(5, n2 - 1)
        b_doubled = analysis.bias(d, "doubled", ALPHA).bias
        b_conditional = analysis.bias(d, "conditional", ALPHA).bias
        assert abs(b_conditional) < abs(b_doubled)


@criterion(15, "special-function quadrature oracles and inverse round-trips")
def test_criterion_15():
    for a in (0.5, 2.5, 7.0):
        for x in (0.8, 3.0, 9.0):
            assert specfun.reg_gamma_lower(a, x) == pytest.approx(
                gamma_lower_oracle(a, x), abs=1e-8)
    for a, b in ((2.0, 3.5), (5.0, 2.0), (1.5, 1.5)):
        for x in (0.2, 0.5, 0.8):
            assert specfun.reg_beta(x, a, b) == pytest.approx(
                beta_oracle(x, a, b), abs=1e-8)
    for a in (0.5, 2.5, 7.0):
        for p in (1e-4, 0.3, 0.7, 0.999):
            x = specfun.inv_reg_gamma_lower(a, p)
            assert specfun.reg_gamma_lower(a, x) == pytest.approx(p, abs=1e-10)
    for a, b in ((2.0, 3.5), (5.0, 2.0), (1.5, 1.5)):
        for p in (1e-4, 0.3, 0.7, 0.999):
            x = specfun.inv_reg_beta(p, a, b)
            assert specfun.reg_beta(x, a, b) == pytest.approx(p, abs=1e-10)
