"""Probability layer: from row polynomials to exact PMFs and normal-law
diagnostics.

A row polynomial with nonnegative coefficients is read as a probability
generating function: P(X_n = k) = p_{n,k} / P_n(1).  Mean and variance stay
exact rationals; third and fourth standardized moments are floats computed
from exact central moments, converted only at the end so no cancellation
happens in floating point.

The distance-to-normal diagnostics report sup_k |F(k) - Phi((k - mu)/sigma)|
both with the PMF's own mean and standard deviation (self-standardization,
which makes convergence visible at desk scale) and with the limit
normalization center = d n / log n, scale = d sqrt(n) / log n whose first
order terms the asymptotic layer predicts.  Because X_n is lattice-valued,
the headline statistic evaluates at half-integers k + 1/2; the plain
integer-k statistic is kept alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import ExactPolynomial, X, ONE
from .errors import (
    InvalidDistributionError,
    ParameterError,
    UnsupportedShapeError,
    ZeroMassError,
    ZeroVarianceError,
)
from .families import FamilyDescriptor
from .recurrence import generate


def standard_normal_cdf(t: float) -> float:
    """Phi(t) via the error function; absolute error below 1e-12."""
    return 0.5 * (1.0 + math.erf(t / math.sqrt(2.0)))


@dataclass(frozen=True)
class PMFTable:
    """Exact distribution of X_n extracted from one row polynomial."""

    n: int
    probs: dict[int, Fraction]
    mean: Fraction
    variance: Fraction
    skewness: float
    excess_kurtosis: float

    def support(self) -> tuple[int, int]:
        keys = sorted(self.probs)
        return (keys[0], keys[-1])

    def raw_moment(self, j: int) -> Fraction:
        return sum((Fraction(k) ** j) * p for k, p in self.probs.items()) or Fraction(0)

    def central_moment(self, j: int) -> Fraction:
        mu = self.mean
        return sum((k - mu) ** j * p for k, p in self.probs.items()) or Fraction(0)


def pmf(p: ExactPolynomial, n: int) -> PMFTable:
    """Normalize a row polynomial into an exact PMF with exact low moments.

    Rejects negative coefficients (not a distribution) and zero total mass
    (rows below the first nonzero row of block-size-restricted families).
    """
    total = Fraction(0)
    probs: dict[int, Fraction] = {}
    for k, c in enumerate(p.coeffs):
        if c < 0:
            raise InvalidDistributionError(
                f"coefficient of x^{k} is negative ({c}); not a distribution"
            )
        if c > 0:
            probs[k] = c
        total += c
    if total == 0:
        raise ZeroMassError(f"row {n} has zero total mass")
    probs = {k: c / total for k, c in probs.items()}

    mean = sum(k * q for k, q in probs.items()) or Fraction(0)
    m2 = sum((k - mean) ** 2 * q for k, q in probs.items()) or Fraction(0)
    if m2 == 0:
        skew = 0.0
        kurt = 0.0
    else:
        m3 = sum((k - mean) ** 3 * q for k, q in probs.items())
        m4 = sum((k - mean) ** 4 * q for k, q in probs.items())
        sigma = math.sqrt(float(m2))
        skew = float(m3) / sigma**3
        kurt = float(m4) / sigma**4 - 3.0
    return PMFTable(
        n=n, probs=probs, mean=mean, variance=m2, skewness=skew, excess_kurtosis=kurt
    )


@dataclass(frozen=True)
class NormalityReport:
    """Distance of one exact PMF to the standard normal law.

    ks_plain / ks_continuity self-standardize with the exact mean and
    standard deviation; the _limit pair uses center = d n / log n and
    scale = d sqrt(n) / log n instead.
    """

    n: int
    ks_plain: float
    ks_continuity: float
    standardized_third: float
    standardized_fourth: float
    center: float
    scale: float
    ks_plain_limit: float
    ks_continuity_limit: float


def _sup_normal_gap(
    probs: dict[int, Fraction], center: float, scale: float, half_shift: bool
) -> float:
    """sup over lattice points k of |F(k) - Phi((k + shift - center)/scale)|."""
    keys = sorted(probs)
    lo, hi = keys[0], keys[-1]
    shift = 0.5 if half_shift else 0.0
    cumulative = Fraction(0)
    sup = 0.0
    for k in range(lo - 1, hi + 1):
        cumulative += probs.get(k, Fraction(0))
        gap = abs(float(cumulative) - standard_normal_cdf((k + shift - center) / scale))
        if gap > sup:
            sup = gap
    return sup


def normality(table: PMFTable, d: int) -> NormalityReport:
    """Compare an exact PMF to the normal law under both normalizations."""
    if table.n < 2:
        raise ParameterError(f"n must be >= 2 (log {table.n} breaks the scaling)")
    if table.variance == 0:
        raise ZeroVarianceError(f"row {table.n} has zero variance")
    if d < 1:
        raise ParameterError("limit normalization requires d >= 1")
    mu = float(table.mean)
    sigma = math.sqrt(float(table.variance))
    log_n = math.log(table.n)
    center = d * table.n / log_n
    scale = d * math.sqrt(table.n) / log_n
    return NormalityReport(
        n=table.n,
        ks_plain=_sup_normal_gap(table.probs, mu, sigma, False),
        ks_continuity=_sup_normal_gap(table.probs, mu, sigma, True),
        standardized_third=table.skewness,
        standardized_fourth=table.excess_kurtosis + 3.0,
        center=center,
        scale=scale,
        ks_plain_limit=_sup_normal_gap(table.probs, center, scale, False),
        ks_continuity_limit=_sup_normal_gap(table.probs, center, scale, True),
    )


def clt_scan(
    descriptor: FamilyDescriptor, ns: Sequence[int]
) -> list[NormalityReport]:
    """Normality reports for several row indices of one family."""
    if not ns:
        return []
    for n in ns:
        if n < 2:
            raise ParameterError(f"n must be >= 2, got {n}")
    d = descriptor.constants().d
    start = descriptor.spec.start_index
    polys = generate(descriptor.spec, max(ns))
    reports = []
    for n in sorted(set(ns)):
        if n < start:
            raise ZeroMassError(f"row {n} precedes the first row {start}")
        reports.append(normality(pmf(polys[n - start], n), d))
    return reports


@dataclass(frozen=True)
class MeanIdentityReport:
    """Exact check of the ratio formula E X_n = T_{n+1}(1)/(m T_n(1)) - (1+c)/m."""

    family: str
    n_max: int
    ok: bool
    first_mismatch: Optional[tuple[int, Fraction, Fraction]] = None  # (n, mean, formula)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.family}: mean identity holds exactly for n <= {self.n_max}"
        n, mean, formula = self.first_mismatch
        return f"{self.family}: mean identity fails at n={n}: pmf {mean}, formula {formula}"


def _ratio_shape(descriptor: FamilyDescriptor) -> Fraction:
    """Return c for a family of shape gamma = x + c, no lags, default start."""
    spec = descriptor.spec
    if (
        spec.lags
        or spec.start_index != 0
        or spec.start_poly != ONE
        or spec.gamma.degree != 1
        or spec.gamma.coefficient(1) != 1
    ):
        raise UnsupportedShapeError(
            "ratio identities require gamma = x + c with no lag terms"
        )
    return spec.gamma.coefficient(0)


def mean_identity_check(descriptor: FamilyDescriptor, n_max: int) -> MeanIdentityReport:
    """Verify the exact mean formula for a gamma = x + c family, n <= n_max."""
    c = _ratio_shape(descriptor)
    m = descriptor.spec.m
    label = descriptor.spec.label or descriptor.name
    polys = generate(descriptor.spec, n_max + 1)
    totals = [p(Fraction(1)) for p in polys]
    for n in range(n_max + 1):
        mean = pmf(polys[n], n).mean
        formula = totals[n + 1] / (m * totals[n]) - (1 + c) / m
        if mean != formula:
            return MeanIdentityReport(label, n_max, False, (n, mean, formula))
    return MeanIdentityReport(label, n_max, True)


def variance_formula_gap(descriptor: FamilyDescriptor, n: int) -> Fraction:
    """Gap between the published ratio formula for the variance and the
    exact variance.

    The formula (T_{n+2}(1) - T_{n+1}(1)^2) / (m^2 T_n(1)) - 1/m mixes a
    second-order ratio with the square of an unnormalized total, and does
    not reproduce the exact variance; this helper returns formula - exact
    so the discrepancy can be inspected numerically rather than asserted.
    """
    _ratio_shape(descriptor)
    m = descriptor.spec.m
    polys = generate(descriptor.spec, n + 2)
    totals = [p(Fraction(1)) for p in polys]
    claimed = (totals[n + 2] - totals[n + 1] ** 2) / (m * m * totals[n]) - 1 / m
    exact = pmf(polys[n], n).variance
    return claimed - exact
