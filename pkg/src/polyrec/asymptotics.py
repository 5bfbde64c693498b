"""Saddle-point asymptotics for the EGF exponent f(z,x) = Q1(z,x) + Q2(x e^{mz}).

The pipeline: solve z f_z(z, x) = n for the saddle radius rho, then read off

    predicted mean      f_x(rho, 1)
    predicted variance  f_x + rho' f_zx + f_xx      (all at (rho, 1))
    rho'                -rho f_zx / (f_z + rho f_zz)
    b                   rho f_z + rho^2 f_zz
    log [z^n] e^f       -n log rho + f(rho,1) - log(2 pi b)/2

with leading terms d n / log n for the mean and d^2 n / log^2 n for the
variance, where d and alpha_d are the degree and leading coefficient of Q2.

Everything here is floating point on top of the exact Q1/Q2 data.  The
exponential part is evaluated per-term in log scale once m z crosses 300, so
probes far beyond the saddle degrade into an explicit overflow error instead
of silently producing inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ParameterError, SaddleFailureError, SaddleOverflowError
from .families import FamilyDescriptor, SaddleFunction, theorem_constants

_LOG_SCALE_THRESHOLD = 300.0
_FLOAT_LOG_MAX = 709.0  # log of the largest finite double, minus headroom


class Partials(NamedTuple):
    """f and its partial derivatives up to second order at one point."""

    f: float
    f_z: float
    f_zz: float
    f_x: float
    f_zx: float
    f_xx: float


def _exp_sums(sf: SaddleFunction, z: float, x: float) -> tuple[float, float, float]:
    """(Q2(u), u Q2'(u), u^2 Q2''(u)) at u = x e^{m z}, log-scaled if needed."""
    m = float(sf.m)
    w = m * z + math.log(x)  # log u
    c0 = s1 = s2 = 0.0
    if m * z <= _LOG_SCALE_THRESHOLD and w * max(sf.q2.degree, 1) <= _FLOAT_LOG_MAX:
        u = math.exp(w)
        power = 1.0
        for j, cj in enumerate(sf.q2.coeffs):
            if j:
                power *= u
            if cj == 0:
                continue
            t = float(cj) * power
            c0 += t
            s1 += j * t
            s2 += j * (j - 1) * t
        return c0, s1, s2
    for j, cj in enumerate(sf.q2.coeffs):
        if cj == 0:
            continue
        log_t = math.log(abs(float(cj))) + j * w
        if log_t > _FLOAT_LOG_MAX:
            raise SaddleOverflowError(
                f"term of degree {j} exceeds double range at z={z!r}, x={x!r}"
            )
        t = math.copysign(math.exp(log_t), float(cj))
        c0 += t
        s1 += j * t
        s2 += j * (j - 1) * t
    return c0, s1, s2


def _poly_at(poly, x: float) -> float:
    value = 0.0
    for c in reversed(poly.coeffs):
        value = value * x + float(c)
    return value


def f_partials(sf: SaddleFunction, z: float, x: float) -> Partials:
    """Evaluate f and its first and second partials at (z, x), x > 0.

    Uses the chain rule through u = x e^{m z}: with A = u Q2'(u) and
    B = u^2 Q2''(u),

        f_z  = Q1_z  + m A            f_x  = Q1_x  + A / x
        f_zz = Q1_zz + m^2 (A + B)    f_zx = Q1_zx + m (A + B) / x
        f_xx = Q1_xx + B / x^2
    """
    if x <= 0:
        raise ParameterError(f"x must be > 0, got {x!r}")
    m = float(sf.m)
    q2_val, a, b = _exp_sums(sf, z, x)

    f = f_z = f_zz = f_x = f_zx = f_xx = 0.0
    for p, poly in enumerate(sf.q1):
        v = _poly_at(poly, x)
        dv = _poly_at(poly.derivative(), x)
        ddv = _poly_at(poly.derivative().derivative(), x)
        f += v * z**p
        f_x += dv * z**p
        f_xx += ddv * z**p
        if p >= 1:
            f_z += p * v * z ** (p - 1)
            f_zx += p * dv * z ** (p - 1)
        if p >= 2:
            f_zz += p * (p - 1) * v * z ** (p - 2)

    f += q2_val
    f_z += m * a
    f_x += a / x
    f_zz += m * m * (a + b)
    f_zx += m * (a + b) / x
    f_xx += b / (x * x)
    return Partials(f=f, f_z=f_z, f_zz=f_zz, f_x=f_x, f_zx=f_zx, f_xx=f_xx)


def _saddle_residual(sf: SaddleFunction, z: float, x: float, n: int) -> float:
    """z f_z(z, x) - n, with overflow far above the root read as +inf."""
    try:
        return z * f_partials(sf, z, x).f_z - n
    except SaddleOverflowError:
        return math.inf


def solve_saddle(sf: SaddleFunction, n: int, x: float = 1.0) -> float:
    """Solve z f_z(z, x) = n for the saddle radius.

    Bracketed bisection (initial upper end 2 log n / (m d) + 4, doubled
    until the residual turns positive) refined by Newton steps.  The
    residual of the returned root satisfies |rho f_z - n| <= max(1e-9 n,
    1e-12), and b = rho f_z + rho^2 f_zz must come out positive; either
    failure raises SaddleFailureError.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if x <= 0:
        raise ParameterError(f"x must be > 0, got {x!r}")
    constants = theorem_constants(sf)
    if not constants.hypothesis_ok:
        raise SaddleFailureError(
            "saddle equation needs deg Q2 >= 1 with positive leading "
            f"coefficient and m > 0 (got d={constants.d}, "
            f"alpha_d={constants.alpha_d}, m={sf.m})"
        )
    m = float(sf.m)
    d = constants.d

    lo, s_lo = 0.0, -float(n)
    hi = 2.0 * math.log(max(n, 2)) / (m * d) + 4.0
    for _ in range(200):
        if _saddle_residual(sf, hi, x, n) > 0:
            break
        lo = hi
        hi *= 2.0
    else:
        raise SaddleFailureError(f"could not bracket the saddle for n={n}")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # interval at float resolution
        s_mid = _saddle_residual(sf, mid, x, n)
        if s_mid == 0:
            lo = hi = mid
            break
        if s_mid < 0:
            lo, s_lo = mid, s_mid
        else:
            hi = mid

    rho = 0.5 * (lo + hi)
    for _ in range(6):
        p = f_partials(sf, rho, x)
        residual = rho * p.f_z - n
        slope = p.f_z + rho * p.f_zz
        if slope <= 0:
            break
        step = residual / slope
        if rho - step <= 0:
            break
        rho -= step
        if abs(step) <= 1e-16 * max(rho, 1.0):
            break

    p = f_partials(sf, rho, x)
    residual = rho * p.f_z - n
    if abs(residual) > max(1e-9 * n, 1e-12):
        raise SaddleFailureError(
            f"saddle residual {residual!r} out of tolerance at n={n}"
        )
    if rho * p.f_z + rho * rho * p.f_zz <= 0:
        raise SaddleFailureError(
            f"b(rho, x) <= 0 at n={n}: input is not admissible"
        )
    return rho


@dataclass(frozen=True)
class SaddleReport:
    """Saddle-point predictions for one row index n (evaluated at x = 1)."""

    n: int
    rho: float
    rho_prime: float
    predicted_mean: float
    predicted_variance: float
    b_value: float
    coeff_estimate_log: float
    leading_mean: float
    leading_variance: float


def saddle_report(sf: SaddleFunction, n: int) -> SaddleReport:
    """Full prediction set at x = 1: saddle radius, its x-derivative,
    predicted mean and variance, and the log of the coefficient estimate
    rho^{-n} e^{f(rho,1)} / sqrt(2 pi b)."""
    if n < 3:
        raise ParameterError(f"n must be >= 3, got {n}")
    rho = solve_saddle(sf, n, 1.0)
    p = f_partials(sf, rho, 1.0)
    b = rho * p.f_z + rho * rho * p.f_zz
    rho_prime = -rho * p.f_zx / (p.f_z + rho * p.f_zz)
    predicted_mean = p.f_x
    predicted_variance = p.f_x + rho_prime * p.f_zx + p.f_xx
    d = theorem_constants(sf).d
    log_n = math.log(n)
    return SaddleReport(
        n=n,
        rho=rho,
        rho_prime=rho_prime,
        predicted_mean=predicted_mean,
        predicted_variance=predicted_variance,
        b_value=b,
        coeff_estimate_log=-n * math.log(rho) + p.f - 0.5 * math.log(2.0 * math.pi * b),
        leading_mean=d * n / log_n,
        leading_variance=d * d * n / (log_n * log_n),
    )


def log_fraction(q: Fraction) -> float:
    """log of a positive rational whose parts may exceed double range."""
    if q <= 0:
        raise ParameterError(f"log of non-positive value {q}")
    return math.log(q.numerator) - math.log(q.denominator)


@dataclass(frozen=True)
class ComparisonRecord:
    """Exact row statistics against the saddle-point predictions."""

    n: int
    exact_mean: float
    predicted_mean: float
    mean_rel_err: float
    exact_variance: float
    predicted_variance: float
    variance_rel_err: float
    exact_log_total: float
    estimate_log_total: float
    log_total_rel_err: float
    report: SaddleReport


def compare_exact(descriptor: FamilyDescriptor, n: int) -> ComparisonRecord:
    """Compare row n's exact mean, variance, and log total mass with the
    saddle-point predictions.

    For families whose triangle is shifted (egf_row_offset = r), row n
    corresponds to series index n - r; the prefactor x^r moves the mean up
    by r and leaves the variance alone, and the coefficient estimate is
    matched through log P_n(1) = log(n - r)! + log [z^{n-r}] e^{f(z,1)}.
    """
    from .distribution import pmf
    from .recurrence import generate

    offset = descriptor.egf_row_offset
    series_n = n - offset
    if series_n < 3:
        raise ParameterError(f"n must be >= {offset + 3}, got {n}")
    report = saddle_report(descriptor.saddle, series_n)
    poly = generate(descriptor.spec, n)[n - descriptor.spec.start_index]
    table = pmf(poly, n)
    exact_mean = float(table.mean)
    exact_variance = float(table.variance)
    exact_log_total = log_fraction(Fraction(poly(Fraction(1))))
    estimate_log_total = report.coeff_estimate_log + math.lgamma(series_n + 1)
    predicted_mean = report.predicted_mean + offset
    return ComparisonRecord(
        n=n,
        exact_mean=exact_mean,
        predicted_mean=predicted_mean,
        mean_rel_err=abs(exact_mean - predicted_mean) / abs(exact_mean),
        exact_variance=exact_variance,
        predicted_variance=report.predicted_variance,
        variance_rel_err=abs(exact_variance - report.predicted_variance)
        / abs(exact_variance),
        exact_log_total=exact_log_total,
        estimate_log_total=estimate_log_total,
        log_total_rel_err=abs(estimate_log_total - exact_log_total)
        / abs(exact_log_total),
        report=report,
    )
