"""Saddle-point solver and prediction pipeline, floats checked hard."""

import math
import random
from fractions import Fraction

import pytest

from polyrec.algebra import ExactPolynomial, X
from polyrec.asymptotics import (
    compare_exact,
    f_partials,
    log_fraction,
    saddle_report,
    solve_saddle,
)
from polyrec.errors import ParameterError, SaddleFailureError, SaddleOverflowError
from polyrec.families import build_exponent, catalog
from polyrec.recurrence import RecurrenceSpec


STIRLING = catalog("stirling2").saddle


def test_partials_worked_values():
    # f = x(e^z - 1): at (z=0, x=1) the value is 0, all first and second
    # z-derivatives of e^z are 1, mixed xz likewise
    p = f_partials(STIRLING, 0.0, 1.0)
    assert (p.f, p.f_z, p.f_zz, p.f_x, p.f_zx, p.f_xx) == (0, 1, 1, 0, 1, 0)

    p = f_partials(STIRLING, 1.0, 1.0)
    e = math.e
    assert math.isclose(p.f, e - 1, rel_tol=1e-15)
    assert math.isclose(p.f_z, e, rel_tol=1e-15)
    assert math.isclose(p.f_x, e - 1, rel_tol=1e-15)

    # f = x(e^z - 1 - z): first z-derivative vanishes at 0, second does not
    assoc = catalog("assoc_stirling", s=2).saddle
    p = f_partials(assoc, 0.0, 1.0)
    assert (p.f, p.f_z, p.f_x, p.f_zx, p.f_xx) == (0, 0, 0, 0, 0)
    assert p.f_zz == 1


@pytest.mark.parametrize(
    "name,params",
    [
        ("stirling2", {}),
        ("dowling", dict(m=2)),
        ("whitney", dict(m=3, c=2)),
        ("assoc_stirling", dict(s=3)),
        ("r_whitney_assoc", dict(m=2, r=1, s=2)),
        ("galton", dict(m=2, c=-1)),
    ],
)
def test_partials_match_finite_differences(name, params):
    sf = catalog(name, **params).saddle
    rng = random.Random(20240517)
    h = 1e-5
    for _ in range(6):
        z = rng.uniform(0.1, 5.0)
        x = rng.uniform(0.5, 2.0)
        p = f_partials(sf, z, x)

        def check(got, numeric):
            scale = max(abs(numeric), 1.0)
            assert abs(got - numeric) <= 1e-6 * scale, (name, z, x)

        check(p.f_z, (f_partials(sf, z + h, x).f - f_partials(sf, z - h, x).f) / (2 * h))
        check(p.f_x, (f_partials(sf, z, x + h).f - f_partials(sf, z, x - h).f) / (2 * h))
        check(
            p.f_zz,
            (f_partials(sf, z + h, x).f_z - f_partials(sf, z - h, x).f_z) / (2 * h),
        )
        check(
            p.f_zx,
            (f_partials(sf, z, x + h).f_z - f_partials(sf, z, x - h).f_z) / (2 * h),
        )
        check(
            p.f_xx,
            (f_partials(sf, z, x + h).f_x - f_partials(sf, z, x - h).f_x) / (2 * h),
        )


def test_saddle_is_lambert_w_for_stirling():
    # rho e^rho = n, so rho(1) is the omega constant
    assert abs(solve_saddle(STIRLING, 1) - 0.5671432904097838) <= 1e-12


def test_saddle_against_independent_bisection():
    lo, hi = 0.0, 10.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid * math.exp(mid) < 100.0:
            lo = mid
        else:
            hi = mid
    assert abs(solve_saddle(STIRLING, 100) - (lo + hi) / 2) <= 1e-9


def test_saddle_residual_and_growth():
    for name, params in [
        ("stirling2", {}),
        ("dowling", dict(m=2)),
        ("assoc_stirling", dict(s=2)),
        ("type_b", dict(m=2, c=1)),
    ]:
        sf = catalog(name, **params).saddle
        for n in (10, 100, 1000, 10000):
            rho = solve_saddle(sf, n)
            p = f_partials(sf, rho, 1.0)
            assert abs(rho * p.f_z - n) <= max(1e-9 * n, 1e-12)
            assert rho * p.f_z + rho * rho * p.f_zz > 0


def test_saddle_tracks_log_n():
    # for the Stirling exponent rho = log n - log log n + o(1)
    for n in (100, 1000, 10000):
        rho = solve_saddle(STIRLING, n)
        assert abs(rho - math.log(n)) <= 2 * math.log(math.log(n)) + 3


def test_rho_prime_matches_numeric_derivative():
    h = 1e-4
    for descriptor in (catalog("stirling2"), catalog("dowling", m=2)):
        sf = descriptor.saddle
        for n in (50, 200):
            report = saddle_report(sf, n)
            numeric = (solve_saddle(sf, n, 1.0 + h) - solve_saddle(sf, n, 1.0 - h)) / (
                2 * h
            )
            assert abs(report.rho_prime - numeric) <= 1e-3 * max(abs(numeric), 1e-12)


def test_predictions_are_ordered():
    for n in (50, 100, 200, 500):
        report = saddle_report(STIRLING, n)
        assert 0 < report.predicted_variance < report.predicted_mean
        assert report.leading_mean == n / math.log(n)
        assert report.leading_variance == n / math.log(n) ** 2


def test_predictions_approach_leading_order():
    # the correction to dn/log n is O(log log n / log n), so convergence is
    # slow: check the ratio sits above 1, shrinks with n, and stays bounded
    small = saddle_report(STIRLING, 100)
    large = saddle_report(STIRLING, 10000)
    ratio_small = small.predicted_mean / small.leading_mean
    ratio_large = large.predicted_mean / large.leading_mean
    assert 1.0 < ratio_large < ratio_small < 1.6
    assert 1.0 < large.predicted_variance / large.leading_variance < 1.6


def test_saddle_rejects_flat_exponent():
    flat = build_exponent(RecurrenceSpec(gamma=ExactPolynomial([7]), m=1))
    with pytest.raises(SaddleFailureError):
        solve_saddle(flat, 10)
    with pytest.raises(ParameterError):
        saddle_report(STIRLING, 2)


def test_overflow_paths():
    with pytest.raises(SaddleOverflowError):
        f_partials(STIRLING, 800.0, 1.0)
    # log-scaled evaluation agrees with direct evaluation where both run
    direct = f_partials(STIRLING, 200.0, 1.0)
    assert math.isclose(direct.f, math.exp(200.0) - 1, rel_tol=1e-12)
    scaled = f_partials(STIRLING, 400.0, 1.0)
    assert math.isclose(scaled.f, math.exp(400.0) - 1, rel_tol=1e-9)
    assert math.isclose(scaled.f_zz, math.exp(400.0), rel_tol=1e-9)


def test_log_fraction_handles_huge_rationals():
    q = Fraction(10**500 + 3, 7)
    assert math.isclose(log_fraction(q), 500 * math.log(10) - math.log(7), rel_tol=1e-12)
    assert log_fraction(Fraction(1)) == 0.0


def test_compare_exact_improves_with_n():
    near = compare_exact(catalog("stirling2"), 20)
    far = compare_exact(catalog("stirling2"), 100)
    assert far.mean_rel_err < near.mean_rel_err
    assert far.variance_rel_err < near.variance_rel_err
    assert far.log_total_rel_err < near.log_total_rel_err
    assert far.log_total_rel_err < 1e-3


def test_compare_exact_r_stirling_offset():
    # shifted triangle: the x^r prefactor adds r to the mean and nothing to
    # the variance; predictions must line up against the exact row
    record = compare_exact(catalog("r_stirling", r=2), 60)
    assert record.mean_rel_err < 0.2
    assert record.variance_rel_err < 0.2
    assert record.log_total_rel_err < 0.01
