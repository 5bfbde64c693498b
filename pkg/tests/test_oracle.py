"""Brute-force partition enumeration against the recurrence engine."""

import dataclasses
from fractions import Fraction

import pytest

from polyrec.errors import ParameterError, SizeGuardError
from polyrec.families import catalog
from polyrec.oracle import PartitionConstraint, count_partitions, verify_family
from polyrec.recurrence import generate

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_counts_match_worked_examples():
    # unrestricted 4-set: Stirling row 4
    assert count_partitions(PartitionConstraint(n=4)) == {1: 1, 2: 7, 3: 6, 4: 1}
    # 4 plain elements, blocks of size >= 2
    assert count_partitions(PartitionConstraint(n=4, s=2)) == {1: 1, 2: 3}
    # 2 elements, 2 colors: one 2-block with weight 2, one 1+1 with weight 1
    assert count_partitions(PartitionConstraint(n=2, m=2)) == {1: 2, 2: 1}
    # weighted: 4 elements, weight 2 per extra element in a plain block
    assert count_partitions(PartitionConstraint(n=4, m=2)) == {
        1: 8,
        2: 28,
        3: 12,
        4: 1,
    }


def test_unweighted_totals_are_bell_numbers():
    for n in range(11):
        counts = count_partitions(PartitionConstraint(n=n))
        assert sum(counts.values()) == BELL[n]


def test_dowling_totals():
    # m=2, one distinguished element: 1, 2, 6, 24, 116, 648, 4088
    expected = [1, 2, 6, 24, 116, 648, 4088]
    polys = generate(catalog("dowling", m=2).spec, len(expected) - 1)
    for n, value in enumerate(expected):
        counts = count_partitions(PartitionConstraint(n=n, r=1, m=2))
        assert sum(counts.values()) == value
        assert polys[n](Fraction(1)) == value


def test_counts_match_independent_rgs_enumeration():
    # cross-check the weighted walk against a restricted-growth-string
    # enumeration written from scratch
    def rgs_counts(n, m, s):
        out = {}

        def rec(prefix):
            if len(prefix) == n:
                blocks = max(prefix) + 1 if prefix else 0
                sizes = [prefix.count(b) for b in range(blocks)]
                if any(size < s for size in sizes):
                    return
                weight = 1
                for size in sizes:
                    weight *= m ** (size - 1)
                out[blocks] = out.get(blocks, 0) + weight
                return
            top = max(prefix) + 1 if prefix else 0
            for b in range(top + 1):
                rec(prefix + [b])

        rec([])
        return out

    for n in range(7):
        for m in (1, 2, 3):
            for s in (1, 2):
                expected = rgs_counts(n, m, s)
                got = count_partitions(PartitionConstraint(n=n, m=m, s=s))
                assert got == expected, (n, m, s)


def test_constraint_validation():
    with pytest.raises(ParameterError):
        PartitionConstraint(n=-1)
    with pytest.raises(ParameterError):
        PartitionConstraint(n=2, m=0)
    with pytest.raises(ParameterError):
        PartitionConstraint(n=2, s=0)
    with pytest.raises(ParameterError):
        PartitionConstraint(n=2, r=-1)
    with pytest.raises(SizeGuardError):
        count_partitions(PartitionConstraint(n=13, r=2))


def test_verify_family_ok():
    for name, params, n_max in [
        ("stirling2", {}, 9),
        ("dowling", dict(m=2), 8),
        ("whitney", dict(m=3, c=1), 8),
        ("r_stirling", dict(r=2), 8),
        ("assoc_stirling", dict(s=2), 9),
        ("assoc_stirling", dict(s=3), 9),
        ("r_whitney_assoc", dict(m=2, r=1, s=2), 8),
        ("translated_whitney", dict(m=2), 8),
        ("type_b", dict(m=2, c=1), 8),
    ]:
        report = verify_family(catalog(name, **params), n_max)
        assert report.ok and not report.skipped, report


def test_verify_family_skips_unmodelled_shapes():
    for name, params in [
        ("galton", dict(m=2, c=-1)),
        ("sheffer", dict(d=3, a=1)),
        ("whitney", dict(m=2, c=-1)),
    ]:
        report = verify_family(catalog(name, **params), 6)
        assert report.skipped and report.ok
        assert report.notice


def test_verify_family_reports_mismatch():
    # sabotage the spec so row 1 disagrees with the partition model
    descriptor = catalog("stirling2")
    broken = dataclasses.replace(
        descriptor, spec=dataclasses.replace(descriptor.spec, m=Fraction(2))
    )
    report = verify_family(broken, 5)
    assert not report.ok and not report.skipped
    assert report.first_mismatch is not None
    n, k, got, want = report.first_mismatch
    assert got != want
