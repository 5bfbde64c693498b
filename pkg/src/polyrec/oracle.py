"""Brute-force partition enumeration for validating triangles at small n.

The counting model: partitions of r + n elements where the first r
(distinguished) elements lie in pairwise different blocks, every block
containing no distinguished element has at least s elements, and each such
non-distinguished block B carries multiplicative weight m^(|B| - 1).
Counts are grouped by the number of non-distinguished blocks.

The walk is a restricted-growth enumeration over block choices; colors are
folded in as weights rather than materialized, so the structure space stays
desk-sized.  This module shares no code with the recurrence engine beyond
exact integers, which is the point: it is the independent witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError, SizeGuardError
from .families import FamilyDescriptor

MAX_ELEMENTS = 14


@dataclass(frozen=True)
class PartitionConstraint:
    """Enumeration parameters: n non-distinguished elements, r distinguished
    elements (pairwise separated), m colors, minimum non-distinguished block
    size s."""

    n: int
    r: int = 0
    m: int = 1
    s: int = 1

    def __post_init__(self):
        for name, minimum in (("n", 0), ("r", 0), ("m", 1), ("s", 1)):
            value = getattr(self, name)
            if not isinstance(value, int) or value < minimum:
                raise ParameterError(f"{name} must be an integer >= {minimum}")


def count_partitions(constraint: PartitionConstraint) -> dict[int, int]:
    """Exhaustively enumerate and weight the constrained partitions.

    Returns {number of non-distinguished blocks: total weight}, omitting
    zero entries.  Raises SizeGuardError beyond r + n = 14 elements.
    """
    n, r, m, s = constraint.n, constraint.r, constraint.m, constraint.s
    if r + n > MAX_ELEMENTS:
        raise SizeGuardError(
            f"r + n = {r + n} exceeds the enumeration guard ({MAX_ELEMENTS})"
        )
    counts: dict[int, int] = {}
    sizes: list[int] = []  # sizes of non-distinguished blocks, in creation order

    def walk(placed: int, deficit: int, weight: int) -> None:
        if placed == n:
            if deficit == 0:
                k = len(sizes)
                counts[k] = counts.get(k, 0) + weight
            return
        if deficit > n - placed:
            return  # too few elements left to fill all blocks to size s
        # join one of the r distinguished blocks
        for _ in range(r):
            walk(placed + 1, deficit, weight)
        # join an existing non-distinguished block (a non-smallest member,
        # hence one color factor m)
        for b in range(len(sizes)):
            gain = 1 if sizes[b] < s else 0
            sizes[b] += 1
            walk(placed + 1, deficit - gain, weight * m)
            sizes[b] -= 1
        # open a new non-distinguished block
        sizes.append(1)
        walk(placed + 1, deficit + s - 1, weight)
        sizes.pop()

    walk(0, 0, 1)
    return counts


@dataclass(frozen=True)
class OracleReport:
    """Outcome of checking one family's triangle against enumeration."""

    family: str
    n_max: int
    ok: bool
    skipped: bool = False
    notice: str = ""
    first_mismatch: Optional[tuple[int, int, int, int]] = None  # (n, k, triangle, oracle)

    def __str__(self) -> str:
        if self.skipped:
            return f"{self.family}: skipped ({self.notice})"
        if self.ok:
            return f"{self.family}: rows up to {self.n_max} match enumeration"
        n, k, got, want = self.first_mismatch
        return f"{self.family}: mismatch at (n={n}, k={k}): triangle {got}, oracle {want}"


def _model_for(descriptor: FamilyDescriptor) -> Optional[tuple[int, int, int, int, int]]:
    """Map a catalog family to (r, m, s, row_offset, col_offset), or None."""
    name = descriptor.name
    p = descriptor.parameters
    if name == "stirling2":
        return (0, 1, 1, 0, 0)
    if name == "whitney":
        if p["c"] < 0:
            return None
        return (p["c"], p["m"], 1, 0, 0)
    if name == "translated_whitney":
        return (0, p["m"], 1, 0, 0)
    if name == "dowling":
        return (1, p["m"], 1, 0, 0)
    if name == "type_b":
        return (p["c"], p["m"], 1, 0, 0)
    if name == "stirling_frobenius":
        return (p["m"] - 1, p["m"], 1, 0, 0)
    if name == "r_stirling":
        # row r + n counts partitions of n non-distinguished elements; the
        # x power includes the r forced blocks
        return (p["r"], 1, 1, p["r"], p["r"])
    if name == "assoc_stirling":
        return (0, 1, p["s"], 0, 0)
    if name == "r_whitney_assoc":
        return (p["r"], p["m"], p["s"], 0, 0)
    return None


def verify_family(descriptor: FamilyDescriptor, n_max: int) -> OracleReport:
    """Check the recurrence triangle against enumeration for rows <= n_max.

    Families without a registered combinatorial model (galton, sheffer,
    whitney with negative c) come back skipped-with-notice rather than
    failing.
    """
    from .recurrence import generate

    label = descriptor.spec.label or descriptor.name
    model = _model_for(descriptor)
    if model is None:
        return OracleReport(
            family=label,
            n_max=n_max,
            ok=True,
            skipped=True,
            notice="no combinatorial model registered",
        )
    r, m, s, row_offset, col_offset = model
    start = descriptor.spec.start_index
    polys = generate(descriptor.spec, n_max) if n_max >= start else []
    for row in range(start, n_max + 1):
        n_elements = row - row_offset
        counts = count_partitions(PartitionConstraint(n=n_elements, r=r, m=m, s=s))
        poly = polys[row - start]
        top = max([poly.degree] + [k + col_offset for k in counts])
        for k in range(top + 1):
            want = counts.get(k - col_offset, 0)
            got = poly.coefficient(k)
            if got != want:
                return OracleReport(
                    family=label,
                    n_max=n_max,
                    ok=False,
                    first_mismatch=(row, k, int(got), want),
                )
    return OracleReport(family=label, n_max=n_max, ok=True)
