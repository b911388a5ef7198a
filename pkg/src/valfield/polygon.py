"""Newton polygons from coefficient valuations.

The polygon of f = sum a_i X^i is the lower convex hull of the points
(i, v(a_i)); segment slopes increase from left to right and the valuations
of the roots are the negatives of the slopes.  Slope denominators bound
ramification: a single segment whose slope denominator equals the degree
certifies irreducibility over a henselian base.

This module is generic over the coefficient ring: it consumes a list of
valuation results (or None for an exactly-zero coefficient), so both the
p-adic and the Laurent-series front ends share it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import IndeterminateValuationError, ValfieldError
from .laurent import ValuationResult


@dataclass(frozen=True)
class NewtonPolygon:
    """Hull segments as (slope, horizontal length), slopes strictly increasing."""

    segments: Tuple[Tuple[Fraction, int], ...]
    start: int  # order of vanishing at 0

    @property
    def degree_span(self) -> int:
        return sum(length for _, length in self.segments)

    def root_valuations(self) -> List[Tuple[Fraction, int]]:
        """(valuation, multiplicity-as-length) for the nonzero roots."""
        return [(-slope, length) for slope, length in self.segments]

    def single_slope(self) -> Optional[Fraction]:
        if len(self.segments) == 1:
            return self.segments[0][0]
        return None

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "segments": [
                {"slope": str(s), "length": n} for s, n in self.segments
            ],
        }


def newton_polygon_from_valuations(
    vals: Sequence[Optional[ValuationResult]],
) -> NewtonPolygon:
    """Build the polygon; vals[i] is the valuation of coefficient i.

    None marks an exactly-zero coefficient.  Indeterminate valuations are
    tolerated only where the known lower bound already lies on or above the
    hull through the exact points; otherwise the polygon is not determined
    at the available precision and an error is raised.
    """
    n = len(vals) - 1
    if n < 1:
        raise ValfieldError("polygon needs degree >= 1")
    exact: List[Tuple[int, Fraction]] = []
    bounded: List[Tuple[int, Fraction]] = []
    for i, vr in enumerate(vals):
        if vr is None:
            continue
        q = vr.value.first
        if vr.value.is_infinity:
            continue
        if vr.exact:
            exact.append((i, Fraction(q)))
        else:
            bounded.append((i, Fraction(q)))
    if not exact:
        raise IndeterminateValuationError("no coefficient with exact valuation")
    lead = max(i for i, _ in exact)
    if lead != n:
        # the leading coefficient must pin the right end of the hull
        if any(i > lead for i, _ in bounded):
            raise IndeterminateValuationError(
                "leading coefficient valuation is indeterminate"
            )
        n = lead
    start = min(i for i, _ in exact)
    if any(i < start for i, _ in bounded):
        raise IndeterminateValuationError(
            "low-order coefficient valuation is indeterminate"
        )
    hull = _lower_hull(sorted(exact))
    # bounds must not be able to dig below the hull
    for i, b in bounded:
        if b < _hull_height(hull, i):
            raise IndeterminateValuationError(
                f"indeterminate coefficient at index {i} is at a needed vertex"
            )
    segments = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        slope = Fraction(v1 - v0, i1 - i0)
        segments.append((slope, i1 - i0))
    return NewtonPolygon(tuple(segments), start)


def _lower_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    hull: List[Tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2 and _turns_up(hull[-2], hull[-1], pt):
            hull.pop()
        hull.append(pt)
    return hull


def _turns_up(a, b, c) -> bool:
    # drop b when it is on or above segment a-c
    return (b[1] - a[1]) * (c[0] - a[0]) >= (c[1] - a[1]) * (b[0] - a[0])


def _hull_height(hull: List[Tuple[int, Fraction]], i: int) -> Fraction:
    if i <= hull[0][0]:
        return hull[0][1]
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        if i0 <= i <= i1:
            return v0 + Fraction(v1 - v0, i1 - i0) * (i - i0)
    return hull[-1][1]
