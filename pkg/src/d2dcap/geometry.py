"""Exact circle-circle intersection primitives.

Scalar formulas for the chord abscissa, boundary arc length, circular
segment area, and the full piecewise lens area of two intersecting disks.
These are the building blocks for both the guard-distance solver (arc
counting) and the deployable-area function (overlap subtraction).
"""

from __future__ import annotations

import math

__all__ = [
    "chord_abscissa",
    "arc_length",
    "segment_area",
    "intersection_area",
]

# Arguments of arccos (and segment abscissas) are clamped when they exceed
# their domain by at most this relative amount; tangency configurations sit
# exactly on the domain boundary and float rounding may push them over.
_CLAMP_RTOL = 1e-12


def _clamp(value: float, lo: float, hi: float, scale: float, what: str) -> float:
    tol = _CLAMP_RTOL * max(scale, 1.0)
    if value < lo - tol or value > hi + tol:
        raise ValueError(f"{what} = {value!r} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


def chord_abscissa(R: float, r: float, d: float) -> float:
    """x-coordinate of the intersection points of two circles.

    The circles have radii R and r and centres (0, 0) and (d, 0); the
    common chord is vertical at x = (d^2 - r^2 + R^2) / (2 d).

    Requires d > 0 and |R - r| <= d <= R + r (tangency included); raises
    ValueError for concentric or non-intersecting circles.
    """
    if d <= 0.0:
        raise ValueError("chord abscissa undefined for concentric circles (d <= 0)")
    scale = R + r + d
    tol = _CLAMP_RTOL * max(scale, 1.0)
    if d > R + r + tol or d < abs(R - r) - tol:
        raise ValueError(
            f"circles with radii {R}, {r} at distance {d} do not intersect"
        )
    x = (d * d - r * r + R * R) / (2.0 * d)
    return min(max(x, -R), R)


def arc_length(R: float, r: float, d: float) -> float:
    """Length of the first circle's arc inside the second circle.

    Evaluates 2 R arccos((d^2 - r^2 + R^2) / (2 d R)) for circles of radii
    R and r with centre distance d.  The arccos argument must lie in
    [-1, 1] up to rounding; values further out raise ValueError.
    """
    if d <= 0.0 or R <= 0.0:
        raise ValueError("arc length requires positive R and d")
    arg = (d * d - r * r + R * R) / (2.0 * d * R)
    arg = _clamp(arg, -1.0, 1.0, 1.0, "arc-length arccos argument")
    return 2.0 * R * math.acos(arg)


def segment_area(R: float, x: float) -> float:
    """Area of the circular segment of radius R cut off at abscissa x.

    S(R, x) = R^2 arccos(x / R) - x sqrt(R^2 - x^2).  x = R gives an empty
    segment, x = 0 a half disk, x = -R the full disk.  Evaluated as
    R^2 (theta - sin(theta) cos(theta)) with theta = arccos(x / R), which
    is algebraically identical but does not cancel catastrophically when
    x approaches +/-R.
    """
    if R < 0.0:
        raise ValueError("segment radius must be non-negative")
    if R == 0.0:
        if abs(x) > 0.0:
            raise ValueError("segment abscissa outside degenerate circle")
        return 0.0
    x = _clamp(x, -R, R, R, "segment abscissa")
    theta = math.acos(x / R)
    return R * R * (theta - math.sin(theta) * math.cos(theta))


def intersection_area(R: float, r: float, d: float) -> float:
    """Area of the intersection of two disks (lens area).

    Total, symmetric function of radii R, r >= 0 and centre distance
    d >= 0: zero when the disks are separated (d >= R + r), the smaller
    disk's area when one contains the other (d <= |R - r|, including the
    concentric case), and the two-segment lens area in between.
    """
    if R < 0.0 or r < 0.0 or d < 0.0:
        raise ValueError("intersection area requires non-negative R, r, d")
    if R < r:
        R, r = r, R  # canonical order keeps the function exactly symmetric
    if d >= R + r:
        return 0.0
    if d <= R - r:
        return math.pi * r * r
    x = chord_abscissa(R, r, d)
    area = segment_area(R, x) + segment_area(r, d - x)
    # cancellation near tangency can push the sum past the exact bounds
    return min(max(area, 0.0), math.pi * r * r)
