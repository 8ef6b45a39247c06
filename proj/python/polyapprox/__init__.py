"""Approximate width, intersection and Minkowski sums of convex polytopes.

Point sets are (n, d) float arrays, one point per row. Halfspace polytopes are
(normals, offsets) pairs describing {x : normals @ x <= offsets}.
"""

from ._polyapprox import (
    Error,
    WidthIndex,
    intersect,
    intersect_exact,
    minkowski_sum,
    random_hull,
    regular_simplex,
    rotated_box,
    sphere_shell,
    to_halfspaces,
    to_points,
    width,
    width_exact,
)

__all__ = [
    "Error",
    "WidthIndex",
    "intersect",
    "intersect_exact",
    "minkowski_sum",
    "random_hull",
    "regular_simplex",
    "rotated_box",
    "sphere_shell",
    "to_halfspaces",
    "to_points",
    "width",
    "width_exact",
]
