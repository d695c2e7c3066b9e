"""Corner and square configurations in F_p^2 and [n]^2.

Thin Python layer over the C++ core. Point sets are lists of (x, y) tuples.
"""

from ._core import (
    CornerlabError,
    Domain,
    apex,
    bessel_j0,
    check_saturated,
    corner_sat_lower_bound,
    count_corners,
    count_squares,
    fourth_vertex,
    g_function,
    is_quadratic_residue,
    max_config_free,
    measure_lower_bound,
    min_saturated,
    minimize_g,
    mono_corner_counts,
    verify_claims,
    vertical_line_set,
)

__all__ = [
    "CornerlabError",
    "Domain",
    "apex",
    "bessel_j0",
    "check_saturated",
    "corner_sat_lower_bound",
    "count_corners",
    "count_squares",
    "fourth_vertex",
    "g_function",
    "is_quadratic_residue",
    "max_config_free",
    "measure_lower_bound",
    "min_saturated",
    "minimize_g",
    "mono_corner_counts",
    "verify_claims",
    "vertical_line_set",
]
