"""Exact F_q point counts of graph hypersurfaces.

Thin wrapper around the C++ core: finite-field arithmetic, the XStrip
stratified counter, wheel-with-spokes Grothendieck-ring classes and the
reduced-form interpolation check.
"""

from hypercount._core import (
    BudgetExceeded,
    DivisibilityViolation,
    Field,
    NotAPrimePower,
    NotACone,
    TooFewPoints,
    brute_force_count,
    is_primitively_log_divergent,
    lagrange_fit,
    predicted_count,
    proj_space,
    projective_count,
    reduced_fit,
    spanning_tree_count,
    stratified_count_xstrip,
    ws_T,
    ws_class,
    ws_class_str,
    ws_y,
)

__all__ = [
    "BudgetExceeded",
    "DivisibilityViolation",
    "Field",
    "NotAPrimePower",
    "NotACone",
    "TooFewPoints",
    "brute_force_count",
    "is_primitively_log_divergent",
    "lagrange_fit",
    "predicted_count",
    "proj_space",
    "projective_count",
    "reduced_fit",
    "spanning_tree_count",
    "stratified_count_xstrip",
    "ws_T",
    "ws_class",
    "ws_class_str",
    "ws_y",
]
