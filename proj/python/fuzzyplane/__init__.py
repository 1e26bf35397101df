"""Fuzzy planes over alpha-indexed families of crisp planes."""

from ._fuzzyplane import (
    CrispPlane,
    FittedFuzzyPlane,
    FuzzyNumber,
    FuzzyPlane,
    FuzzyPlaneError,
    SpaceFuzzyPoint,
    containment,
    degree_of_fit,
    fit_crisp_plane,
    fit_fuzzy_plane,
    from_coefficients,
    from_intercepts,
    load_dataset,
    perpendicular_distance,
    plane_from_json,
    plane_to_json,
    vertical_distance,
)

__all__ = [
    "CrispPlane",
    "FittedFuzzyPlane",
    "FuzzyNumber",
    "FuzzyPlane",
    "FuzzyPlaneError",
    "SpaceFuzzyPoint",
    "containment",
    "degree_of_fit",
    "fit_crisp_plane",
    "fit_fuzzy_plane",
    "from_coefficients",
    "from_intercepts",
    "load_dataset",
    "perpendicular_distance",
    "plane_from_json",
    "plane_to_json",
    "vertical_distance",
]
