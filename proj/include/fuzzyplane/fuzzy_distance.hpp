#pragma once

#include <vector>

#include "fuzzyplane/fuzzy_plane.hpp"
#include "fuzzyplane/fuzzy_point.hpp"

namespace fuzzyplane {

/// Fuzzy distance as its alpha-cuts, one per level of the plane's grid.
/// Upper bounds are +inf where a plateau makes the distance unbounded.
struct FuzzyDistance {
  std::vector<AlphaInterval> levels;

  const AlphaInterval& at(double alpha) const;
};

/// |n . p + offset| for a normalized plane.
double point_plane_distance(const Vec3& p, const CrispPlane& plane);

/// Distances measured along the core normal of the plane (z when the core is
/// the xy-plane). Throws kNonGraph when a level plane is parallel to that normal.
FuzzyDistance vertical_distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane);

/// Perpendicular point-plane distances between the point's alpha-box and the
/// planes of level at least alpha.
FuzzyDistance perpendicular_distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane);

/// Nested, normal and nonnegative on its grid.
bool validate_fuzzy_number(const FuzzyDistance& distance);

}  // namespace fuzzyplane
