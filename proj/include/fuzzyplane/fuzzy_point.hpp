#pragma once

#include <array>

#include "fuzzyplane/fuzzy_number.hpp"
#include "fuzzyplane/geometry.hpp"

namespace fuzzyplane {

/// Space fuzzy point whose membership is the minimum of three component
/// memberships; its alpha-cuts are axis-aligned boxes.
class SpaceFuzzyPoint {
 public:
  SpaceFuzzyPoint() = default;
  SpaceFuzzyPoint(FuzzyNumber x, FuzzyNumber y, FuzzyNumber z);

  const FuzzyNumber& x() const { return components_[0]; }
  const FuzzyNumber& y() const { return components_[1]; }
  const FuzzyNumber& z() const { return components_[2]; }
  const FuzzyNumber& component(int axis) const { return components_.at(static_cast<std::size_t>(axis)); }

  Vec3 core() const { return {x().core(), y().core(), z().core()}; }
  double membership(const Vec3& p) const;
  /// Product of the component alpha-cuts.
  Box cut(double alpha) const;
  Box support() const { return cut(0.0); }
  bool has_compact_support() const { return support().is_finite(); }

  /// Copy moved by `lambda` along the unit `direction`; shape is unchanged.
  SpaceFuzzyPoint translated(const Vec3& direction, double lambda) const;

  friend bool operator==(const SpaceFuzzyPoint&, const SpaceFuzzyPoint&) = default;

 private:
  std::array<FuzzyNumber, 3> components_;
};

SpaceFuzzyPoint from_components(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& z);

/// Throws kInvalidArgument unless |direction| = 1 (to 1e-9).
SpaceFuzzyPoint translate(const SpaceFuzzyPoint& point, const Vec3& direction, double lambda);

struct ShiftedPoint {
  SpaceFuzzyPoint point;
  /// Signed step along the plane normal; the core moved by lambda * normal.
  double lambda = 0.0;
};

/// Translates the point along the plane normal until its core lies on the plane.
ShiftedPoint perpendicular_shift(const SpaceFuzzyPoint& point, const CrispPlane& plane);

struct Segment {
  Vec3 entry;
  Vec3 exit;

  double length() const { return (exit - entry).norm(); }
};

/// Where the line enters and leaves the support box. Throws
/// kEmptyIntersection on a miss or a grazing contact shorter than 1e-12.
Segment support_line_segment(const SpaceFuzzyPoint& point, const Line3& line);

/// Alpha-cut of the point restricted to the line, in arc length from
/// line.point(); nullopt where the line misses the cut.
std::optional<Interval> line_cut(const SpaceFuzzyPoint& point, const Line3& line, double alpha);

/// Restriction of the point's membership to a line through its core, as a
/// fuzzy number in signed arc length from line.point(). Exact LR shapes are
/// recovered; otherwise the result is tabulated on `grid`.
FuzzyNumber fuzzy_number_along_line(const SpaceFuzzyPoint& point, const Line3& line,
                                    const AlphaGrid& grid = AlphaGrid());

}  // namespace fuzzyplane
