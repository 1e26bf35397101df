#include "fuzzyplane/fuzzy_point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

SpaceFuzzyPoint::SpaceFuzzyPoint(FuzzyNumber x, FuzzyNumber y, FuzzyNumber z)
    : components_{std::move(x), std::move(y), std::move(z)} {}

double SpaceFuzzyPoint::membership(const Vec3& p) const {
  return std::min({x().membership(p.x()), y().membership(p.y()), z().membership(p.z())});
}

Box SpaceFuzzyPoint::cut(double alpha) const {
  Box box;
  for (int i = 0; i < 3; ++i) {
    const AlphaInterval c = components_[static_cast<std::size_t>(i)].same_points(alpha);
    box.lo[i] = c.lo;
    box.hi[i] = c.hi;
  }
  return box;
}

SpaceFuzzyPoint SpaceFuzzyPoint::translated(const Vec3& direction, double lambda) const {
  return {x().shifted(lambda * direction.x()), y().shifted(lambda * direction.y()),
          z().shifted(lambda * direction.z())};
}

SpaceFuzzyPoint from_components(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& z) {
  return {x, y, z};
}

SpaceFuzzyPoint translate(const SpaceFuzzyPoint& point, const Vec3& direction, double lambda) {
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "translation direction must be a unit vector");
  }
  return point.translated(direction, lambda);
}

ShiftedPoint perpendicular_shift(const SpaceFuzzyPoint& point, const CrispPlane& plane) {
  const Vec3 core = point.core();
  const double lambda = -plane.signed_distance(core);
  // Already on the plane up to rounding.
  if (std::abs(lambda) <= 1e-12 * (1.0 + core.cwiseAbs().maxCoeff())) return {point, 0.0};
  return {point.translated(plane.normal(), lambda), lambda};
}

Segment support_line_segment(const SpaceFuzzyPoint& point, const Line3& line) {
  const Box support = point.support();
  if (!support.is_finite()) fail(ErrorCode::kInvalidArgument, "support line segment needs a compact support");
  const auto t = clip_line(support, line, 0.0);
  if (!t || t->width() < 1e-12) fail(ErrorCode::kEmptyIntersection, "line misses the support of the fuzzy point");
  return {line.at(t->lo), line.at(t->hi)};
}

std::optional<Interval> line_cut(const SpaceFuzzyPoint& point, const Line3& line, double alpha) {
  return clip_line(point.cut(alpha), line);
}

FuzzyNumber fuzzy_number_along_line(const SpaceFuzzyPoint& point, const Line3& line, const AlphaGrid& grid) {
  const Vec3 core = point.core();
  if (line.distance_to(core) > 1e-9) {
    std::ostringstream os;
    os << "line does not pass through the core of the fuzzy point (distance " << line.distance_to(core) << ")";
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  const double t_core = line.parameter_of(core);
  return tabulate_cuts(grid, [&](double alpha) {
    auto t = line_cut(point, line, alpha);
    if (!t) fail(ErrorCode::kEmptyIntersection, "line misses an alpha-cut of the fuzzy point");
    // The line passes through the core, so every cut contains it.
    return Interval{std::min(t->lo, t_core), std::max(t->hi, t_core)};
  });
}

}  // namespace fuzzyplane
