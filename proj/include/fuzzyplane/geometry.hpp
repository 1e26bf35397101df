#pragma once

#include <optional>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "fuzzyplane/fuzzy_number.hpp"

namespace fuzzyplane {

using Vec3 = Eigen::Vector3d;
/// Raw plane coefficients (a, b, c, d) of a x + b y + c z + d = 0.
using PlaneCoefficients = Eigen::Vector4d;

/// Axis-aligned box; bounds may be infinite.
struct Box {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool is_finite() const { return lo.allFinite() && hi.allFinite(); }
  bool contains(const Vec3& p, double tol = 0.0) const;
  /// Range of n . p + offset over the box (infinite bounds handled with 0 * inf = 0).
  Interval linear_range(const Vec3& normal, double offset) const;
};

class Line3 {
 public:
  /// Normalizes `direction`; throws on a zero direction.
  Line3(const Vec3& point, const Vec3& direction);

  const Vec3& point() const { return point_; }
  const Vec3& direction() const { return direction_; }
  Vec3 at(double t) const { return point_ + t * direction_; }
  /// Signed arc length of the foot of `p` on the line.
  double parameter_of(const Vec3& p) const { return (p - point_).dot(direction_); }
  double distance_to(const Vec3& p) const;

 private:
  Vec3 point_;
  Vec3 direction_;
};

/// Parameter range where the line crosses the box. Axes along which the line
/// direction is below 1e-12 are treated as parallel and tested with `tol`.
std::optional<Interval> clip_line(const Box& box, const Line3& line, double tol = 1e-9);

/// Normalized plane n . x + offset = 0 with |n| = 1 (to 1e-11) and the first
/// component of n that exceeds 1e-12 in magnitude positive.
class CrispPlane {
 public:
  /// The plane z = 0.
  CrispPlane() = default;

  static CrispPlane from_coefficients(double a, double b, double c, double d);
  static CrispPlane from_coefficients(const PlaneCoefficients& coefficients);
  static CrispPlane through_point(const Vec3& normal, const Vec3& point);
  /// z = slope_x * x + slope_y * y + intercept.
  static CrispPlane from_height(double slope_x, double slope_y, double intercept);

  const Vec3& normal() const { return normal_; }
  double offset() const { return offset_; }
  PlaneCoefficients coefficients() const { return {normal_.x(), normal_.y(), normal_.z(), offset_}; }
  /// Coefficients with the normal flipped if needed so that normal . reference >= 0.
  PlaneCoefficients oriented_like(const Vec3& reference) const;

  double signed_distance(const Vec3& p) const { return normal_.dot(p) + offset_; }
  double distance(const Vec3& p) const;
  Vec3 project(const Vec3& p) const { return p - signed_distance(p) * normal_; }
  /// z on the plane over (x, y); throws kNonGraph for vertical planes.
  double height_at(double x, double y) const;
  /// (slope_x, slope_y, intercept) of the height form.
  Vec3 height_coefficients() const;

  friend bool operator==(const CrispPlane&, const CrispPlane&) = default;

 private:
  CrispPlane(const Vec3& normal, double offset) : normal_(normal), offset_(offset) {}

  Vec3 normal_ = Vec3::UnitZ();
  double offset_ = 0.0;
};

bool approx_equal(const CrispPlane& a, const CrispPlane& b, double tol);

}  // namespace fuzzyplane
