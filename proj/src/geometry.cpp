#include "fuzzyplane/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

namespace {

constexpr double kParallelEps = 1e-12;

// n * x with the convention 0 * inf = 0.
double scaled(double n, double x) { return n == 0.0 ? 0.0 : n * x; }

}  // namespace

bool Box::contains(const Vec3& p, double tol) const {
  for (int i = 0; i < 3; ++i) {
    if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
  }
  return true;
}

Interval Box::linear_range(const Vec3& normal, double offset) const {
  Interval r{offset, offset};
  for (int i = 0; i < 3; ++i) {
    const double a = scaled(normal[i], lo[i]);
    const double b = scaled(normal[i], hi[i]);
    r.lo += std::min(a, b);
    r.hi += std::max(a, b);
  }
  return r;
}

Line3::Line3(const Vec3& point, const Vec3& direction) : point_(point) {
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::kInvalidArgument, "line direction must be nonzero");
  direction_ = direction / n;
}

double Line3::distance_to(const Vec3& p) const { return (p - point_).cross(direction_).norm(); }

std::optional<Interval> clip_line(const Box& box, const Line3& line, double tol) {
  Interval t{-kInf, kInf};
  const Vec3& p = line.point();
  const Vec3& d = line.direction();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < kParallelEps) {
      if (p[i] < box.lo[i] - tol || p[i] > box.hi[i] + tol) return std::nullopt;
      continue;
    }
    double a = (box.lo[i] - p[i]) / d[i];
    double b = (box.hi[i] - p[i]) / d[i];
    if (a > b) std::swap(a, b);
    t.lo = std::max(t.lo, a);
    t.hi = std::min(t.hi, b);
  }
  if (t.lo > t.hi + tol) return std::nullopt;
  if (t.lo > t.hi) t.lo = t.hi = 0.5 * (t.lo + t.hi);
  return t;
}

CrispPlane CrispPlane::from_coefficients(double a, double b, double c, double d) {
  return from_coefficients(PlaneCoefficients(a, b, c, d));
}

CrispPlane CrispPlane::from_coefficients(const PlaneCoefficients& coefficients) {
  if (!coefficients.allFinite()) fail(ErrorCode::kDegenerateGeometry, "plane coefficients must be finite");
  Vec3 n = coefficients.head<3>();
  double d = coefficients[3];
  const double norm = n.norm();
  if (!(norm > 0.0)) fail(ErrorCode::kDegenerateGeometry, "plane normal vanishes");
  // Leave stored (rounded) unit normals alone so reading a plane back is stable.
  if (std::abs(norm - 1.0) > 1e-11) {
    n /= norm;
    d /= norm;
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(n[i]) > kParallelEps) {
      if (n[i] < 0.0) {
        n = -n;
        d = -d;
      }
      break;
    }
  }
  return CrispPlane(n, d);
}

CrispPlane CrispPlane::through_point(const Vec3& normal, const Vec3& point) {
  return from_coefficients(PlaneCoefficients(normal.x(), normal.y(), normal.z(), -normal.dot(point)));
}

CrispPlane CrispPlane::from_height(double slope_x, double slope_y, double intercept) {
  return from_coefficients(slope_x, slope_y, -1.0, intercept);
}

PlaneCoefficients CrispPlane::oriented_like(const Vec3& reference) const {
  const PlaneCoefficients c = coefficients();
  return normal_.dot(reference) < 0.0 ? PlaneCoefficients(-c) : c;
}

double CrispPlane::distance(const Vec3& p) const { return std::abs(signed_distance(p)); }

double CrispPlane::height_at(double x, double y) const {
  if (std::abs(normal_.z()) < kParallelEps) fail(ErrorCode::kNonGraph, "plane is vertical; no height form");
  return -(normal_.x() * x + normal_.y() * y + offset_) / normal_.z();
}

Vec3 CrispPlane::height_coefficients() const {
  if (std::abs(normal_.z()) < kParallelEps) fail(ErrorCode::kNonGraph, "plane is vertical; no height form");
  const double nz = normal_.z();
  return {-normal_.x() / nz, -normal_.y() / nz, -offset_ / nz};
}

bool approx_equal(const CrispPlane& a, const CrispPlane& b, double tol) {
  return (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace fuzzyplane
