#include "fuzzyplane/plane_fitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

namespace {

bool lexicographic_less(const Vec3& a, const Vec3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

std::vector<Vec3> sorted_copy(std::span<const Vec3> points) {
  std::vector<Vec3> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), lexicographic_less);
  return sorted;
}

Vec3 centroid(const std::vector<Vec3>& points) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : points) c += p;
  return c / static_cast<double>(points.size());
}

CrispPlane fit_total_least_squares(const std::vector<Vec3>& points) {
  const Vec3 c = centroid(points);
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - c;
    scatter += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
  if (solver.info() != Eigen::Success) fail(ErrorCode::kDegenerateGeometry, "scatter eigen-solve did not converge");
  const Vec3 values = solver.eigenvalues();  // ascending
  const double scale = std::max(values[2], 0.0);
  if (!(scale > 0.0) || values[1] <= 1e-12 * scale) {
    fail(ErrorCode::kDegenerateGeometry, "points are collinear or coincident; plane is not determined");
  }
  Vec3 normal = solver.eigenvectors().col(0);
  if (values[1] - values[0] <= 1e-12 * scale) {
    Vec3 a = solver.eigenvectors().col(0).cwiseAbs();
    Vec3 b = solver.eigenvectors().col(1).cwiseAbs();
    if (lexicographic_less(a, b)) normal = solver.eigenvectors().col(1);
  }
  return CrispPlane::through_point(normal, c);
}

CrispPlane fit_vertical(const std::vector<Vec3>& points) {
  const Vec3 c = centroid(points);
  double sxx = 0, sxy = 0, syy = 0, sxz = 0, syz = 0;
  for (const auto& p : points) {
    const Vec3 d = p - c;
    sxx += d.x() * d.x();
    sxy += d.x() * d.y();
    syy += d.y() * d.y();
    sxz += d.x() * d.z();
    syz += d.y() * d.z();
  }
  const double det = sxx * syy - sxy * sxy;
  if (!(det > 1e-12 * std::max(sxx * syy, 1e-300))) {
    fail(ErrorCode::kDegenerateGeometry, "x-y footprint of the points is collinear; vertical fit is not determined");
  }
  const double a = (sxz * syy - syz * sxy) / det;
  const double b = (syz * sxx - sxz * sxy) / det;
  return CrispPlane::from_height(a, b, c.z() - a * c.x() - b * c.y());
}

double sse(const std::vector<Vec3>& points, const CrispPlane& plane) {
  return sse_perpendicular(points, plane);
}

// sup{alpha : plane meets the alpha-box of the point}.
double highest_contact(const SpaceFuzzyPoint& point, const CrispPlane& plane) {
  auto meets = [&](double alpha) {
    return point.cut(alpha).linear_range(plane.normal(), plane.offset()).contains_zero();
  };
  if (!meets(0.0)) return 0.0;
  if (meets(1.0)) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (meets(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

CrispPlane fit_crisp_plane(std::span<const Vec3> points, FitMode mode) {
  if (points.size() < 3) {
    fail(ErrorCode::kDegenerateGeometry, "plane fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  for (const auto& p : points) {
    if (!p.allFinite()) fail(ErrorCode::kInvalidArgument, "plane fit points must be finite");
  }
  const std::vector<Vec3> sorted = sorted_copy(points);
  return mode == FitMode::kPerpendicular ? fit_total_least_squares(sorted) : fit_vertical(sorted);
}

double sse_perpendicular(std::span<const Vec3> points, const CrispPlane& plane) {
  double total = 0.0;
  for (const auto& p : points) {
    const double d = plane.signed_distance(p);
    total += d * d;
  }
  return total;
}

FittedFuzzyPlane fit_fuzzy_plane(std::span<const SpaceFuzzyPoint> points, const FitConfig& config) {
  if (points.size() < 3) {
    fail(ErrorCode::kDegenerateGeometry, "fuzzy plane fit needs at least 3 points, got " + std::to_string(points.size()));
  }
  const AlphaGrid grid(config.alpha_steps);

  std::vector<Vec3> cores;
  cores.reserve(points.size());
  for (const auto& p : points) cores.push_back(p.core());
  const CrispPlane core = fit_crisp_plane(cores, config.mode);
  const Vec3& normal = core.normal();

  FittedFuzzyPlane out{FuzzyPlane({{0.0, core, core}, {1.0, core, core}}), {}, config, {}, {}};
  std::vector<Vec3> anchors;
  bool all_left = true;
  bool all_right = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ShiftedPoint shifted = perpendicular_shift(points[i], core);
    const Vec3 anchor = shifted.point.core();
    FuzzyNumber n = fuzzy_number_along_line(shifted.point, Line3(anchor, normal), grid);
    const AlphaInterval support = n.support();
    const bool left = std::isinf(support.lo);
    const bool right = std::isinf(support.hi);
    if (left && right) {
      std::ostringstream os;
      os << "point " << i << " is unbounded on both sides of the core plane; its alpha-level clouds are undefined";
      fail(ErrorCode::kInvalidArgument, os.str());
    }
    all_left = all_left && left;
    all_right = all_right && right;
    anchors.push_back(anchor);
    out.shifted_points.push_back(std::move(shifted.point));
    out.normal_fuzzy_numbers.push_back(std::move(n));
  }

  std::vector<LevelPair> levels;
  levels.reserve(grid.size());
  for (double alpha : grid.levels()) {
    std::vector<Vec3> lower_cloud;
    std::vector<Vec3> upper_cloud;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      const AlphaInterval s = out.normal_fuzzy_numbers[i].same_points(alpha);
      // A plateaued same point contributes the core representative.
      const double u = std::isfinite(s.lo) ? s.lo : 0.0;
      const double v = std::isfinite(s.hi) ? s.hi : 0.0;
      lower_cloud.push_back(anchors[i] + u * normal);
      upper_cloud.push_back(anchors[i] + v * normal);
    }
    LevelPair level{alpha, core, core};
    if (alpha < 1.0) {
      level.lower = fit_crisp_plane(lower_cloud, config.mode);
      level.upper = fit_crisp_plane(upper_cloud, config.mode);
    }
    out.residuals.push_back({alpha, sse(lower_cloud, level.lower), sse(upper_cloud, level.upper)});
    levels.push_back(level);
  }
  out.plane = FuzzyPlane(std::move(levels), {all_left, all_right});
  return out;
}

double containment(const SpaceFuzzyPoint& point, const FuzzyPlane& plane) {
  const Vec3 core_point = point.core();
  if (plane.core().distance(core_point) > 1e-9) return 0.0;
  const LevelPair& support = plane.levels().front();
  const Vec3& n = plane.core().normal();
  const Box box = point.support();

  // Returns the contact level if the box crosses to the outer side of g, else 1.
  auto side = [&](const CrispPlane& g, double interior_sign) {
    PlaneCoefficients c = g.oriented_like(n);
    const double at_core = c.head<3>().dot(core_point) + c[3];
    const double tol = 1e-12 * (1.0 + core_point.cwiseAbs().maxCoeff());
    if (std::abs(at_core) > tol) interior_sign = at_core > 0.0 ? 1.0 : -1.0;
    c *= interior_sign;
    const Interval r = box.linear_range(c.head<3>(), c[3]);
    if (r.lo >= -tol) return 1.0;
    return highest_contact(point, g);
  };
  const double g1 = plane.unbounded().lower ? 1.0 : side(support.lower, 1.0);
  const double g2 = plane.unbounded().upper ? 1.0 : side(support.upper, -1.0);
  return std::min(g1, g2);
}

double containment(const SpaceFuzzyPoint& point, const FittedFuzzyPlane& fitted) {
  return containment(point, fitted.plane);
}

double degree_of_fit(std::span<const SpaceFuzzyPoint> points, const FuzzyPlane& plane) {
  double degree = 1.0;
  for (const auto& p : points) degree = std::min(degree, containment(p, plane));
  return degree;
}

double degree_of_fit(std::span<const SpaceFuzzyPoint> points, const FittedFuzzyPlane& fitted) {
  return degree_of_fit(points, fitted.plane);
}

}  // namespace fuzzyplane
