#include "fuzzyplane/fuzzy_distance.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

namespace {

using Vec4 = PlaneCoefficients;

enum class Measure { kPerpendicular, kVertical };

constexpr double kAxisEps = 1e-12;

constexpr int kGeneratorRefinement = 4;
// Same points move like (1 - alpha)^(1/p) near the core, so the top interval
// gets extra vertices spaced geometrically toward alpha = 1.
constexpr int kTopVertices = 48;
constexpr double kTopRatio = 0.75;

// Planes of level >= levels[i].alpha as a polyline of oriented coefficient
// vectors running lower(alpha_i) -> ... -> core -> ... -> upper(alpha_i).
// Consecutive vertices are joined by coefficient-wise interpolation. Planes
// with an analytic generator get extra vertices between grid levels.
std::vector<LevelPair> level_path(const FuzzyPlane& plane) {
  const auto& levels = plane.levels();
  const int refine = plane.generator() ? kGeneratorRefinement : 1;
  std::vector<LevelPair> path;
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    path.push_back(levels[j]);
    for (int r = 1; r < refine; ++r) {
      const double w = static_cast<double>(r) / refine;
      path.push_back(plane.level((1.0 - w) * levels[j].alpha + w * levels[j + 1].alpha));
    }
  }
  if (plane.generator()) {
    double gap = (1.0 - path.back().alpha) * kTopRatio;
    for (int k = 0; k < kTopVertices; ++k, gap *= kTopRatio) path.push_back(plane.level(1.0 - gap));
  }
  return path;
}

// `path` from level_path(); the family uses its entries from `start` on.
std::vector<Vec4> level_family(const FuzzyPlane& plane, const std::vector<LevelPair>& path, std::size_t start) {
  const Vec3& n = plane.core().normal();
  std::vector<Vec4> family;
  if (!plane.unbounded().lower) {
    for (std::size_t j = start; j < path.size(); ++j) family.push_back(path[j].lower.oriented_like(n));
  }
  family.push_back(plane.core().oriented_like(n));
  if (!plane.unbounded().upper) {
    for (std::size_t j = path.size(); j-- > start;) family.push_back(path[j].upper.oriented_like(n));
  }
  return family;
}

double homogeneous_dot(const Vec4& plane, const Vec3& p) { return plane.head<3>().dot(p) + plane[3]; }

struct Extremes {
  double inf = kInf;
  double sup = 0.0;
};

// Distance extremes from the box to the planes on the segment P0 -> P1.
// `vertices` hold the box corners with infinite bounds pulled in to the
// finite end; `bounded` says whether the box itself was finite.
void segment_extremes(const Vec4& p0, const Vec4& p1, const Box& box, const std::vector<Vec3>& vertices,
                      bool bounded, const Vec3& axis, Measure measure, Extremes& out) {
  const Interval r0 = box.linear_range(p0.head<3>(), p0[3]);
  const Interval r1 = box.linear_range(p1.head<3>(), p1[3]);
  const bool meets = r0.contains_zero() || r1.contains_zero() || (r0.lo > 0.0 && r1.hi < 0.0) ||
                     (r0.hi < 0.0 && r1.lo > 0.0);
  if (meets) out.inf = 0.0;
  if (!bounded) out.sup = kInf;

  const Vec4 dp = p1 - p0;
  double den0 = 1.0;
  double den1 = 1.0;
  if (measure == Measure::kVertical) {
    den0 = p0.head<3>().dot(axis);
    den1 = p1.head<3>().dot(axis);
    if (!(den0 > kAxisEps) || !(den1 > kAxisEps)) {
      fail(ErrorCode::kNonGraph, "a level plane is parallel to the core normal; vertical distance undefined");
    }
  }
  // |n(t)|^2 = q0 + q1 t + q2 t^2
  const double q0 = p0.head<3>().squaredNorm();
  const double q1 = 2.0 * p0.head<3>().dot(dp.head<3>());
  const double q2 = dp.head<3>().squaredNorm();
  auto height = [&](double a, double t) {
    if (measure == Measure::kVertical) return std::abs(a) / ((1.0 - t) * den0 + t * den1);
    return std::abs(a) / std::sqrt(q0 + t * (q1 + t * q2));
  };

  for (const Vec3& v : vertices) {
    const double a0 = homogeneous_dot(p0, v);
    const double a1 = homogeneous_dot(dp, v);
    double best_lo = std::min(height(a0, 0.0), height(a0 + a1, 1.0));
    double best_hi = std::max(height(a0, 0.0), height(a0 + a1, 1.0));
    if (measure == Measure::kPerpendicular) {
      // d/dt [A / sqrt(Q)] vanishes where (a1 q0 - a0 q1 / 2) + (a1 q1 / 2 - a0 q2) t = 0.
      const double c0 = a1 * q0 - 0.5 * a0 * q1;
      const double c1 = 0.5 * a1 * q1 - a0 * q2;
      if (c1 != 0.0) {
        const double t = -c0 / c1;
        if (t > 0.0 && t < 1.0) {
          const double h = height(a0 + a1 * t, t);
          best_lo = std::min(best_lo, h);
          best_hi = std::max(best_hi, h);
        }
      }
    }
    if (!meets) out.inf = std::min(out.inf, best_lo);
    if (bounded) out.sup = std::max(out.sup, best_hi);
  }
}

FuzzyDistance distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane, Measure measure) {
  const auto& levels = plane.levels();
  const Vec3& axis = plane.core().normal();
  const Vec4 core = plane.core().oriented_like(axis);
  const Vec3 point_core = point.core();
  const std::vector<LevelPair> path = level_path(plane);
  const std::size_t refine = plane.generator() ? kGeneratorRefinement : 1;
  FuzzyDistance result;
  result.levels.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double alpha = levels[i].alpha;
    const std::size_t start = i + 1 == levels.size() ? path.size() : i * refine;
    const std::vector<Vec4> family = level_family(plane, path, start);
    Box box = point.cut(alpha);
    Box pulled = box;
    bool bounded = true;
    for (int k = 0; k < 3; ++k) {
      if (std::isfinite(box.lo[k]) && std::isfinite(box.hi[k])) continue;
      const bool irrelevant =
          std::all_of(family.begin(), family.end(), [&](const Vec4& f) { return std::abs(f[k]) < kAxisEps; });
      if (irrelevant) {
        box.lo[k] = box.hi[k] = pulled.lo[k] = pulled.hi[k] = point_core[k];
        continue;
      }
      bounded = false;
      if (!std::isfinite(pulled.lo[k])) pulled.lo[k] = std::isfinite(pulled.hi[k]) ? pulled.hi[k] : point_core[k];
      if (!std::isfinite(pulled.hi[k])) pulled.hi[k] = pulled.lo[k];
    }
    std::vector<Vec3> vertices;
    vertices.reserve(8);
    for (int mask = 0; mask < 8; ++mask) {
      vertices.emplace_back((mask & 1) ? pulled.hi.x() : pulled.lo.x(), (mask & 2) ? pulled.hi.y() : pulled.lo.y(),
                            (mask & 4) ? pulled.hi.z() : pulled.lo.z());
    }

    Extremes e;
    if (family.size() == 1) {
      segment_extremes(family[0], family[0], box, vertices, bounded, axis, measure, e);
    }
    for (std::size_t s = 0; s + 1 < family.size(); ++s) {
      segment_extremes(family[s], family[s + 1], box, vertices, bounded, axis, measure, e);
    }
    // A plateau side adds every translate of the core beyond it.
    const Interval core_range = box.linear_range(core.head<3>(), core[3]);
    if (plane.unbounded().upper) {
      e.sup = kInf;
      if (core_range.hi >= 0.0) e.inf = 0.0;
    }
    if (plane.unbounded().lower) {
      e.sup = kInf;
      if (core_range.lo <= 0.0) e.inf = 0.0;
    }
    result.levels.push_back({alpha, e.inf, e.sup});
  }
  return result;
}

}  // namespace

const AlphaInterval& FuzzyDistance::at(double alpha) const {
  for (const auto& level : levels) {
    if (level.alpha == alpha) return level;
  }
  fail(ErrorCode::kInvalidArgument, "alpha " + std::to_string(alpha) + " is not on the distance grid");
}

double point_plane_distance(const Vec3& p, const CrispPlane& plane) { return plane.distance(p); }

FuzzyDistance vertical_distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane) {
  return distance(point, plane, Measure::kVertical);
}

FuzzyDistance perpendicular_distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane) {
  return distance(point, plane, Measure::kPerpendicular);
}

bool validate_fuzzy_number(const FuzzyDistance& distance) {
  const auto& levels = distance.levels;
  if (levels.empty() || levels.front().alpha != 0.0 || levels.back().alpha != 1.0) return false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    if (std::isnan(l.lo) || std::isnan(l.hi) || l.lo < 0.0 || l.lo > l.hi) return false;
    if (i == 0) continue;
    const auto& prev = levels[i - 1];
    if (!(l.alpha > prev.alpha)) return false;
    const double tol = 1e-9 * (1.0 + std::abs(l.lo) + (std::isfinite(l.hi) ? std::abs(l.hi) : 0.0));
    if (l.lo < prev.lo - tol || l.hi > prev.hi + tol) return false;
  }
  return true;
}

}  // namespace fuzzyplane
