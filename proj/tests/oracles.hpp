#pragma once

// Test-only reference computations. Each one reaches its answer by a route
// that does not share code with the library function it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fuzzyplane/fuzzy_distance.hpp"
#include "fuzzyplane/fuzzy_plane.hpp"
#include "fuzzyplane/fuzzy_point.hpp"
#include "fuzzyplane/plane_fitting.hpp"

namespace oracle {

using fuzzyplane::AlphaGrid;
using fuzzyplane::CrispPlane;
using fuzzyplane::FuzzyNumber;
using fuzzyplane::FuzzyPlane;
using fuzzyplane::Interval;
using fuzzyplane::SpaceFuzzyPoint;
using fuzzyplane::Vec3;

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

// z = a x + b y + c by the raw (uncentered) normal equations and Cramer's rule.
inline std::array<double, 3> cramer_vertical_fit(const std::vector<Vec3>& pts) {
  double sxx = 0, sxy = 0, sx = 0, syy = 0, sy = 0, n = 0, sxz = 0, syz = 0, sz = 0;
  for (const auto& p : pts) {
    sxx += p.x() * p.x();
    sxy += p.x() * p.y();
    sx += p.x();
    syy += p.y() * p.y();
    sy += p.y();
    n += 1;
    sxz += p.x() * p.z();
    syz += p.y() * p.z();
    sz += p.z();
  }
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  const double d = det3(sxx, sxy, sx, sxy, syy, sy, sx, sy, n);
  return {det3(sxz, sxy, sx, syz, syy, sy, sz, sy, n) / d, det3(sxx, sxz, sx, sxy, syz, sy, sx, sz, n) / d,
          det3(sxx, sxy, sxz, sxy, syy, syz, sx, sy, sz) / d};
}

inline double sse(const std::vector<Vec3>& pts, const Vec3& unit_normal, double offset) {
  double s = 0;
  for (const auto& p : pts) s += std::pow(unit_normal.dot(p) + offset, 2);
  return s;
}

// Lowest SSE among `trials` random planes near `plane` (rotation and offset
// perturbations up to `size`).
inline double best_perturbed_sse(const std::vector<Vec3>& pts, const CrispPlane& plane, int trials, double size,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double best = INFINITY;
  for (int t = 0; t < trials; ++t) {
    Vec3 axis(u(rng), u(rng), u(rng));
    if (axis.norm() < 1e-6) continue;
    axis.normalize();
    const double angle = size * std::abs(u(rng));
    // Rodrigues rotation of the normal.
    const Vec3 n = plane.normal();
    const Vec3 r = n * std::cos(angle) + axis.cross(n) * std::sin(angle) + axis * axis.dot(n) * (1 - std::cos(angle));
    best = std::min(best, sse(pts, r.normalized(), plane.offset() + size * u(rng)));
  }
  return best;
}

// Distance extremes by sampling: box vertices plus an interior lattice against
// `levels` planes per side drawn from plane.level(s), s in [alpha, 1].
inline Interval sampled_distance(const SpaceFuzzyPoint& point, const FuzzyPlane& plane, double alpha, bool vertical,
                                 int levels = 2000) {
  const auto box = point.cut(alpha);
  std::vector<Vec3> samples;
  for (double x : linspace(box.lo.x(), box.hi.x(), 4))
    for (double y : linspace(box.lo.y(), box.hi.y(), 4))
      for (double z : linspace(box.lo.z(), box.hi.z(), 4)) samples.emplace_back(x, y, z);
  const Vec3 axis = plane.core().normal();
  double lo = INFINITY;
  double hi = 0.0;
  for (double s : linspace(alpha, 1.0, levels)) {
    const auto pair = plane.level(s);
    for (const CrispPlane* q : {&pair.lower, &pair.upper}) {
      const double scale = vertical ? std::abs(q->normal().dot(axis)) : 1.0;
      double mn = INFINITY, mx = -INFINITY;
      for (const auto& p : samples) {
        const double f = q->signed_distance(p);
        mn = std::min(mn, f);
        mx = std::max(mx, f);
      }
      const double far = std::max(std::abs(mn), std::abs(mx)) / scale;
      const double near = (mn <= 0 && mx >= 0) ? 0.0 : std::min(std::abs(mn), std::abs(mx)) / scale;
      lo = std::min(lo, near);
      hi = std::max(hi, far);
    }
  }
  return {lo, hi};
}

// Highest box membership found on `plane` by a lattice of step `step` over the
// plane's two free coordinates inside the point's support.
inline double sampled_boundary_membership(const SpaceFuzzyPoint& point, const CrispPlane& plane, double step) {
  const auto box = point.support();
  const Vec3 n = plane.normal();
  int solve = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(n[k]) > std::abs(n[solve])) solve = k;
  const int u = (solve + 1) % 3;
  const int v = (solve + 2) % 3;
  double best = 0.0;
  for (double a = box.lo[u]; a <= box.hi[u] + 1e-12; a += step) {
    for (double b = box.lo[v]; b <= box.hi[v] + 1e-12; b += step) {
      Vec3 p;
      p[u] = a;
      p[v] = b;
      p[solve] = -(plane.offset() + n[u] * a + n[v] * b) / n[solve];
      best = std::max(best, point.membership(p));
    }
  }
  return best;
}

// Entry and exit parameters of a line through a box found by marching.
inline Interval marched_segment(const fuzzyplane::Box& box, const Vec3& origin, const Vec3& dir, double reach,
                                double step) {
  double first = INFINITY, last = -INFINITY;
  for (double t = -reach; t <= reach; t += step) {
    if (box.contains(origin + t * dir)) {
      first = std::min(first, t);
      last = std::max(last, t);
    }
  }
  return {first, last};
}

// 1 - max of normalized deviations, the closed form of a p = 1 box point.
inline double max_form_membership(const std::array<double, 3>& core, const std::array<double, 3>& left,
                                  const std::array<double, 3>& right, const Vec3& p) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = p[i] - core[static_cast<std::size_t>(i)];
    const double spread = d < 0 ? left[static_cast<std::size_t>(i)] : right[static_cast<std::size_t>(i)];
    worst = std::max(worst, d == 0 ? 0.0 : std::abs(d) / spread);
  }
  return std::max(0.0, 1.0 - worst);
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine); }

  double exponent() {
    switch (integer(0, 2)) {
      case 0: return 1.0;
      case 1: return 2.0;
      default: return uniform(1.0, 3.0);
    }
  }

  FuzzyNumber fuzzy(double core_lo, double core_hi, double spread_hi) {
    return FuzzyNumber::lr(uniform(core_lo, core_hi), uniform(0.05, spread_hi), uniform(0.05, spread_hi),
                           fuzzyplane::ReferenceFunction(exponent()), fuzzyplane::ReferenceFunction(exponent()));
  }

  SpaceFuzzyPoint point(double range = 5.0, double spread = 2.0) {
    return {fuzzy(-range, range, spread), fuzzy(-range, range, spread), fuzzy(-range, range, spread)};
  }

  // Intercept or coefficient plane with moderate tilt.
  FuzzyPlane plane(const AlphaGrid& grid) {
    if (integer(0, 1) == 0) {
      auto intercept = [&] {
        const double sign = integer(0, 1) ? 1.0 : -1.0;
        const double core = sign * uniform(2.0, 6.0);
        return FuzzyNumber::lr(core, uniform(0.05, 1.0), uniform(0.05, 1.0), fuzzyplane::ReferenceFunction(exponent()),
                               fuzzyplane::ReferenceFunction(exponent()));
      };
      return fuzzyplane::from_intercepts(intercept(), intercept(), intercept(), grid);
    }
    auto small = [&] { return fuzzy(-0.5, 0.5, 0.2); };
    const FuzzyNumber c = FuzzyNumber::lr(uniform(1.0, 2.0), uniform(0.05, 0.5), uniform(0.05, 0.5));
    return fuzzyplane::from_coefficients(small(), small(), c, fuzzy(-3.0, 3.0, 1.5), grid);
  }
};

}  // namespace oracle
