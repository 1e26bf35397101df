#include "fuzzyplane/fuzzy_plane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzyplane/error.hpp"
#include "fuzzyplane/expr.hpp"

namespace fuzzyplane {

namespace {

constexpr double kParallelEps = 1e-12;

using Vec4 = PlaneCoefficients;

Vec4 homogeneous(const Vec3& p) { return {p.x(), p.y(), p.z(), 1.0}; }

double eval_tolerance(const Vec4& coefficients, const Vec3& p) {
  return 1e-12 * coefficients.cwiseAbs().sum() * (1.0 + p.cwiseAbs().maxCoeff());
}

// Raw coefficient vectors of a coefficient-form plane at `alpha`: entry k of
// the "lower" vector takes the lower same point unless swapped.
std::pair<Vec4, Vec4> raw_coefficient_pair(const CoefficientForm& form, double alpha, const std::array<bool, 4>& swaps) {
  const std::array<AlphaInterval, 4> cuts{form.a.same_points(alpha), form.b.same_points(alpha),
                                          form.c.same_points(alpha), form.d.same_points(alpha)};
  Vec4 lower;
  Vec4 upper;
  for (int k = 0; k < 4; ++k) {
    const auto& cut = cuts[static_cast<std::size_t>(k)];
    lower[k] = swaps[static_cast<std::size_t>(k)] ? cut.hi : cut.lo;
    upper[k] = swaps[static_cast<std::size_t>(k)] ? cut.lo : cut.hi;
  }
  return {lower, upper};
}

Vec4 raw_intercept_plane(double a, double b, double c) {
  // Plane through (a,0,0), (0,b,0), (0,0,c): bc x + ac y + ab z = abc.
  return {b * c, a * c, a * b, -a * b * c};
}

std::pair<Vec4, Vec4> raw_intercept_pair(const InterceptForm& form, double alpha) {
  const AlphaInterval x = form.x.same_points(alpha);
  const AlphaInterval y = form.y.same_points(alpha);
  const AlphaInterval z = form.z.same_points(alpha);
  return {raw_intercept_plane(x.lo, y.lo, z.lo), raw_intercept_plane(x.hi, y.hi, z.hi)};
}

CrispPlane intercept_plane(const InterceptForm& form, double alpha, bool upper) {
  auto pick = [&](double a) {
    const auto pair = raw_intercept_pair(form, a);
    return upper ? pair.second : pair.first;
  };
  Vec4 raw = pick(alpha);
  // All three intercepts at the origin: take the limit from a neighbouring level.
  for (double step : {1e-9, 1e-7, 1e-5}) {
    if (raw.head<3>().norm() > 1e-300) break;
    const double a = alpha + step <= 1.0 ? alpha + step : alpha - step;
    raw = pick(a);
  }
  if (!(raw.head<3>().norm() > 1e-300)) {
    std::ostringstream os;
    os << "intercept plane is undefined at alpha " << alpha << " (two or more intercepts vanish)";
    fail(ErrorCode::kDegenerateGeometry, os.str());
  }
  return CrispPlane::from_coefficients(raw);
}

void reject_plateau(const FuzzyNumber& f, const char* what) {
  if (f.left_plateau() || f.right_plateau()) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + " must not have a plateau");
  }
}

// Bounds of the parameter set {t : g0 + g1 t >= 0}.
Interval half_line(double g0, double g1) {
  if (std::abs(g1) < kParallelEps) return g0 >= 0.0 ? Interval{-kInf, kInf} : Interval{kInf, -kInf};
  const double root = -g0 / g1;
  return g1 > 0.0 ? Interval{root, kInf} : Interval{-kInf, root};
}

Interval intersect(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// Cut of a level pair (non-coefficient generators) along origin + t * dir.
Interval pair_cut_along(const LevelPair& pair, const Vec3& core_normal, UnboundedSides unbounded, const Vec3& origin,
                        const Vec3& dir) {
  const Vec4 lo = pair.lower.oriented_like(core_normal);
  const Vec4 up = pair.upper.oriented_like(core_normal);
  const double lo0 = lo.dot(homogeneous(origin));
  const double lo1 = lo.head<3>().dot(dir);
  const double up0 = up.dot(homogeneous(origin));
  const double up1 = up.head<3>().dot(dir);
  if (unbounded.lower && unbounded.upper) return {-kInf, kInf};
  if (unbounded.upper) {
    if (std::abs(lo1) < kParallelEps) fail(ErrorCode::kNonGraph, "level plane is parallel to the probe line");
    return half_line(lo0, lo1);
  }
  if (unbounded.lower) {
    if (std::abs(up1) < kParallelEps) fail(ErrorCode::kNonGraph, "level plane is parallel to the probe line");
    return half_line(-up0, -up1);
  }
  if (std::abs(lo1) < kParallelEps || std::abs(up1) < kParallelEps) {
    fail(ErrorCode::kNonGraph, "level plane is parallel to the probe line");
  }
  const double t_lo = -lo0 / lo1;
  const double t_up = -up0 / up1;
  return {std::min(t_lo, t_up), std::max(t_lo, t_up)};
}

// Exact cut of a coefficient-form plane along origin + t * dir: the set of t
// where the interval value of a~x + b~y + c~z + d~ contains 0. The interval
// bounds are linear between the points where the line crosses a coordinate
// plane.
Interval coefficient_cut_along(const CoefficientForm& form, double alpha, const Vec3& origin, const Vec3& dir) {
  std::vector<double> breaks{-kInf, kInf};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(dir[k]) >= kParallelEps) breaks.push_back(-origin[k] / dir[k]);
  }
  std::sort(breaks.begin(), breaks.end());
  Interval hull{kInf, -kInf};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    double mid;
    if (std::isinf(a) && std::isinf(b)) mid = 0.0;
    else if (std::isinf(a)) mid = b - 1.0;
    else if (std::isinf(b)) mid = a + 1.0;
    else mid = 0.5 * (a + b);
    const auto [l, u] = raw_coefficient_pair(form, alpha, octant_swaps(origin + mid * dir));
    double l0 = l.dot(homogeneous(origin)), l1 = l.head<3>().dot(dir);
    double u0 = u.dot(homogeneous(origin)), u1 = u.head<3>().dot(dir);
    if (l0 + l1 * mid > u0 + u1 * mid) {
      std::swap(l0, u0);
      std::swap(l1, u1);
    }
    // lower bound <= 0 and upper bound >= 0
    Interval piece = intersect(half_line(-l0, -l1), half_line(u0, u1));
    piece = intersect(piece, {a, b});
    if (piece.lo > piece.hi) continue;
    hull.lo = std::min(hull.lo, piece.lo);
    hull.hi = std::max(hull.hi, piece.hi);
  }
  if (hull.lo > hull.hi) fail(ErrorCode::kEmptyIntersection, "probe line misses the fuzzy plane");
  if (std::isinf(hull.lo) || std::isinf(hull.hi)) {
    fail(ErrorCode::kNonGraph, "fuzzy plane level set is unbounded along the probe line");
  }
  return hull;
}

Interval cut_along(const FuzzyPlane& plane, double alpha, const Vec3& origin, const Vec3& dir) {
  if (const auto* form = plane.generator() ? std::get_if<CoefficientForm>(&*plane.generator()) : nullptr) {
    return coefficient_cut_along(*form, alpha, origin, dir);
  }
  return pair_cut_along(plane.level(alpha), plane.core().normal(), plane.unbounded(), origin, dir);
}

// Cuts over the grid, each widened to cover the cuts above it so that the
// result is nested even where the level sandwiches are not.
template <typename CutFn>
FuzzyNumber swept_cuts(const AlphaGrid& grid, CutFn&& cut) {
  std::vector<AlphaInterval> cuts(grid.size());
  for (std::size_t i = grid.size(); i-- > 0;) {
    Interval c = cut(grid[i]);
    if (i + 1 < grid.size()) {
      c.lo = std::min(c.lo, cuts[i + 1].lo);
      c.hi = std::max(c.hi, cuts[i + 1].hi);
    }
    cuts[i] = {grid[i], c.lo, c.hi};
  }
  return FuzzyNumber::tabulated(std::move(cuts)).simplified();
}

}  // namespace

std::array<bool, 4> octant_swaps(const Vec3& at) {
  // Coordinates on a coordinate plane count as non-negative.
  const bool nx = at.x() < 0.0;
  const bool ny = at.y() < 0.0;
  const bool nz = at.z() < 0.0;
  if (nx && ny && nz) return {false, false, false, true};
  // (x <= 0, y >= 0, z <= 0) uses the mirror of the (x >= 0, y <= 0, z <= 0) row.
  return {nx, ny, nz, false};
}

FuzzyPlane::FuzzyPlane(std::vector<LevelPair> levels, UnboundedSides unbounded,
                       std::optional<PlaneGenerator> generator)
    : levels_(std::move(levels)), unbounded_(unbounded), generator_(std::move(generator)) {
  if (levels_.size() < 2 || levels_.front().alpha != 0.0 || levels_.back().alpha != 1.0) {
    fail(ErrorCode::kInvalidArgument, "fuzzy plane levels must run from alpha 0 to alpha 1");
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!(levels_[i].alpha > levels_[i - 1].alpha)) {
      fail(ErrorCode::kInvalidArgument, "fuzzy plane levels must have increasing alpha");
    }
  }
  auto& top = levels_.back();
  if (!approx_equal(top.lower, top.upper, 1e-9)) {
    fail(ErrorCode::kInvalidArgument, "alpha = 1 level of a fuzzy plane must be a single core plane");
  }
  top.upper = top.lower;
}

AlphaGrid FuzzyPlane::grid() const {
  std::vector<double> alphas;
  alphas.reserve(levels_.size());
  for (const auto& l : levels_) alphas.push_back(l.alpha);
  return AlphaGrid::from_levels(std::move(alphas));
}

LevelPair FuzzyPlane::level(double alpha) const {
  check_alpha(alpha);
  if (alpha == 1.0) return levels_.back();
  if (generator_) {
    if (const auto* form = std::get_if<CoefficientForm>(&*generator_)) {
      const auto [lo, up] = raw_coefficient_pair(*form, alpha, {false, false, false, false});
      return {alpha, CrispPlane::from_coefficients(lo), CrispPlane::from_coefficients(up)};
    }
    const auto& form = std::get<InterceptForm>(*generator_);
    return {alpha, intercept_plane(form, alpha, false), intercept_plane(form, alpha, true)};
  }
  std::size_t k = 0;
  while (k + 1 < levels_.size() && levels_[k + 1].alpha <= alpha) ++k;
  if (levels_[k].alpha == alpha) return levels_[k];
  const auto& a = levels_[k];
  const auto& b = levels_[k + 1];
  const double w = (alpha - a.alpha) / (b.alpha - a.alpha);
  const Vec3& n = core().normal();
  auto blend = [&](const CrispPlane& p, const CrispPlane& q) {
    return CrispPlane::from_coefficients((1.0 - w) * p.oriented_like(n) + w * q.oriented_like(n));
  };
  return {alpha, blend(a.lower, b.lower), blend(a.upper, b.upper)};
}

LevelPair FuzzyPlane::level_at(double alpha, const Vec3& at) const {
  check_alpha(alpha);
  if (generator_) {
    if (const auto* form = std::get_if<CoefficientForm>(&*generator_)) {
      const auto [lo, up] = raw_coefficient_pair(*form, alpha, octant_swaps(at));
      return {alpha, CrispPlane::from_coefficients(lo), CrispPlane::from_coefficients(up)};
    }
  }
  return level(alpha);
}

bool FuzzyPlane::in_level(double alpha, const Vec3& p) const {
  check_alpha(alpha);
  if (generator_) {
    if (const auto* form = std::get_if<CoefficientForm>(&*generator_)) {
      const auto [lo, up] = raw_coefficient_pair(*form, alpha, octant_swaps(p));
      const double f_lo = lo.dot(homogeneous(p));
      const double f_up = up.dot(homogeneous(p));
      const double tol = std::max(eval_tolerance(lo, p), eval_tolerance(up, p));
      return std::min(f_lo, f_up) <= tol && std::max(f_lo, f_up) >= -tol;
    }
  }
  if (unbounded_.lower && unbounded_.upper) return true;
  const LevelPair pair = level(alpha);
  const Vec3& n = core().normal();
  const Vec4 lo = pair.lower.oriented_like(n);
  const Vec4 up = pair.upper.oriented_like(n);
  const double f_lo = lo.dot(homogeneous(p));
  const double f_up = up.dot(homogeneous(p));
  const double tol = std::max(eval_tolerance(lo, p), eval_tolerance(up, p));
  if (unbounded_.upper) return f_lo >= -tol;
  if (unbounded_.lower) return f_up <= tol;
  return std::min(f_lo, f_up) <= tol && std::max(f_lo, f_up) >= -tol;
}

double FuzzyPlane::membership(const Vec3& p) const {
  // Sandwiches of intercept planes need not be nested in alpha, so the highest
  // grid level containing p is found first and only the step above it bisected.
  std::size_t k = levels_.size();
  while (k-- > 0 && !in_level(levels_[k].alpha, p)) {
  }
  if (k == static_cast<std::size_t>(-1)) return 0.0;
  if (k + 1 == levels_.size()) return 1.0;
  double lo = levels_[k].alpha;
  double hi = levels_[k + 1].alpha;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (in_level(mid, p) ? lo : hi) = mid;
  }
  return lo;
}

FuzzyPlane from_coefficients(const FuzzyNumber& a, const FuzzyNumber& b, const FuzzyNumber& c, const FuzzyNumber& d,
                             const AlphaGrid& grid) {
  reject_plateau(a, "coefficient a");
  reject_plateau(b, "coefficient b");
  reject_plateau(c, "coefficient c");
  reject_plateau(d, "coefficient d");
  if (c.support().interval().contains_zero()) {
    fail(ErrorCode::kZeroDivisor, "support of the fuzzy z-coefficient contains 0");
  }
  const CoefficientForm form{a, b, c, d};
  std::vector<LevelPair> levels;
  levels.reserve(grid.size());
  for (double alpha : grid.levels()) {
    const auto [lo, up] = raw_coefficient_pair(form, alpha, {false, false, false, false});
    levels.push_back({alpha, CrispPlane::from_coefficients(lo), CrispPlane::from_coefficients(up)});
  }
  return FuzzyPlane(std::move(levels), {}, PlaneGenerator{form});
}

FuzzyPlane from_intercepts(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& z, const AlphaGrid& grid) {
  reject_plateau(x, "x intercept");
  reject_plateau(y, "y intercept");
  reject_plateau(z, "z intercept");
  const InterceptForm form{x, y, z};
  std::vector<LevelPair> levels;
  levels.reserve(grid.size());
  for (double alpha : grid.levels()) {
    levels.push_back({alpha, intercept_plane(form, alpha, false), intercept_plane(form, alpha, true)});
  }
  return FuzzyPlane(std::move(levels), {}, PlaneGenerator{form});
}

FuzzyNumber fiber_fuzzy_number(const FuzzyPlane& plane, const CrispPlane& reference, const Line3& line,
                               const AlphaGrid& grid) {
  if (line.direction().cross(reference.normal()).norm() > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "fiber line must be perpendicular to the reference plane");
  }
  const Vec3 foot = reference.project(line.point());
  const Vec3& dir = line.direction();
  return swept_cuts(grid, [&](double alpha) { return cut_along(plane, alpha, foot, dir); });
}

FuzzyNumber vertical_fiber(const FuzzyPlane& plane, double h, double k, const AlphaGrid& grid) {
  return fiber_fuzzy_number(plane, CrispPlane(), Line3(Vec3(h, k, 0.0), Vec3::UnitZ()), grid);
}

SpaceFuzzyPoint plane_point_pair(const FuzzyPlane& plane, double m, double c, const Vec3& location,
                                 const AlphaGrid& grid) {
  const double h = location.x();
  const double k = m * h + c;
  if (std::abs(location.y() - k) > 1e-9 * (1.0 + std::abs(k))) {
    fail(ErrorCode::kInvalidArgument, "location must satisfy y = m x + c");
  }
  FuzzyNumber z_part = vertical_fiber(plane, h, k, grid);
  // The horizontal number is taken at the height of the fiber's core.
  const double z = z_part.core();
  FuzzyNumber x_part;
  const auto* form = plane.generator() ? std::get_if<CoefficientForm>(&*plane.generator()) : nullptr;
  if (form) {
    // a~x + b~(m x + c) + c~z + d~ = 0 solved for x.
    const Expr numerator = -(Expr(form->b) * c + Expr(form->c) * z + Expr(form->d));
    x_part = to_fuzzy_number(numerator / (Expr(form->a) + Expr(form->b) * m), grid);
  } else {
    // Same points taken jointly: cut the level planes along y = m x + c at height z.
    const Vec3 origin(0.0, c, z);
    const Vec3 dir(1.0, m, 0.0);
    x_part = swept_cuts(grid, [&](double alpha) {
      return pair_cut_along(plane.level(alpha), plane.core().normal(), plane.unbounded(), origin, dir);
    });
  }
  FuzzyNumber y_part = to_fuzzy_number(Expr(x_part) * m + c, grid);
  return {std::move(x_part), std::move(y_part), std::move(z_part)};
}

EquationalForm equational_form(const FuzzyPlane& plane) {
  const LevelPair& support = plane.levels().front();
  return {support.lower, plane.core(), support.upper, plane.unbounded()};
}

}  // namespace fuzzyplane
