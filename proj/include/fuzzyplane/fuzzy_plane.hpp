#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "fuzzyplane/fuzzy_number.hpp"
#include "fuzzyplane/fuzzy_point.hpp"
#include "fuzzyplane/geometry.hpp"

namespace fuzzyplane {

/// The two bounding planes of a fuzzy plane at one membership level.
struct LevelPair {
  double alpha = 0.0;
  CrispPlane lower;
  CrispPlane upper;
};

/// a x + b y + c z + d = 0 with fuzzy coefficients.
struct CoefficientForm {
  FuzzyNumber a, b, c, d;
};

/// x / a + y / b + z / c = 1 with fuzzy intercepts whose same points are
/// taken jointly (lower with lower, upper with upper).
struct InterceptForm {
  FuzzyNumber x, y, z;
};

using PlaneGenerator = std::variant<CoefficientForm, InterceptForm>;

/// Which sides of the fuzzy plane extend without bound (plateaued data).
/// The lower side is the one against the core normal, the upper side along it.
struct UnboundedSides {
  bool lower = false;
  bool upper = false;

  bool any() const { return lower || upper; }
  friend bool operator==(const UnboundedSides&, const UnboundedSides&) = default;
};

/// Fuzzy plane as a family of crisp planes indexed by membership level.
///
/// The level table always contains alpha = 0 and alpha = 1, and the alpha = 1
/// entry collapses to the core plane. When an analytic generator is present,
/// queries between table levels are answered from it exactly; otherwise the
/// table is interpolated linearly in alpha.
class FuzzyPlane {
 public:
  explicit FuzzyPlane(std::vector<LevelPair> levels, UnboundedSides unbounded = {},
                      std::optional<PlaneGenerator> generator = std::nullopt);

  const std::vector<LevelPair>& levels() const { return levels_; }
  const CrispPlane& core() const { return levels_.back().lower; }
  UnboundedSides unbounded() const { return unbounded_; }
  const std::optional<PlaneGenerator>& generator() const { return generator_; }
  AlphaGrid grid() const;

  /// Bounding planes at any alpha. For a coefficient generator this uses the
  /// all-lower / all-upper same points (the non-negative octant selection).
  LevelPair level(double alpha) const;
  /// Bounding planes as selected for evaluating at `at`; coefficient
  /// generators pick same points by the octant of `at`.
  LevelPair level_at(double alpha, const Vec3& at) const;

  /// True when `p` lies between (or on) the alpha-level bounding planes.
  bool in_level(double alpha, const Vec3& p) const;
  /// sup{alpha : p lies on a plane of the alpha-level family}.
  double membership(const Vec3& p) const;

 private:
  std::vector<LevelPair> levels_;
  UnboundedSides unbounded_;
  std::optional<PlaneGenerator> generator_;
};

FuzzyPlane from_coefficients(const FuzzyNumber& a, const FuzzyNumber& b, const FuzzyNumber& c,
                             const FuzzyNumber& d, const AlphaGrid& grid = AlphaGrid());

FuzzyPlane from_intercepts(const FuzzyNumber& x, const FuzzyNumber& y, const FuzzyNumber& z,
                           const AlphaGrid& grid = AlphaGrid());

/// Octant-dependent selection of same points for a coefficient plane: entry k
/// is true when coefficient k (a, b, c, d) takes its upper same point in the
/// "lower" plane of the pair.
std::array<bool, 4> octant_swaps(const Vec3& at);

/// Restriction of the fuzzy plane to a line perpendicular to `reference`, as a
/// fuzzy number in signed arc length from the foot of line.point() on
/// `reference`. Throws kNonGraph when level planes are parallel to the line.
FuzzyNumber fiber_fuzzy_number(const FuzzyPlane& plane, const CrispPlane& reference, const Line3& line,
                               const AlphaGrid& grid = AlphaGrid());

/// Vertical fiber over (h, k) measured in z: the fuzzy number z~ = f~(h, k).
FuzzyNumber vertical_fiber(const FuzzyPlane& plane, double h, double k, const AlphaGrid& grid = AlphaGrid());

/// Space fuzzy point formed at `location` = (h, m h + c, z) by the horizontal
/// fuzzy number along y = m x + c and the vertical fiber over (h, m h + c).
/// The horizontal number is cut at the fiber's core height, so the point's
/// core lies on the core plane; location.z() is the query height only.
SpaceFuzzyPoint plane_point_pair(const FuzzyPlane& plane, double m, double c, const Vec3& location,
                                 const AlphaGrid& grid = AlphaGrid());

/// (g1 / core / g2): the alpha = 0 bounding planes around the core.
struct EquationalForm {
  CrispPlane g1;
  CrispPlane core;
  CrispPlane g2;
  UnboundedSides unbounded;
};

EquationalForm equational_form(const FuzzyPlane& plane);

}  // namespace fuzzyplane
