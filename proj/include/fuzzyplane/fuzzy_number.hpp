#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace fuzzyplane {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shape function max{0, 1 - |u|^p} used on either side of an LR number.
/// p = 1 is the linear (triangular) branch, p = 2 the quadratic one.
class ReferenceFunction {
 public:
  constexpr ReferenceFunction() = default;
  explicit ReferenceFunction(double exponent);

  double exponent() const noexcept { return exponent_; }

  double operator()(double u) const;
  /// Normalized distance u in [0, 1] at which the branch has value `level`.
  double inverse(double level) const;

  friend bool operator==(const ReferenceFunction&, const ReferenceFunction&) = default;

 private:
  double exponent_ = 1.0;
};

enum class Plateau { kNone, kLeft, kRight };

/// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The pair of same points (alpha-cut endpoints) of a fuzzy quantity at a level.
struct AlphaInterval {
  double alpha = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  Interval interval() const { return {lo, hi}; }
  double width() const { return hi - lo; }

  friend bool operator==(const AlphaInterval&, const AlphaInterval&) = default;
};

/// Uniform grid of membership levels; always contains 0 and exactly 1.
class AlphaGrid {
 public:
  static constexpr int kDefaultSteps = 101;

  explicit AlphaGrid(int steps = kDefaultSteps);
  /// Arbitrary ascending levels; must start at 0 and end at 1.
  static AlphaGrid from_levels(std::vector<double> levels);

  std::span<const double> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t i) const { return levels_[i]; }

 private:
  struct Raw {};
  explicit AlphaGrid(Raw) {}
  std::vector<double> levels_;
};

void check_alpha(double alpha);

/// LR-type fuzzy number with optional one-sided plateau, or a tabulated fuzzy
/// number given by its alpha-cuts on a grid (used when a derived quantity is
/// not exactly of LR shape).
class FuzzyNumber {
 public:
  /// Crisp zero.
  FuzzyNumber() = default;

  static FuzzyNumber lr(double core, double left_spread, double right_spread,
                        ReferenceFunction left_ref = {}, ReferenceFunction right_ref = {},
                        Plateau plateau = Plateau::kNone);
  /// (lo/core/hi) with linear branches.
  static FuzzyNumber triangular(double lo, double core, double hi);
  static FuzzyNumber crisp(double value);
  /// Cuts must start at alpha 0, end at alpha 1 and be nested.
  static FuzzyNumber tabulated(std::vector<AlphaInterval> cuts);

  double core() const { return core_; }
  /// Extent of the support to the left/right of the core (infinite on a plateau side).
  double left_spread() const;
  double right_spread() const;
  const ReferenceFunction& left_reference() const { return left_ref_; }
  const ReferenceFunction& right_reference() const { return right_ref_; }
  Plateau plateau() const { return plateau_; }
  bool left_plateau() const;
  bool right_plateau() const;
  bool is_tabulated() const { return !table_.empty(); }
  bool is_crisp() const;
  std::span<const AlphaInterval> table() const { return table_; }

  double membership(double x) const;
  /// Alpha-cut endpoints; infinite on a plateau side.
  AlphaInterval same_points(double alpha) const;
  AlphaInterval support() const { return same_points(0.0); }

  FuzzyNumber shifted(double delta) const;
  /// Returns an exact LR form when the tabulation matches one to `tolerance`
  /// (relative to the spread); otherwise returns *this.
  FuzzyNumber simplified(double tolerance = 1e-10) const;

  friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

 private:
  double core_ = 0.0;
  double left_ = 0.0;
  double right_ = 0.0;
  ReferenceFunction left_ref_;
  ReferenceFunction right_ref_;
  Plateau plateau_ = Plateau::kNone;
  std::vector<AlphaInterval> table_;
};

/// Tabulates `cut(alpha)` on the grid and simplifies to LR form where exact.
template <typename CutFn>
FuzzyNumber tabulate_cuts(const AlphaGrid& grid, CutFn&& cut) {
  std::vector<AlphaInterval> cuts;
  cuts.reserve(grid.size());
  for (double alpha : grid.levels()) {
    const Interval iv = cut(alpha);
    cuts.push_back({alpha, iv.lo, iv.hi});
  }
  return FuzzyNumber::tabulated(std::move(cuts)).simplified();
}

}  // namespace fuzzyplane
