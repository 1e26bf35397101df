#include "fuzzyplane/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kDegenerateGeometry: return "degenerate_geometry";
    case ErrorCode::kZeroDivisor: return "zero_divisor";
    case ErrorCode::kNonGraph: return "non_graph";
    case ErrorCode::kEmptyIntersection: return "empty_intersection";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

ReferenceFunction::ReferenceFunction(double exponent) : exponent_(exponent) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    std::ostringstream os;
    os << "reference exponent must be >= 1, got " << exponent;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

double ReferenceFunction::operator()(double u) const {
  const double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  if (exponent_ == 1.0) return 1.0 - a;
  if (exponent_ == 2.0) return 1.0 - a * a;
  return 1.0 - std::pow(a, exponent_);
}

double ReferenceFunction::inverse(double level) const {
  const double rest = 1.0 - level;
  if (rest <= 0.0) return 0.0;
  if (exponent_ == 1.0) return rest;
  if (exponent_ == 2.0) return std::sqrt(rest);
  return std::pow(rest, 1.0 / exponent_);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "membership level must lie in [0, 1], got " << alpha;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

AlphaGrid::AlphaGrid(int steps) {
  if (steps < 2) {
    fail(ErrorCode::kInvalidArgument, "alpha grid needs at least 2 steps, got " + std::to_string(steps));
  }
  levels_.resize(static_cast<std::size_t>(steps));
  const double denom = static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) levels_[static_cast<std::size_t>(i)] = static_cast<double>(i) / denom;
  levels_.back() = 1.0;
}

AlphaGrid AlphaGrid::from_levels(std::vector<double> levels) {
  if (levels.size() < 2 || levels.front() != 0.0 || levels.back() != 1.0) {
    fail(ErrorCode::kInvalidArgument, "alpha levels must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (!(levels[i] > levels[i - 1])) fail(ErrorCode::kInvalidArgument, "alpha levels must be strictly increasing");
  }
  AlphaGrid grid{Raw{}};
  grid.levels_ = std::move(levels);
  return grid;
}

FuzzyNumber FuzzyNumber::lr(double core, double left_spread, double right_spread, ReferenceFunction left_ref,
                            ReferenceFunction right_ref, Plateau plateau) {
  if (!std::isfinite(core)) fail(ErrorCode::kInvalidArgument, "fuzzy number core must be finite");
  if (!(left_spread >= 0.0) || !(right_spread >= 0.0) || !std::isfinite(left_spread) ||
      !std::isfinite(right_spread)) {
    std::ostringstream os;
    os << "fuzzy number spreads must be finite and >= 0, got left=" << left_spread << " right=" << right_spread;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  FuzzyNumber fn;
  fn.core_ = core;
  // A plateau side has no spread; membership stays 1 beyond the core.
  fn.left_ = plateau == Plateau::kLeft ? 0.0 : left_spread;
  fn.right_ = plateau == Plateau::kRight ? 0.0 : right_spread;
  // A side without a branch has no shape; keep the default so equal numbers compare equal.
  fn.left_ref_ = fn.left_ > 0.0 ? left_ref : ReferenceFunction();
  fn.right_ref_ = fn.right_ > 0.0 ? right_ref : ReferenceFunction();
  fn.plateau_ = plateau;
  return fn;
}

FuzzyNumber FuzzyNumber::triangular(double lo, double core, double hi) {
  return lr(core, core - lo, hi - core);
}

FuzzyNumber FuzzyNumber::crisp(double value) { return lr(value, 0.0, 0.0); }

FuzzyNumber FuzzyNumber::tabulated(std::vector<AlphaInterval> cuts) {
  if (cuts.size() < 2 || cuts.front().alpha != 0.0 || cuts.back().alpha != 1.0) {
    fail(ErrorCode::kInvalidArgument, "tabulated fuzzy number needs cuts from alpha 0 to alpha 1");
  }
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    auto& c = cuts[i];
    if (std::isnan(c.lo) || std::isnan(c.hi)) fail(ErrorCode::kInvalidArgument, "tabulated cut is NaN");
    if (i > 0 && !(c.alpha > cuts[i - 1].alpha)) {
      fail(ErrorCode::kInvalidArgument, "tabulated cuts must have increasing alpha");
    }
  }
  const double scale = [&] {
    double s = 1.0;
    for (const auto& c : cuts) {
      if (std::isfinite(c.lo)) s = std::max(s, std::abs(c.lo));
      if (std::isfinite(c.hi)) s = std::max(s, std::abs(c.hi));
    }
    return s;
  }();
  const double tol = 1e-9 * scale;
  // Nestedness, with round-off up to `tol` absorbed.
  for (std::size_t i = cuts.size() - 1; i-- > 0;) {
    auto& c = cuts[i];
    const auto& next = cuts[i + 1];
    if (c.lo > next.lo + tol || c.hi < next.hi - tol) {
      std::ostringstream os;
      os << "tabulated cuts are not nested at alpha " << c.alpha;
      fail(ErrorCode::kInvalidArgument, os.str());
    }
    c.lo = std::min(c.lo, next.lo);
    c.hi = std::max(c.hi, next.hi);
  }
  auto& top = cuts.back();
  if (top.lo > top.hi + tol) fail(ErrorCode::kInvalidArgument, "tabulated core cut is empty");
  if (top.lo > top.hi) top.lo = top.hi = 0.5 * (top.lo + top.hi);

  FuzzyNumber fn;
  if (std::isfinite(top.lo) && std::isfinite(top.hi)) {
    if (top.hi - top.lo > tol) fail(ErrorCode::kInvalidArgument, "tabulated fuzzy number has a flat top");
    fn.core_ = 0.5 * (top.lo + top.hi);
  } else if (std::isfinite(top.lo)) {
    fn.core_ = top.lo;
  } else if (std::isfinite(top.hi)) {
    fn.core_ = top.hi;
  } else {
    fail(ErrorCode::kInvalidArgument, "tabulated fuzzy number has no finite core");
  }
  fn.table_ = std::move(cuts);
  return fn;
}

bool FuzzyNumber::left_plateau() const {
  if (is_tabulated()) return std::isinf(table_.back().lo);
  return plateau_ == Plateau::kLeft;
}

bool FuzzyNumber::right_plateau() const {
  if (is_tabulated()) return std::isinf(table_.back().hi);
  return plateau_ == Plateau::kRight;
}

double FuzzyNumber::left_spread() const {
  if (left_plateau()) return kInf;
  if (is_tabulated()) return core_ - table_.front().lo;
  return left_;
}

double FuzzyNumber::right_spread() const {
  if (right_plateau()) return kInf;
  if (is_tabulated()) return table_.front().hi - core_;
  return right_;
}

bool FuzzyNumber::is_crisp() const {
  return !left_plateau() && !right_plateau() && left_spread() == 0.0 && right_spread() == 0.0;
}

namespace {

// Largest alpha on the tabulated left branch with lo(alpha) <= x (mirrored for the right).
double table_branch_level(std::span<const AlphaInterval> t, double x, bool left) {
  auto bound = [&](std::size_t k) { return left ? t[k].lo : -t[k].hi; };
  const double v = left ? x : -x;
  if (v < bound(0)) return 0.0;
  std::size_t k = 0;
  while (k + 1 < t.size() && bound(k + 1) <= v) ++k;
  if (k + 1 == t.size()) return 1.0;
  const double b0 = bound(k);
  const double b1 = bound(k + 1);
  if (!std::isfinite(b0)) return t[k].alpha;
  const double w = b1 > b0 ? (v - b0) / (b1 - b0) : 0.0;
  return t[k].alpha + w * (t[k + 1].alpha - t[k].alpha);
}

}  // namespace

double FuzzyNumber::membership(double x) const {
  if (std::isnan(x)) return 0.0;
  if (is_tabulated()) {
    const auto& top = table_.back();
    if (top.lo <= x && x <= top.hi) return 1.0;
    if (x < top.lo) {
      if (x < table_.front().lo) return 0.0;
      return table_branch_level(table_, x, true);
    }
    if (x > table_.front().hi) return 0.0;
    return table_branch_level(table_, x, false);
  }
  if (x == core_) return 1.0;
  if (x > core_) {
    if (plateau_ == Plateau::kRight) return 1.0;
    if (right_ == 0.0) return 0.0;
    return right_ref_((x - core_) / right_);
  }
  if (plateau_ == Plateau::kLeft) return 1.0;
  if (left_ == 0.0) return 0.0;
  return left_ref_((core_ - x) / left_);
}

AlphaInterval FuzzyNumber::same_points(double alpha) const {
  check_alpha(alpha);
  if (is_tabulated()) {
    std::size_t k = 0;
    while (k + 1 < table_.size() && table_[k + 1].alpha <= alpha) ++k;
    if (k + 1 == table_.size() || table_[k].alpha == alpha) return {alpha, table_[k].lo, table_[k].hi};
    const auto& a = table_[k];
    const auto& b = table_[k + 1];
    const double w = (alpha - a.alpha) / (b.alpha - a.alpha);
    auto lerp = [w](double u, double v) {
      if (std::isinf(u) || std::isinf(v)) return std::isinf(v) ? v : u;
      return u + w * (v - u);
    };
    return {alpha, lerp(a.lo, b.lo), lerp(a.hi, b.hi)};
  }
  const double lo = plateau_ == Plateau::kLeft ? -kInf : core_ - left_ * left_ref_.inverse(alpha);
  const double hi = plateau_ == Plateau::kRight ? kInf : core_ + right_ * right_ref_.inverse(alpha);
  return {alpha, lo, hi};
}

FuzzyNumber FuzzyNumber::shifted(double delta) const {
  FuzzyNumber out = *this;
  out.core_ += delta;
  for (auto& c : out.table_) {
    c.lo += delta;
    c.hi += delta;
  }
  return out;
}

namespace {

struct BranchFit {
  bool ok = false;
  bool plateau = false;
  double spread = 0.0;
  double exponent = 1.0;
};

// Tries to express one tabulated branch as spread * (1 - alpha)^(1/p).
// `offsets` holds the distance of the same point from the core per level.
BranchFit fit_branch(std::span<const AlphaInterval> t, const std::vector<double>& offsets, double tolerance) {
  BranchFit fit;
  if (std::all_of(offsets.begin(), offsets.end(), [](double d) { return std::isinf(d); })) {
    fit.ok = true;
    fit.plateau = true;
    return fit;
  }
  if (std::any_of(offsets.begin(), offsets.end(), [](double d) { return !std::isfinite(d); })) return fit;
  fit.spread = offsets.front();
  const double tol = tolerance * std::max(1.0, fit.spread);
  if (fit.spread <= tol) {
    fit.spread = 0.0;
    fit.ok = std::all_of(offsets.begin(), offsets.end(), [&](double d) { return std::abs(d) <= tol; });
    return fit;
  }
  // Estimate p from the interior level closest to 1/2, then verify everywhere.
  std::size_t best = 0;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    if (best == 0 || std::abs(t[k].alpha - 0.5) < std::abs(t[best].alpha - 0.5)) best = k;
  }
  if (best == 0) {
    fit.ok = true;  // only the two end levels: the linear branch interpolates them exactly
    return fit;
  }
  const double ratio = offsets[best] / fit.spread;
  if (!(ratio > 0.0 && ratio < 1.0)) return fit;
  double p = std::log(1.0 - t[best].alpha) / std::log(ratio);
  const double rounded = std::round(p * 1e6) / 1e6;
  if (std::abs(rounded - p) < 1e-7) p = rounded;
  if (!(p >= 1.0 - 1e-9)) return fit;
  fit.exponent = std::max(1.0, p);
  const ReferenceFunction ref(fit.exponent);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(offsets[k] - fit.spread * ref.inverse(t[k].alpha)) > tol) return fit;
  }
  fit.ok = true;
  return fit;
}

}  // namespace

FuzzyNumber FuzzyNumber::simplified(double tolerance) const {
  if (!is_tabulated()) return *this;
  std::vector<double> left_off;
  std::vector<double> right_off;
  left_off.reserve(table_.size());
  right_off.reserve(table_.size());
  for (const auto& c : table_) {
    left_off.push_back(core_ - c.lo);
    right_off.push_back(c.hi - core_);
  }
  const BranchFit l = fit_branch(table_, left_off, tolerance);
  const BranchFit r = fit_branch(table_, right_off, tolerance);
  if (!l.ok || !r.ok || (l.plateau && r.plateau)) return *this;
  const Plateau plateau = l.plateau ? Plateau::kLeft : (r.plateau ? Plateau::kRight : Plateau::kNone);
  return lr(core_, l.spread, r.spread, ReferenceFunction(l.exponent), ReferenceFunction(r.exponent), plateau);
}

}  // namespace fuzzyplane
