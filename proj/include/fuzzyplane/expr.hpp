#pragma once

#include <memory>

#include "fuzzyplane/fuzzy_number.hpp"

namespace fuzzyplane {

// Interval arithmetic on alpha-cuts. Products use 0 * inf = 0 so that plateau
// cuts combine with crisp zeros. Division throws kZeroDivisor when the divisor
// contains 0.
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

/// Arithmetic expression over fuzzy numbers and crisp reals, evaluated level by
/// level with interval arithmetic on the alpha-cuts of its leaves.
class Expr {
 public:
  Expr(double value);             // NOLINT(google-explicit-constructor)
  Expr(const FuzzyNumber& value);  // NOLINT(google-explicit-constructor)

  Interval eval(double alpha) const;
  bool is_crisp() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Image of the alpha-cuts under `expr`.
AlphaInterval interval_eval(const Expr& expr, double alpha);

/// The fuzzy number whose cuts are interval_eval(expr, alpha) on `grid`.
FuzzyNumber to_fuzzy_number(const Expr& expr, const AlphaGrid& grid = AlphaGrid());

}  // namespace fuzzyplane
