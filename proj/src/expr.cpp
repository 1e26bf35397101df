#include "fuzzyplane/expr.hpp"

#include <algorithm>
#include <array>
#include <variant>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane {

namespace {

double mul(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const std::array<double, 4> p{mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
  return {*std::min_element(p.begin(), p.end()), *std::max_element(p.begin(), p.end())};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) {
    fail(ErrorCode::kZeroDivisor, "division by an interval containing 0 (degenerate fuzzy divisor)");
  }
  return a * Interval{1.0 / b.hi, 1.0 / b.lo};
}

enum class Op { kAdd, kSub, kMul, kDiv, kNeg };

struct Expr::Node {
  struct Binary {
    Op op;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  std::variant<double, FuzzyNumber, Binary> value;

  Interval eval(double alpha) const {
    if (const auto* c = std::get_if<double>(&value)) return {*c, *c};
    if (const auto* f = std::get_if<FuzzyNumber>(&value)) return f->same_points(alpha).interval();
    const auto& b = std::get<Binary>(value);
    const Interval l = b.lhs->eval(alpha);
    if (b.op == Op::kNeg) return -l;
    const Interval r = b.rhs->eval(alpha);
    switch (b.op) {
      case Op::kAdd: return l + r;
      case Op::kSub: return l - r;
      case Op::kMul: return l * r;
      case Op::kDiv: return l / r;
      case Op::kNeg: break;
    }
    return l;
  }

  bool is_crisp() const {
    if (std::holds_alternative<double>(value)) return true;
    if (const auto* f = std::get_if<FuzzyNumber>(&value)) return f->is_crisp();
    const auto& b = std::get<Binary>(value);
    return b.lhs->is_crisp() && (!b.rhs || b.rhs->is_crisp());
  }
};

Expr::Expr(double value) : node_(std::make_shared<const Node>(Node{value})) {}

Expr::Expr(const FuzzyNumber& value) : node_(std::make_shared<const Node>(Node{value})) {}

Interval Expr::eval(double alpha) const { return node_->eval(alpha); }

bool Expr::is_crisp() const { return node_->is_crisp(); }

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Binary{Op::kAdd, a.node_, b.node_}}));
}

Expr operator-(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Binary{Op::kSub, a.node_, b.node_}}));
}

Expr operator*(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Binary{Op::kMul, a.node_, b.node_}}));
}

Expr operator/(const Expr& a, const Expr& b) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Binary{Op::kDiv, a.node_, b.node_}}));
}

Expr operator-(const Expr& a) {
  return Expr(std::make_shared<const Expr::Node>(Expr::Node{Expr::Node::Binary{Op::kNeg, a.node_, nullptr}}));
}

AlphaInterval interval_eval(const Expr& expr, double alpha) {
  check_alpha(alpha);
  const Interval r = expr.eval(alpha);
  return {alpha, r.lo, r.hi};
}

FuzzyNumber to_fuzzy_number(const Expr& expr, const AlphaGrid& grid) {
  return tabulate_cuts(grid, [&](double alpha) { return expr.eval(alpha); });
}

}  // namespace fuzzyplane
