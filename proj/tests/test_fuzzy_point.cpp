#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fuzzyplane/error.hpp"
#include "fuzzyplane/fuzzy_point.hpp"
#include "oracles.hpp"

using namespace fuzzyplane;
using doctest::Approx;

namespace {

SpaceFuzzyPoint cuboid(const Vec3& core, double s) {
  return {FuzzyNumber::lr(core.x(), s, s), FuzzyNumber::lr(core.y(), s, s), FuzzyNumber::lr(core.z(), s, s)};
}

}  // namespace

TEST_CASE("crisp plane normalization") {
  const auto p = CrispPlane::from_coefficients(-2, -2, -2, 6);
  CHECK(p.normal().norm() == Approx(1.0).epsilon(1e-15));
  CHECK(p.normal().x() > 0);
  CHECK(p.signed_distance(Vec3(1, 1, 1)) == Approx(0.0));
  CHECK_THROWS_AS(CrispPlane::from_coefficients(0, 0, 0, 1), Error);
  CHECK(CrispPlane::from_height(0, 0, 10).height_at(3, 4) == Approx(10));
}

TEST_CASE("membership is the minimum of the components") {
  const SpaceFuzzyPoint p(FuzzyNumber::triangular(1.5, 3, 3.5), FuzzyNumber::triangular(2.5, 4, 4.5),
                          FuzzyNumber::triangular(-9, -6, -5));
  CHECK(p.membership(Vec3(3, 4, -7)) == Approx(2.0 / 3.0));
  CHECK(p.membership(p.core()) == 1.0);
  CHECK(cuboid(Vec3::Zero(), 2).membership(Vec3(1, 0, 0)) == Approx(0.5));
}

TEST_CASE("min form equals max form for p = 1 components") {
  oracle::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    std::array<double, 3> core{}, left{}, right{};
    std::array<FuzzyNumber, 3> parts;
    for (std::size_t k = 0; k < 3; ++k) {
      core[k] = rng.uniform(-5, 5);
      left[k] = rng.uniform(0.1, 3);
      right[k] = rng.uniform(0.1, 3);
      parts[k] = FuzzyNumber::lr(core[k], left[k], right[k]);
    }
    const SpaceFuzzyPoint p(parts[0], parts[1], parts[2]);
    const Vec3 q(rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8));
    REQUIRE(std::abs(p.membership(q) - oracle::max_form_membership(core, left, right, q)) <= 1e-12);
  }
}

TEST_CASE("cuts are boxes") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto p = rng.point();
    const double a = rng.uniform(0, 1);
    const Box b = p.cut(a);
    for (int mask = 0; mask < 8; ++mask) {
      const Vec3 v((mask & 1) ? b.hi.x() : b.lo.x(), (mask & 2) ? b.hi.y() : b.lo.y(), (mask & 4) ? b.hi.z() : b.lo.z());
      CHECK(p.membership(v) == Approx(a).epsilon(1e-9));
    }
  }
}

TEST_CASE("translation") {
  const auto p = cuboid(Vec3::Zero(), 1);
  CHECK(translate(p, Vec3::UnitZ(), 0) == p);
  const auto q = translate(p, Vec3::UnitZ(), 2);
  CHECK(q.core() == Vec3(0, 0, 2));
  CHECK(q.z().left_spread() == 1.0);
  CHECK_THROWS_AS(translate(p, Vec3(1, 1, 0), 1), Error);

  oracle::Rng rng(7);
  const auto r = rng.point();
  const Vec3 dir = Vec3(1, 2, -2).normalized();
  const auto moved = translate(r, dir, 1.7);
  const auto back = translate(moved, dir, -1.7);
  for (int i = 0; i < 100; ++i) {
    const Vec3 v(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    CHECK(moved.membership(r.core() + 1.7 * dir + v) == Approx(r.membership(r.core() + v)).epsilon(1e-12));
    CHECK(back.membership(r.core() + v) == Approx(r.membership(r.core() + v)).epsilon(1e-12));
  }
}

TEST_CASE("perpendicular shift") {
  const auto p = cuboid(Vec3(0, 0, 5), 1);
  const auto s = perpendicular_shift(p, CrispPlane());
  CHECK(s.lambda == Approx(-5));
  CHECK(s.point.core().isApprox(Vec3::Zero()));

  const auto plane = CrispPlane::from_coefficients(1, 1, 1, -3);
  const auto t = perpendicular_shift(cuboid(Vec3(1, 1, -1), 1), plane);
  CHECK(std::abs(plane.signed_distance(t.point.core())) <= 1e-12);
  CHECK(t.point.core().isApprox(Vec3(5.0 / 3, 5.0 / 3, -1.0 / 3), 1e-12));
  CHECK(perpendicular_shift(t.point, plane).lambda == Approx(0).epsilon(1e-12));
  const auto on = perpendicular_shift(cuboid(Vec3(1, 1, 1), 1), plane);
  CHECK(on.lambda == 0.0);
}

TEST_CASE("support line segment") {
  const auto p = cuboid(Vec3::Zero(), 1);
  const auto seg = support_line_segment(p, Line3(Vec3::Zero(), Vec3::UnitX()));
  CHECK(seg.entry.isApprox(Vec3(-1, 0, 0)));
  CHECK(seg.exit.isApprox(Vec3(1, 0, 0)));
  const auto diag = support_line_segment(p, Line3(Vec3::Zero(), Vec3(1, 1, 1)));
  CHECK(diag.entry.isApprox(Vec3(-1, -1, -1)));
  CHECK(diag.exit.isApprox(Vec3(1, 1, 1)));
  CHECK_THROWS_AS(support_line_segment(p, Line3(Vec3(0, 5, 0), Vec3::UnitX())), Error);
  // Grazing an edge is a miss.
  CHECK_THROWS_AS(support_line_segment(p, Line3(Vec3(1, 1, 0), Vec3(1, -1, 0))), Error);

  oracle::Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto q = rng.point(2.0, 1.5);
    const Vec3 dir = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)).normalized();
    const Vec3 origin = q.cut(0.5).lo + 0.5 * (q.cut(0.5).hi - q.cut(0.5).lo);
    const Line3 line(origin, dir);
    const auto s = support_line_segment(q, line);
    const auto m = oracle::marched_segment(q.support(), origin, dir, 20.0, 1e-4);
    CHECK(std::abs(line.parameter_of(s.entry) - m.lo) <= 1e-4);
    CHECK(std::abs(line.parameter_of(s.exit) - m.hi) <= 1e-4);
  }
}

TEST_CASE("fuzzy number along a line") {
  const double s = 1.5;
  const auto p = cuboid(Vec3(1, 2, 3), s);
  const auto vert = fuzzy_number_along_line(p, Line3(p.core(), Vec3::UnitZ()));
  CHECK(vert == FuzzyNumber::triangular(-s, 0, s));

  const auto diag = fuzzy_number_along_line(p, Line3(p.core(), Vec3(1, 1, 1)));
  CHECK(diag.support().hi == Approx(s * std::sqrt(3.0)));
  for (double t : oracle::linspace(-3, 3, 61)) {
    const Vec3 q = p.core() + t * Vec3(1, 1, 1).normalized();
    CHECK(diag.membership(t) == Approx(p.membership(q)).epsilon(1e-9));
  }

  const SpaceFuzzyPoint plateau(FuzzyNumber::crisp(0), FuzzyNumber::crisp(0),
                                FuzzyNumber::lr(10, 10, 0, ReferenceFunction(2), ReferenceFunction(1), Plateau::kRight));
  const auto along = fuzzy_number_along_line(plateau, Line3(Vec3(0, 0, 10), Vec3::UnitZ()));
  CHECK(along.right_plateau());
  CHECK(along.left_spread() == Approx(10));
  CHECK(along.left_reference().exponent() == Approx(2));

  CHECK_THROWS_AS(fuzzy_number_along_line(p, Line3(Vec3::Zero(), Vec3::UnitZ())), Error);
}
