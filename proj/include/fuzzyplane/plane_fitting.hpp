#pragma once

#include <span>
#include <vector>

#include "fuzzyplane/fuzzy_plane.hpp"
#include "fuzzyplane/fuzzy_point.hpp"

namespace fuzzyplane {

enum class FitMode {
  kPerpendicular,  ///< total least squares
  kVertical,       ///< least squares on z = a x + b y + c
};

struct FitConfig {
  FitMode mode = FitMode::kPerpendicular;
  int alpha_steps = AlphaGrid::kDefaultSteps;
  double tolerance = 1e-10;
};

struct LevelResidual {
  double alpha = 0.0;
  double sse_lower = 0.0;
  double sse_upper = 0.0;
};

struct FittedFuzzyPlane {
  FuzzyPlane plane;
  std::vector<LevelResidual> residuals;
  FitConfig config;
  /// Input points moved onto the core plane, in input order.
  std::vector<SpaceFuzzyPoint> shifted_points;
  /// Restriction of each shifted point to the core-normal line through its
  /// core, in arc length from that core.
  std::vector<FuzzyNumber> normal_fuzzy_numbers;
};

/// Plane through at least 3 points. The result does not depend on point order.
CrispPlane fit_crisp_plane(std::span<const Vec3> points, FitMode mode);

FittedFuzzyPlane fit_fuzzy_plane(std::span<const SpaceFuzzyPoint> points, const FitConfig& config = {});

double sse_perpendicular(std::span<const Vec3> points, const CrispPlane& plane);

/// Degree to which a fuzzy point sits in the fuzzy plane: 0 when its core is off
/// the core plane, 1 when its support lies in the alpha = 0 sandwich, otherwise
/// the highest membership it reaches on the boundary planes it crosses.
double containment(const SpaceFuzzyPoint& point, const FuzzyPlane& plane);
double containment(const SpaceFuzzyPoint& point, const FittedFuzzyPlane& fitted);

/// Smallest containment over the points.
double degree_of_fit(std::span<const SpaceFuzzyPoint> points, const FuzzyPlane& plane);
double degree_of_fit(std::span<const SpaceFuzzyPoint> points, const FittedFuzzyPlane& fitted);

}  // namespace fuzzyplane
