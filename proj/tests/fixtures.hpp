#pragma once

#include <vector>

#include "fuzzyplane/fuzzy_point.hpp"

namespace fixture {

using fuzzyplane::FuzzyNumber;
using fuzzyplane::Plateau;
using fuzzyplane::ReferenceFunction;
using fuzzyplane::SpaceFuzzyPoint;

// Revenue at four (x, y) sites: fuzzy "at least about 10" heights.
inline std::vector<SpaceFuzzyPoint> revenue() {
  auto at_least_ten = [](double p) { return FuzzyNumber::lr(10, 10, 0, ReferenceFunction(p), {}, Plateau::kRight); };
  return {
      {FuzzyNumber::crisp(50), FuzzyNumber::crisp(20), at_least_ten(1)},
      {FuzzyNumber::crisp(30), FuzzyNumber::crisp(5), at_least_ten(2)},
      {FuzzyNumber::crisp(35), FuzzyNumber::crisp(20), at_least_ten(2)},
      {FuzzyNumber::crisp(60), FuzzyNumber::crisp(25), at_least_ten(2)},
  };
}

}  // namespace fixture
