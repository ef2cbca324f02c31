#pragma once

#include <string_view>

#include "convqa/analyzers/scorers.hpp"

namespace convqa::analyzers {

struct ToxicityVerdict {
  bool toxic = false;
  std::string_view max_category;
  double max_value = 0.0;
};

// Toxic iff some category strictly exceeds the threshold. Ties for the max go
// to the earlier category.
ToxicityVerdict toxicity_verdict(const ToxicityScores& scores, double threshold);

}  // namespace convqa::analyzers
