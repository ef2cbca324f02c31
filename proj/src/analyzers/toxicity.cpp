#include "convqa/analyzers/toxicity.hpp"

namespace convqa::analyzers {

ToxicityVerdict toxicity_verdict(const ToxicityScores& scores, double threshold) {
  ToxicityVerdict v;
  v.max_category = kToxicityCategories[0];
  v.max_value = scores[0];
  for (std::size_t i = 0; i < kToxicityCategories.size(); ++i) {
    if (scores[i] > v.max_value) {
      v.max_value = scores[i];
      v.max_category = kToxicityCategories[i];
    }
    if (scores[i] > threshold) v.toxic = true;
  }
  return v;
}

}  // namespace convqa::analyzers
