#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/analyzers/scorers.hpp"
#include "convqa/injection/test_data.hpp"

namespace convqa::analyzers {

struct OpenAssessment {
  bool passed = false;
  std::string extracted;
  double confidence = 0.0;
  // "no-answer" when extraction failed, else "match" or "mismatch".
  std::string reason;
};

// Strict mode: a match value's token run must occur inside the extracted
// span. Lenient mode skips extraction and searches the whole reply.
OpenAssessment assess_open(std::string_view question, std::string_view reply,
                           std::span<const std::string> match_values, const QaScorer& qa,
                           double min_confidence, bool lenient = false);

// "no" iff the reply's first sentence holds a no_list phrase as a token run.
injection::Polarity assess_closed(std::string_view reply, std::span<const std::string> no_list);

struct ConsistencyResult {
  bool passed = false;
  double similarity = 0.0;
};

// Jaccard similarity of the token sets against `threshold`.
ConsistencyResult self_consistency(std::string_view answer_1, std::string_view answer_2,
                                   double threshold = 0.5);

}  // namespace convqa::analyzers
