#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convqa/analyzers/scorers.hpp"
#include "convqa/core/types.hpp"

namespace convqa::analyzers {

struct CoherenceResult {
  std::vector<std::size_t> reply_turns;
  std::vector<double> p_next;
  std::vector<std::size_t> incoherent_turns;
  bool dialog_failed = false;
  // Set when no verdict can be given (no replies, scorer missing or down).
  std::optional<std::string> skip_reason;
};

// Applies the failure rule to precomputed scores.
CoherenceResult coherence_from_scores(std::span<const std::size_t> reply_turns,
                                      std::span<const double> p_next, double threshold);

// Context is every earlier turn, joined with newlines.
CoherenceResult dialog_coherence(const Dialog& dialog, const NspScorer* nsp, double threshold);
// Context is the preceding prompt only.
CoherenceResult reply_coherence(const Dialog& dialog, const NspScorer* nsp, double threshold);

}  // namespace convqa::analyzers
