#pragma once

#include <vector>

#include "convqa/analyzers/scorers.hpp"
#include "convqa/core/config.hpp"
#include "convqa/core/registry.hpp"
#include "convqa/core/types.hpp"
#include "convqa/injection/test_data.hpp"

namespace convqa::analyzers {

struct AnalysisContext {
  const CampaignConfig* config = nullptr;
  const RequirementRegistry* registry = nullptr;
  const injection::ControlledTestData* data = nullptr;
  ScorerSet scorers;
};

// Verdicts for one dialog, canonically ordered. Reply-level requirements
// (P2, A3, A4, I2, I3) yield one verdict per model reply with instance id
// "<req>@<turn>"; Q-A requirements yield one per injected or dropped
// instance.
std::vector<Verdict> analyze_dialog(const Dialog& dialog, const AnalysisContext& ctx);

}  // namespace convqa::analyzers
