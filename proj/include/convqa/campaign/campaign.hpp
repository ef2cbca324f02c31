#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convqa/analyzers/dialog_analysis.hpp"
#include "convqa/analyzers/scorers.hpp"
#include "convqa/core/config.hpp"
#include "convqa/core/registry.hpp"
#include "convqa/core/types.hpp"
#include "convqa/injection/test_data.hpp"

namespace convqa::campaign {

// Everything a campaign needs beyond the config itself, resolved once.
struct CampaignInputs {
  CampaignConfig config;
  RequirementRegistry registry;
  injection::ControlledTestData data;
  injection::SynonymLexicon synonyms;
  analyzers::ToxicityLexicon toxicity_lexicon;
};

// Loads data files named in config.data, falling back to the bundled copies,
// and restricts the registry to config.enabled_requirements.
CampaignInputs load_inputs(const CampaignConfig& config);

std::string dialog_id_for(std::size_t index);
std::uint64_t dialog_seed_for(std::uint64_t campaign_seed, std::size_t index);

// Runs the dual-model loop for one dialog. Model or generator failures end the
// dialog early and are recorded in Dialog::error.
Dialog generate_dialog(const CampaignInputs& inputs, std::size_t index);

// workers <= 0 means one per logical core. `sink` sees dialogs in index order
// as soon as each prefix is complete, from one thread at a time.
std::vector<Dialog> run_campaign(const CampaignInputs& inputs, int workers = 0,
                                 const std::function<void(const Dialog&)>& sink = {});
std::vector<Dialog> run_campaign_serial(const CampaignInputs& inputs);

analyzers::AnalysisContext make_analysis_context(const CampaignInputs& inputs);

// Verdicts over all dialogs in canonical order.
std::vector<Verdict> analyze(std::span<const Dialog> dialogs, const analyzers::AnalysisContext& ctx,
                             int workers = 0);
std::vector<Verdict> analyze_serial(std::span<const Dialog> dialogs, const analyzers::AnalysisContext& ctx);

struct SweepPoint {
  double fraction = 0.0;
  std::vector<Dialog> dialogs;
  std::vector<Verdict> verdicts;
};

struct SeriesPoint {
  double fraction = 0.0;
  std::size_t passed = 0;
  std::size_t evaluated = 0;
  // passed / evaluated, empty when nothing was evaluated.
  std::optional<double> success_rate;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  // Requirement id -> one point per fraction, for the enabled U3-U6 tests.
  std::map<std::string, std::vector<SeriesPoint>> series;
};

// Reruns the campaign with f_char = f_word = fraction for each fraction, all
// with the same campaign seed. Throws ConfigError for an empty list, a
// fraction outside [0,1] or when no U3-U6 test is enabled.
SweepResult sweep_noise(const CampaignInputs& inputs, std::span<const double> fractions, int workers = 0);

int resolve_workers(int workers);

}  // namespace convqa::campaign
