#include <algorithm>

#include "convqa/campaign/campaign.hpp"

namespace convqa::campaign {

SweepResult sweep_noise(const CampaignInputs& inputs, std::span<const double> fractions, int workers) {
  std::vector<ConfigIssue> issues;
  if (fractions.empty()) issues.push_back({ConfigIssue::Kind::missing, "noise_sweep", "needs at least one fraction"});
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      issues.push_back({ConfigIssue::Kind::range, "noise_sweep", "fractions must lie in [0,1]"});
      break;
    }
  }
  std::vector<std::string> noisy;
  for (const char* id : {"U3", "U4", "U5", "U6"}) {
    if (inputs.registry.is_enabled(id)) noisy.emplace_back(id);
  }
  if (noisy.empty()) issues.push_back({ConfigIssue::Kind::conflict, "requirements", "sweep needs one of U3-U6 enabled"});
  if (!issues.empty()) throw ConfigError(std::move(issues));

  SweepResult result;
  for (double f : fractions) {
    CampaignInputs in = inputs;
    in.config.f_char = f;
    in.config.f_word = f;
    SweepPoint point;
    point.fraction = f;
    point.dialogs = run_campaign(in, workers);
    const auto ctx = make_analysis_context(in);
    point.verdicts = analyze(point.dialogs, ctx, workers);
    for (const auto& id : noisy) {
      SeriesPoint s;
      s.fraction = f;
      for (const auto& v : point.verdicts) {
        if (v.requirement_id != id || v.outcome == Outcome::skip) continue;
        ++s.evaluated;
        s.passed += v.outcome == Outcome::pass ? 1 : 0;
      }
      if (s.evaluated > 0) s.success_rate = static_cast<double>(s.passed) / static_cast<double>(s.evaluated);
      result.series[id].push_back(s);
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

}  // namespace convqa::campaign
