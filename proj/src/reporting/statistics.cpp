#include "convqa/reporting/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace convqa::reporting {
namespace {

struct DialogTally {
  bool evaluated = false;
  std::size_t failures = 0;
  double score_sum = 0.0;
};

}  // namespace

double percentile_nearest_rank(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty list");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("percentile rank must lie in (0,1]");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

double lower_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  double hi = 0.0;
  for (double v : values) hi = std::max(hi, v);
  if (hi <= 0.0) hi = 1.0;
  Histogram h;
  h.counts.assign(bins, 0);
  for (std::size_t b = 0; b <= bins; ++b) h.bin_edges.push_back(hi * static_cast<double>(b) / static_cast<double>(bins));
  for (double v : values) {
    auto b = static_cast<std::ptrdiff_t>(std::floor(v / hi * static_cast<double>(bins)));
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

MetricSummary summarize(std::span<const Verdict> verdicts, std::string_view requirement_id,
                        std::string_view model_id) {
  MetricSummary s;
  s.requirement_id = requirement_id;
  s.model_id = model_id;
  s.flags.unvalidated_metric = requirement_id == "I3";
  s.flags.harness_defined = requirement_id == "A4";
  std::map<std::string_view, DialogTally> dialogs;
  std::vector<double> scores;
  for (const auto& v : verdicts) {
    if (v.requirement_id != requirement_id || v.model_id != model_id) continue;
    auto& d = dialogs[v.dialog_id];
    if (v.outcome == Outcome::skip) continue;
    d.evaluated = true;
    if (v.outcome == Outcome::fail) ++d.failures;
    if (v.score) scores.push_back(*v.score);
  }
  std::vector<double> failing;
  for (const auto& [id, d] : dialogs) {
    if (!d.evaluated) continue;
    ++s.dialogs_evaluated;
    if (d.failures > 0) {
      ++s.dialogs_failed;
      failing.push_back(static_cast<double>(d.failures));
    }
  }
  if (s.dialogs_evaluated > 0) {
    s.failed_fraction = static_cast<double>(s.dialogs_failed) / static_cast<double>(s.dialogs_evaluated);
  }
  if (!failing.empty()) {
    s.failures_p75 = percentile_nearest_rank(failing, 0.75);
    s.failures_std = population_std(failing);
    s.failures_median = lower_median(failing);
  }
  s.scored_verdicts = scores.size();
  s.score_histogram = histogram(scores);
  return s;
}

NagStatistics nag_statistics_from_counts(std::span<const std::size_t> per_dialog_nags) {
  NagStatistics n;
  n.dialogs_evaluated = per_dialog_nags.size();
  std::vector<double> nagging;
  for (std::size_t c : per_dialog_nags) {
    n.total_nags += c;
    if (c > 0) nagging.push_back(static_cast<double>(c));
  }
  n.nagging_dialogs = nagging.size();
  if (n.dialogs_evaluated > 0) {
    n.nagging_dialog_fraction = static_cast<double>(n.nagging_dialogs) / static_cast<double>(n.dialogs_evaluated);
  }
  if (!nagging.empty()) n.median_nags_among_nagging = lower_median(nagging);
  return n;
}

NagStatistics nag_statistics(std::span<const Verdict> verdicts) {
  std::map<std::string_view, DialogTally> dialogs;
  for (const auto& v : verdicts) {
    if (v.requirement_id != "A3" || v.outcome == Outcome::skip) continue;
    auto& d = dialogs[v.dialog_id];
    d.evaluated = true;
    d.score_sum += v.score.value_or(0.0);
  }
  std::vector<std::size_t> counts;
  for (const auto& [id, d] : dialogs) counts.push_back(static_cast<std::size_t>(std::llround(d.score_sum)));
  return nag_statistics_from_counts(counts);
}

ToxicityStatistics toxicity_statistics_from_scores(std::span<const double> max_scores, double threshold) {
  ToxicityStatistics t;
  t.replies = max_scores.size();
  for (double s : max_scores) t.toxic_replies += s > threshold ? 1 : 0;
  if (t.replies == 0) return t;
  t.toxic_fraction = static_cast<double>(t.toxic_replies) / static_cast<double>(t.replies);
  t.p75_max_category_score = percentile_nearest_rank({max_scores.begin(), max_scores.end()}, 0.75);
  t.std_max_category_score = population_std(max_scores);
  return t;
}

ToxicityStatistics toxicity_statistics(std::span<const Verdict> verdicts) {
  ToxicityStatistics t;
  std::vector<double> scores;
  for (const auto& v : verdicts) {
    if (v.requirement_id != "P2" || v.outcome == Outcome::skip) continue;
    ++t.replies;
    t.toxic_replies += v.outcome == Outcome::fail ? 1 : 0;
    scores.push_back(v.score.value_or(0.0));
  }
  if (t.replies == 0) return t;
  t.toxic_fraction = static_cast<double>(t.toxic_replies) / static_cast<double>(t.replies);
  t.p75_max_category_score = percentile_nearest_rank(scores, 0.75);
  t.std_max_category_score = population_std(scores);
  return t;
}

}  // namespace convqa::reporting
