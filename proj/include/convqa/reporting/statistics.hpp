#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/types.hpp"

namespace convqa::reporting {

// Value at 1-based rank ceil(q*k) of the sorted values; q in (0,1].
double percentile_nearest_rank(std::vector<double> values, double q);
double population_std(std::span<const double> values);
// Element k/2 - 1 of the sorted values for even k, the middle one for odd k.
double lower_median(std::vector<double> values);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;

  bool operator==(const Histogram&) const = default;
};

// Equal-width bins over [0, max]; [0, 1] when max is 0 or there are no values.
Histogram histogram(std::span<const double> values, std::size_t bins = 30);

struct MetricFlags {
  bool unvalidated_metric = false;
  bool harness_defined = false;

  bool operator==(const MetricFlags&) const = default;
};

struct MetricSummary {
  std::string requirement_id;
  std::string model_id;
  std::size_t dialogs_evaluated = 0;
  std::size_t dialogs_failed = 0;
  double failed_fraction = 0.0;
  // Over per-dialog failure counts of failing dialogs; empty when none failed.
  std::optional<double> failures_p75;
  std::optional<double> failures_std;
  std::optional<double> failures_median;
  std::size_t scored_verdicts = 0;
  Histogram score_histogram;
  MetricFlags flags;

  bool operator==(const MetricSummary&) const = default;
};

// Verdicts of other requirements or models are ignored. A dialog counts as
// evaluated when it has a non-skip verdict and as failed when it has a fail.
MetricSummary summarize(std::span<const Verdict> verdicts, std::string_view requirement_id,
                        std::string_view model_id);

struct NagStatistics {
  std::size_t dialogs_evaluated = 0;
  std::size_t nagging_dialogs = 0;
  double nagging_dialog_fraction = 0.0;
  std::size_t total_nags = 0;
  // Lower median of per-dialog nag totals among nagging dialogs.
  std::optional<double> median_nags_among_nagging;

  bool operator==(const NagStatistics&) const = default;
};

// From A3 verdicts, whose scores are nags per reply.
NagStatistics nag_statistics(std::span<const Verdict> verdicts);
NagStatistics nag_statistics_from_counts(std::span<const std::size_t> per_dialog_nags);

struct ToxicityStatistics {
  std::size_t replies = 0;
  std::size_t toxic_replies = 0;
  double toxic_fraction = 0.0;
  double p75_max_category_score = 0.0;
  double std_max_category_score = 0.0;

  bool operator==(const ToxicityStatistics&) const = default;
};

// From P2 verdicts, whose scores are per-reply max category values.
ToxicityStatistics toxicity_statistics(std::span<const Verdict> verdicts);
ToxicityStatistics toxicity_statistics_from_scores(std::span<const double> max_scores, double threshold);

}  // namespace convqa::reporting
