#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/registry.hpp"
#include "convqa/reporting/statistics.hpp"

namespace convqa::reporting {

struct RequirementGroup {
  std::string requirement_id;
  std::string name;
  std::string structure;
  // One summary per model, ordered like ComparisonReport::model_ids.
  std::vector<MetricSummary> per_model;
};

struct ComparisonReport {
  // Sorted.
  std::vector<std::string> model_ids;
  // Registry order, only requirements with at least one verdict.
  std::vector<RequirementGroup> groups;
  std::map<std::string, NagStatistics> nagging;
  std::map<std::string, ToxicityStatistics> toxicity;
};

ComparisonReport build_report(std::span<const Verdict> verdicts, const RequirementRegistry& registry);

enum class Format { json, markdown, html };

class UnknownFormat : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts "json", "md"/"markdown", "html".
Format parse_format(std::string_view name);

// Canonical JSON: sorted keys, floats rounded to 6 significant digits.
std::string render_json(const ComparisonReport& report);
std::string render_markdown(const ComparisonReport& report);
std::string render_html(const ComparisonReport& report);
std::string render(const ComparisonReport& report, Format format);

}  // namespace convqa::reporting
