#include "convqa/reporting/report.hpp"

#include <set>

namespace convqa::reporting {

ComparisonReport build_report(std::span<const Verdict> verdicts, const RequirementRegistry& registry) {
  ComparisonReport r;
  std::set<std::string> models;
  std::set<std::string> present;
  for (const auto& v : verdicts) {
    models.insert(v.model_id);
    present.insert(v.requirement_id);
  }
  r.model_ids.assign(models.begin(), models.end());
  for (const auto& entry : registry.entries()) {
    if (!present.contains(entry.id)) continue;
    RequirementGroup g{entry.id, entry.name, std::string(to_string(entry.structure)), {}};
    for (const auto& m : r.model_ids) {
      auto s = summarize(verdicts, entry.id, m);
      s.flags.unvalidated_metric = !entry.validated;
      g.per_model.push_back(std::move(s));
    }
    r.groups.push_back(std::move(g));
  }
  for (const auto& m : r.model_ids) {
    std::vector<Verdict> mine;
    for (const auto& v : verdicts) {
      if (v.model_id == m && (v.requirement_id == "A3" || v.requirement_id == "P2")) mine.push_back(v);
    }
    if (present.contains("A3")) r.nagging[m] = nag_statistics(mine);
    if (present.contains("P2")) r.toxicity[m] = toxicity_statistics(mine);
  }
  return r;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "md" || name == "markdown") return Format::markdown;
  if (name == "html") return Format::html;
  throw UnknownFormat("unknown report format '" + std::string(name) + "' (expected json, md or html)");
}

std::string render(const ComparisonReport& report, Format format) {
  switch (format) {
    case Format::json:
      return render_json(report);
    case Format::markdown:
      return render_markdown(report);
    case Format::html:
      return render_html(report);
  }
  throw UnknownFormat("unknown report format");
}

}  // namespace convqa::reporting
