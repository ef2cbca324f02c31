#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "convqa/reporting/report.hpp"
#include "json.hpp"

namespace convqa::reporting {
namespace {

using nlohmann::json;

constexpr std::string_view kMethods =
    "Percentiles are nearest-rank, std is the population standard deviation and medians are lower "
    "medians, all over per-dialog failure counts of failing dialogs. Skipped verdicts are excluded. "
    "The stuttering score is defined by this harness and is not comparable to other tools.";

double round6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : "n/a"; }

json num(const std::optional<double>& x) { return x ? json(round6(*x)) : json(nullptr); }

json to_json(const Histogram& h) {
  json edges = json::array();
  for (double e : h.bin_edges) edges.push_back(round6(e));
  return json{{"bin_edges", edges}, {"counts", h.counts}};
}

json to_json(const MetricSummary& s) {
  return json{{"requirement_id", s.requirement_id},
              {"model_id", s.model_id},
              {"dialogs_evaluated", s.dialogs_evaluated},
              {"dialogs_failed", s.dialogs_failed},
              {"failed_fraction", round6(s.failed_fraction)},
              {"failures_p75", num(s.failures_p75)},
              {"failures_std", num(s.failures_std)},
              {"failures_median", num(s.failures_median)},
              {"scored_verdicts", s.scored_verdicts},
              {"score_histogram", to_json(s.score_histogram)},
              {"flags", {{"unvalidated_metric", s.flags.unvalidated_metric},
                         {"harness_defined", s.flags.harness_defined}}}};
}

struct Row {
  std::string label;
  std::vector<std::string> cells;
};

std::vector<Row> summary_rows(const RequirementGroup& g, const ComparisonReport& r) {
  std::vector<Row> rows = {{"dialogs evaluated", {}}, {"dialogs failed", {}}, {"failed fraction", {}},
                           {"failures p75", {}},      {"failures std", {}},   {"failures median", {}}};
  for (const auto& s : g.per_model) {
    rows[0].cells.push_back(std::to_string(s.dialogs_evaluated));
    rows[1].cells.push_back(std::to_string(s.dialogs_failed) + "/" + std::to_string(s.dialogs_evaluated));
    rows[2].cells.push_back(fmt(s.failed_fraction));
    rows[3].cells.push_back(fmt(s.failures_p75));
    rows[4].cells.push_back(fmt(s.failures_std));
    rows[5].cells.push_back(fmt(s.failures_median));
  }
  if (g.requirement_id == "A3") {
    Row frac{"nagging dialog fraction", {}}, total{"total nags", {}}, med{"median nags (nagging dialogs)", {}};
    for (const auto& m : r.model_ids) {
      const auto& n = r.nagging.at(m);
      frac.cells.push_back(fmt(n.nagging_dialog_fraction));
      total.cells.push_back(std::to_string(n.total_nags));
      med.cells.push_back(fmt(n.median_nags_among_nagging));
    }
    rows.insert(rows.end(), {frac, total, med});
  }
  if (g.requirement_id == "P2") {
    Row frac{"toxic reply fraction", {}}, p75{"p75 max category score", {}}, sd{"std max category score", {}};
    for (const auto& m : r.model_ids) {
      const auto& t = r.toxicity.at(m);
      frac.cells.push_back(std::to_string(t.toxic_replies) + "/" + std::to_string(t.replies) + " (" +
                           fmt(t.toxic_fraction) + ")");
      p75.cells.push_back(fmt(t.p75_max_category_score));
      sd.cells.push_back(fmt(t.std_max_category_score));
    }
    rows.insert(rows.end(), {frac, p75, sd});
  }
  return rows;
}

std::string sparkline(const Histogram& h) {
  static const char* kBars[] = {"▁", "▂", "▃", "▄", "▅", "▆", "▇", "█"};
  std::size_t top = 0;
  for (auto c : h.counts) top = std::max(top, c);
  std::string out;
  for (auto c : h.counts) {
    if (c == 0) {
      out += " ";
      continue;
    }
    out += kBars[top ? (c * 7) / top : 0];
  }
  return out;
}

std::string escape_html(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string svg_histogram(const Histogram& h) {
  constexpr int kW = 300, kH = 80;
  std::size_t top = 0;
  for (auto c : h.counts) top = std::max(top, c);
  std::ostringstream o;
  o << "<svg width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">";
  const double bw = static_cast<double>(kW) / static_cast<double>(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    if (!h.counts[b]) continue;
    const double height = top ? static_cast<double>(h.counts[b]) * (kH - 2) / static_cast<double>(top) : 0.0;
    o << "<rect x=\"" << fmt(bw * static_cast<double>(b)) << "\" y=\"" << fmt(kH - height) << "\" width=\""
      << fmt(bw - 1) << "\" height=\"" << fmt(height) << "\"><title>[" << fmt(h.bin_edges[b]) << ", "
      << fmt(h.bin_edges[b + 1]) << "): " << h.counts[b] << "</title></rect>";
  }
  o << "</svg>";
  return o.str();
}

}  // namespace

std::string render_json(const ComparisonReport& r) {
  json reqs = json::array();
  for (const auto& g : r.groups) {
    json per = json::object();
    for (const auto& s : g.per_model) per[s.model_id] = to_json(s);
    reqs.push_back(json{{"id", g.requirement_id}, {"name", g.name}, {"structure", g.structure}, {"models", per}});
  }
  json nag = json::object();
  for (const auto& [m, n] : r.nagging) {
    nag[m] = json{{"dialogs_evaluated", n.dialogs_evaluated},
                  {"nagging_dialogs", n.nagging_dialogs},
                  {"nagging_dialog_fraction", round6(n.nagging_dialog_fraction)},
                  {"total_nags", n.total_nags},
                  {"median_nags_among_nagging", num(n.median_nags_among_nagging)}};
  }
  json tox = json::object();
  for (const auto& [m, t] : r.toxicity) {
    tox[m] = json{{"replies", t.replies},
                  {"toxic_replies", t.toxic_replies},
                  {"toxic_fraction", round6(t.toxic_fraction)},
                  {"p75_max_category_score", round6(t.p75_max_category_score)},
                  {"std_max_category_score", round6(t.std_max_category_score)}};
  }
  json doc{{"models", r.model_ids},
           {"requirements", reqs},
           {"nagging", nag},
           {"toxicity", tox},
           {"methods", std::string(kMethods)}};
  return doc.dump(2) + "\n";
}

std::string render_markdown(const ComparisonReport& r) {
  std::ostringstream o;
  o << "# Dialog model test report\n\n";
  o << "Models: ";
  for (std::size_t i = 0; i < r.model_ids.size(); ++i) o << (i ? ", " : "") << "`" << r.model_ids[i] << "`";
  o << "\n";
  for (const auto& g : r.groups) {
    o << "\n## " << g.requirement_id << " " << g.name << " (" << g.structure << ")\n\n";
    if (!g.per_model.empty() && g.per_model.front().flags.unvalidated_metric) {
      o << "> **Unvalidated metric.** This score did not hold up against human judgement; read it with care.\n\n";
    }
    if (!g.per_model.empty() && g.per_model.front().flags.harness_defined) {
      o << "> Harness-defined metric.\n\n";
    }
    o << "| metric |";
    for (const auto& m : r.model_ids) o << " " << m << " |";
    o << "\n|---|";
    for (std::size_t i = 0; i < r.model_ids.size(); ++i) o << "---|";
    o << "\n";
    for (const auto& row : summary_rows(g, r)) {
      o << "| " << row.label << " |";
      for (const auto& c : row.cells) o << " " << c << " |";
      o << "\n";
    }
    o << "\nScore histograms (30 bins):\n\n```\n";
    for (const auto& s : g.per_model) {
      o << s.model_id << " [0, " << fmt(s.score_histogram.bin_edges.back()) << "] |"
        << sparkline(s.score_histogram) << "| n=" << s.scored_verdicts << "\n";
    }
    o << "```\n";
  }
  o << "\n---\n\n" << kMethods << "\n";
  return o.str();
}

std::string render_html(const ComparisonReport& r) {
  std::ostringstream o;
  o << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Dialog model test report</title>\n"
    << "<style>body{font-family:sans-serif;margin:2em}table{border-collapse:collapse}"
       "td,th{border:1px solid #999;padding:3px 8px;text-align:right}th:first-child,td:first-child{text-align:left}"
       ".warn{background:#fde2a7;padding:4px 8px}rect{fill:#4a7ab5}</style></head><body>\n"
    << "<h1>Dialog model test report</h1>\n<p>Models:";
  for (const auto& m : r.model_ids) o << " <code>" << escape_html(m) << "</code>";
  o << "</p>\n";
  for (const auto& g : r.groups) {
    o << "<h2>" << escape_html(g.requirement_id + " " + g.name) << " (" << g.structure << ")</h2>\n";
    if (!g.per_model.empty() && g.per_model.front().flags.unvalidated_metric) {
      o << "<p class=\"warn\"><strong>Unvalidated metric.</strong> This score did not hold up against human "
           "judgement; read it with care.</p>\n";
    }
    if (!g.per_model.empty() && g.per_model.front().flags.harness_defined) {
      o << "<p class=\"warn\">Harness-defined metric.</p>\n";
    }
    o << "<table><tr><th>metric</th>";
    for (const auto& m : r.model_ids) o << "<th>" << escape_html(m) << "</th>";
    o << "</tr>\n";
    for (const auto& row : summary_rows(g, r)) {
      o << "<tr><td>" << escape_html(row.label) << "</td>";
      for (const auto& c : row.cells) o << "<td>" << escape_html(c) << "</td>";
      o << "</tr>\n";
    }
    o << "<tr><td>score histogram</td>";
    for (const auto& s : g.per_model) o << "<td>" << svg_histogram(s.score_histogram) << "</td>";
    o << "</tr></table>\n";
  }
  o << "<hr><p>" << escape_html(kMethods) << "</p>\n</body></html>\n";
  return o.str();
}

}  // namespace convqa::reporting
