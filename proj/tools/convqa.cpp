#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "convqa/campaign/campaign.hpp"
#include "convqa/core/json_io.hpp"
#include "convqa/reporting/report.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace convqa;

namespace {

// Bad input from the user that CLI11 cannot see (exit 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CampaignConfig load(const std::string& path) {
  auto cfg = load_config_file(path, env_overrides_from_environment());
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  return cfg;
}

void write_report_files(const fs::path& dir, const reporting::ComparisonReport& report) {
  write_file(dir / "report.json", reporting::render_json(report));
  write_file(dir / "report.md", reporting::render_markdown(report));
  write_file(dir / "report.html", reporting::render_html(report));
}

// Streams dialogs to `path` as the runner completes them, then renames into
// place.
std::vector<Dialog> generate_to(const campaign::CampaignInputs& in, const fs::path& path, int workers) {
  const fs::path tmp = path.string() + ".partial";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + tmp.string());
  std::size_t errors = 0;
  auto dialogs = campaign::run_campaign(in, workers, [&](const Dialog& d) {
    out << to_line(d) << '\n';
    if (d.error) ++errors;
  });
  out.close();
  if (!out) throw std::runtime_error("failed writing " + tmp.string());
  fs::rename(tmp, path);
  std::cerr << "generated " << dialogs.size() << " dialogs (" << errors << " with errors) -> " << path.string()
            << "\n";
  return dialogs;
}

std::vector<Verdict> analyze_to(const campaign::CampaignInputs& in, std::span<const Dialog> dialogs,
                                const fs::path& path, int workers) {
  const auto ctx = campaign::make_analysis_context(in);
  auto verdicts = campaign::analyze(dialogs, ctx, workers);
  write_file(path, serialize_verdicts(verdicts));
  std::cerr << "wrote " << verdicts.size() << " verdicts -> " << path.string() << "\n";
  return verdicts;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad fraction '" + item + "'");
    }
  }
  return out;
}

std::string fraction_tag(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", f);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soak-testing harness for generative dialog models"};
  app.require_subcommand(1);
  int workers = 0;
  app.add_option("--workers", workers, "Worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);

  std::string config_path, out_path, transcripts_path, out_dir, format = "html", fractions_text;
  std::vector<std::string> verdict_paths;

  auto* gen = app.add_subcommand("generate", "Run the generation phase and write transcripts");
  gen->add_option("--config", config_path, "Campaign config (TOML)")->required();
  gen->add_option("--out", out_path, "Transcript file (JSON lines)")->required();

  auto* ana = app.add_subcommand("analyze", "Analyze recorded transcripts");
  ana->add_option("--transcripts", transcripts_path, "Transcript file")->required();
  ana->add_option("--config", config_path, "Campaign config (TOML)")->required();
  ana->add_option("--out", out_path, "Verdict file (JSON lines)")->required();

  auto* rep = app.add_subcommand("report", "Aggregate verdict files into a report");
  rep->add_option("--verdicts", verdict_paths, "Verdict file; repeat to compare models")->required();
  rep->add_option("--format", format, "html, json or md")->check(CLI::IsMember({"html", "json", "md", "markdown"}));
  rep->add_option("--out", out_path, "Report file")->required();

  auto* run = app.add_subcommand("run", "generate, analyze and report in one go");
  run->add_option("--config", config_path, "Campaign config (TOML)")->required();
  run->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Noise sweep over U3-U6 with paired seeds");
  sweep->add_option("--config", config_path, "Campaign config (TOML)")->required();
  sweep->add_option("--fractions", fractions_text, "Comma-separated noise fractions (default: noise_sweep)");
  sweep->add_option("--out-dir", out_dir, "Output directory")->required();

  for (auto* sub : {gen, ana, rep, run, sweep}) {
    sub->add_option("--workers", workers, "Worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const auto in = campaign::load_inputs(load(config_path));
      generate_to(in, out_path, workers);
    } else if (ana->parsed()) {
      const auto in = campaign::load_inputs(load(config_path));
      const auto dialogs = parse_transcripts(read_file(transcripts_path));
      analyze_to(in, dialogs, out_path, workers);
    } else if (rep->parsed()) {
      std::vector<Verdict> all;
      std::set<std::string> seen;
      for (const auto& p : verdict_paths) {
        auto vs = parse_verdicts(read_file(p));
        std::set<std::string> mine;
        for (const auto& v : vs) mine.insert(v.model_id);
        for (const auto& m : mine) {
          if (!seen.insert(m).second) throw UsageError("model_id '" + m + "' appears in more than one verdict file");
        }
        all.insert(all.end(), vs.begin(), vs.end());
      }
      sort_canonical(all);
      const auto report = reporting::build_report(all, registry_defaults());
      write_file(out_path, reporting::render(report, reporting::parse_format(format)));
      std::cerr << "report for " << report.model_ids.size() << " model(s) -> " << out_path << "\n";
    } else if (run->parsed()) {
      const auto in = campaign::load_inputs(load(config_path));
      fs::create_directories(out_dir);
      const auto dialogs = generate_to(in, fs::path(out_dir) / "transcripts.jsonl", workers);
      const auto verdicts = analyze_to(in, dialogs, fs::path(out_dir) / "verdicts.jsonl", workers);
      write_report_files(out_dir, reporting::build_report(verdicts, registry_defaults()));
      std::cerr << "reports -> " << out_dir << "\n";
    } else if (sweep->parsed()) {
      const auto cfg = load(config_path);
      const auto fractions = fractions_text.empty() ? cfg.noise_sweep : parse_fractions(fractions_text);
      const auto in = campaign::load_inputs(cfg);
      fs::create_directories(out_dir);
      const auto result = campaign::sweep_noise(in, fractions, workers);
      nlohmann::json series = nlohmann::json::object();
      for (const auto& [id, points] : result.series) {
        for (const auto& p : points) {
          series[id].push_back({{"fraction", p.fraction},
                                {"passed", p.passed},
                                {"evaluated", p.evaluated},
                                {"success_rate", p.success_rate ? nlohmann::json(*p.success_rate) : nlohmann::json()}});
        }
      }
      for (const auto& p : result.points) {
        const std::string tag = fraction_tag(p.fraction);
        write_file(fs::path(out_dir) / ("transcripts-" + tag + ".jsonl"), serialize_transcripts(p.dialogs));
        write_file(fs::path(out_dir) / ("verdicts-" + tag + ".jsonl"), serialize_verdicts(p.verdicts));
      }
      write_file(fs::path(out_dir) / "sweep.json", series.dump(2) + "\n");
      std::cerr << "sweep over " << fractions.size() << " fraction(s) -> " << out_dir << "\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const reporting::UnknownFormat& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
