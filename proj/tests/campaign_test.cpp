#include <gtest/gtest.h>

#include <map>
#include <set>

#include "convqa/campaign/campaign.hpp"
#include "convqa/core/json_io.hpp"
#include "local_server.hpp"
#include "support.hpp"

using namespace convqa;
using namespace convqa::campaign;
using convqa::testing::offline_config;

namespace {

CampaignInputs parrot_inputs(int dialogs, int prompts, std::string_view extra_top = "", std::string_view tables = "") {
  const std::string top = "n_dialogs = " + std::to_string(dialogs) + "\nprompts_per_dialog = " +
                          std::to_string(prompts) + "\ncampaign_seed = 21\ninjection_probability = 0.3\n" +
                          std::string(extra_top);
  return load_inputs(offline_config("kind = \"parrot\"\nseed = 2", top, tables));
}

}  // namespace

TEST(Campaign, DeterministicTranscripts) {
  const auto in = parrot_inputs(12, 20);
  const auto a = serialize_transcripts(run_campaign(in, 1));
  const auto b = serialize_transcripts(run_campaign(in, 1));
  EXPECT_EQ(a, b);
  auto other = in;
  other.config.campaign_seed = 22;
  EXPECT_NE(serialize_transcripts(run_campaign(other, 1)), a);
}

TEST(Campaign, WorkerCountDoesNotMatter) {
  const auto in = parrot_inputs(16, 12);
  const auto serial = run_campaign_serial(in);
  for (int workers : {1, 2, 4}) {
    std::vector<std::string> order;
    const auto par = run_campaign(in, workers, [&](const Dialog& d) { order.push_back(d.dialog_id); });
    EXPECT_EQ(par, serial) << workers;
    ASSERT_EQ(order.size(), 16u);
    EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
  }
  const auto ctx = make_analysis_context(in);
  const auto v1 = analyze_serial(serial, ctx);
  for (int workers : {1, 3}) EXPECT_EQ(analyze(serial, ctx, workers), v1);
}

TEST(Campaign, DialogShape) {
  const auto in = parrot_inputs(10, 15);
  const auto dialogs = run_campaign(in, 2);
  ASSERT_EQ(dialogs.size(), 10u);
  for (std::size_t i = 0; i < dialogs.size(); ++i) {
    const auto& d = dialogs[i];
    EXPECT_EQ(d.dialog_id, dialog_id_for(i));
    EXPECT_EQ(d.seed, dialog_seed_for(21, i));
    EXPECT_EQ(d.model_id, "under-test");
    EXPECT_FALSE(d.error.has_value());
    EXPECT_EQ(d.turns.size(), 30u);
    EXPECT_EQ(d.model_turn_count(), 15u);
    EXPECT_NO_THROW(validate_dialog(d));
  }
  EXPECT_EQ(dialog_id_for(7), "dialog-00007");
}

TEST(Campaign, ReplayInvariance) {
  const auto in = parrot_inputs(15, 20);
  const auto dialogs = run_campaign(in, 2);
  const auto ctx = make_analysis_context(in);
  const auto inline_verdicts = analyze(dialogs, ctx, 2);
  const auto reloaded = parse_transcripts(serialize_transcripts(dialogs));
  EXPECT_EQ(reloaded, dialogs);
  const auto replayed = analyze(reloaded, ctx, 1);
  EXPECT_EQ(serialize_verdicts(replayed), serialize_verdicts(inline_verdicts));
  EXPECT_EQ(parse_verdicts(serialize_verdicts(inline_verdicts)), inline_verdicts);
}

TEST(Campaign, QaVerdictsOnlyWhereInjected) {
  const auto in = parrot_inputs(30, 20);
  const auto dialogs = run_campaign(in, 2);
  const auto verdicts = analyze(dialogs, make_analysis_context(in), 2);
  std::map<std::string, std::set<std::string>> tagged;
  for (const auto& d : dialogs) {
    for (const auto& t : d.turns) {
      if (t.injection) tagged[d.dialog_id].insert(t.injection->test_id);
    }
    for (const auto& s : d.skipped) tagged[d.dialog_id].insert(s.test_instance_id);
  }
  std::map<std::string, std::set<std::string>> judged;
  const auto qa_ids = registry_defaults().enabled_qa_ids();
  for (const auto& v : verdicts) {
    if (std::find(qa_ids.begin(), qa_ids.end(), v.requirement_id) == qa_ids.end()) continue;
    EXPECT_TRUE(judged[v.dialog_id].insert(v.test_instance_id).second) << v.dialog_id << " " << v.test_instance_id;
  }
  EXPECT_EQ(judged, tagged);
  EXPECT_FALSE(tagged.empty());
}

TEST(Campaign, UnreachableModelMarksDialogs) {
  const std::string model = "[model]\nmodel_id = \"remote\"\n[model.http]\nbase_url = \"" +
                            convqa::testing::dead_url() + "\"\ntimeout_ms = 500\nmax_retries = 0\nbackoff_ms = 0\n";
  const std::string toml = "n_dialogs = 4\nprompts_per_dialog = 6\ninjection_probability = 0.0\n" + model +
                           "[generator]\nmodel_id = \"g\"\n[generator.stub]\nkind = \"scripted\"\n";
  const auto in = load_inputs(validate_config(toml));
  const auto dialogs = run_campaign(in, 2);
  ASSERT_EQ(dialogs.size(), 4u);
  for (const auto& d : dialogs) {
    ASSERT_TRUE(d.error.has_value());
    EXPECT_TRUE(d.turns.empty());
    EXPECT_NO_THROW(validate_dialog(d));
  }
  const auto verdicts = analyze(dialogs, make_analysis_context(in), 1);
  ASSERT_FALSE(verdicts.empty());
  for (const auto& v : verdicts) {
    EXPECT_EQ(v.outcome, Outcome::skip);
    EXPECT_EQ(v.evidence.at("reason"), "dialog_error");
  }
}

TEST(Campaign, ModelFailingMidDialogKeepsCompletedPairs) {
  convqa::testing::LocalServer server;
  int calls = 0;
  server.post("/v1/chat", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls > 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"reply": "Sure."})", "application/json");
  });
  server.start();
  const std::string toml = "n_dialogs = 1\nprompts_per_dialog = 8\ninjection_probability = 0.0\n"
                           "[model]\nmodel_id = \"remote\"\n[model.http]\nbase_url = \"" +
                           server.url() + "\"\nmax_retries = 0\n"
                           "[generator]\nmodel_id = \"g\"\n[generator.stub]\nkind = \"scripted\"\n";
  const auto dialogs = run_campaign(load_inputs(validate_config(toml)), 1);
  ASSERT_EQ(dialogs.size(), 1u);
  EXPECT_TRUE(dialogs[0].error.has_value());
  EXPECT_EQ(dialogs[0].turns.size(), 6u);
  EXPECT_NO_THROW(validate_dialog(dialogs[0]));
}

TEST(Campaign, InjectionCountWithinBinomialBand) {
  const auto in = load_inputs(offline_config("kind = \"echo\"",
                                             "n_dialogs = 200\nprompts_per_dialog = 50\ncampaign_seed = 3\n"
                                             "[injection_probability]\nI5 = 0.05\n",
                                             "[requirements]\nenabled = [\"I5\"]\n"));
  std::size_t injected = 0;
  for (const auto& d : run_campaign(in, 2)) {
    for (const auto& t : d.turns) injected += t.injection && t.injection->phase == Phase::provide_info;
  }
  EXPECT_GE(injected, 1u);
  EXPECT_LE(injected, 25u);
}

TEST(Sweep, Errors) {
  const auto in = parrot_inputs(2, 10);
  const std::vector<double> none;
  try {
    sweep_noise(in, none, 1);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(e.has(ConfigIssue::Kind::missing, "noise_sweep"));
  }
  const std::vector<double> bad{0.5, 1.5};
  EXPECT_THROW(sweep_noise(in, bad, 1), ConfigError);
  const auto quiet = parrot_inputs(2, 10, "", "[requirements]\nenabled = [\"I5\", \"A3\"]\n");
  const std::vector<double> ok{0.0};
  EXPECT_THROW(sweep_noise(quiet, ok, 1), ConfigError);
}

TEST(Sweep, ZeroFractionMatchesPlainCampaign) {
  auto in = parrot_inputs(20, 20, "", "[requirements]\nenabled = [\"U3\", \"U5\"]\n");
  const std::vector<double> zero{0.0};
  const auto sweep = sweep_noise(in, zero, 2);
  in.config.f_char = 0.0;
  in.config.f_word = 0.0;
  const auto plain = analyze(run_campaign(in, 2), make_analysis_context(in), 2);
  EXPECT_EQ(sweep.points.at(0).verdicts, plain);
  for (const char* id : {"U3", "U5"}) {
    std::size_t passed = 0, evaluated = 0;
    for (const auto& v : plain) {
      if (v.requirement_id != id || v.outcome == Outcome::skip) continue;
      ++evaluated;
      passed += v.outcome == Outcome::pass;
    }
    const auto& s = sweep.series.at(id).at(0);
    EXPECT_EQ(s.passed, passed);
    EXPECT_EQ(s.evaluated, evaluated);
  }
}

TEST(Sweep, DropNoiseHurtsTheParrot) {
  const auto in = parrot_inputs(40, 20, "", "[requirements]\nenabled = [\"U5\"]\n");
  const std::vector<double> fractions{0.0, 1.0};
  const auto sweep = sweep_noise(in, fractions, 2);
  const auto& series = sweep.series.at("U5");
  ASSERT_EQ(series.size(), 2u);
  ASSERT_TRUE(series[0].success_rate && series[1].success_rate);
  EXPECT_GE(*series[0].success_rate, *series[1].success_rate);
  // Paired design: the same dialogs carry the same instances at every fraction.
  ASSERT_EQ(sweep.points[0].dialogs.size(), sweep.points[1].dialogs.size());
  for (std::size_t i = 0; i < sweep.points[0].dialogs.size(); ++i) {
    EXPECT_EQ(sweep.points[0].dialogs[i].seed, sweep.points[1].dialogs[i].seed);
  }
}
