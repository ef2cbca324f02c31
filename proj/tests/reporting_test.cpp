#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "convqa/reporting/report.hpp"
#include "convqa/reporting/statistics.hpp"
#include "json.hpp"

using namespace convqa;
using namespace convqa::reporting;

namespace {

Verdict v(std::string dialog, std::string model, std::string req, std::string inst, Outcome o,
          std::optional<double> score = std::nullopt) {
  switch (o) {
    case Outcome::pass: return Verdict::pass(dialog, model, req, inst, score);
    case Outcome::fail: return Verdict::fail(dialog, model, req, inst, score, {{"turn", 1}});
    case Outcome::skip: break;
  }
  return Verdict::skip(dialog, model, req, inst, "x");
}

// Dialog d gets failures[d] failing verdicts plus one passing verdict.
std::vector<Verdict> with_failure_counts(const std::vector<int>& failures, std::string req = "A4",
                                         std::string model = "m") {
  std::vector<Verdict> out;
  for (std::size_t d = 0; d < failures.size(); ++d) {
    const std::string id = "dialog-" + std::to_string(1000 + d);
    out.push_back(v(id, model, req, req + "@0000", Outcome::pass, 0.0));
    for (int k = 0; k < failures[d]; ++k) {
      out.push_back(v(id, model, req, req + "@" + std::to_string(1001 + k), Outcome::fail, 1.0));
    }
  }
  return out;
}

std::vector<Verdict> random_verdicts(std::mt19937_64& g, std::size_t n, const std::vector<std::string>& models) {
  static const std::vector<std::string> reqs{"P2", "A3", "A4", "I2", "I3", "I5", "U3"};
  std::uniform_int_distribution<std::size_t> dialog(0, 30), req(0, reqs.size() - 1), model(0, models.size() - 1),
      outcome(0, 2), turn(0, 40);
  std::uniform_real_distribution<double> score(0, 2);
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = reqs[req(g)];
    char inst[32];
    std::snprintf(inst, sizeof inst, "%s@%04zu", r.c_str(), i);
    const std::string d = "dialog-" + std::to_string(dialog(g));
    out.push_back(v(d, models[model(g)], r, inst, static_cast<Outcome>(outcome(g)), score(g)));
  }
  sort_canonical(out);
  return out;
}

}  // namespace

TEST(Statistics, HandComputed) {
  EXPECT_EQ(percentile_nearest_rank({1, 2, 3, 4}, 0.75), 3.0);
  EXPECT_EQ(percentile_nearest_rank({4, 1, 3, 2, 5}, 0.75), 4.0);
  EXPECT_EQ(percentile_nearest_rank({7}, 0.75), 7.0);
  const std::vector<double> two{2, 4};
  EXPECT_NEAR(population_std(two), 1.0, 1e-12);
  EXPECT_EQ(lower_median({4, 2}), 2.0);
  EXPECT_EQ(lower_median({2, 3, 2}), 2.0);
  EXPECT_EQ(lower_median({5, 1, 3, 2}), 2.0);
  EXPECT_THROW(lower_median({}), std::invalid_argument);
  EXPECT_THROW(percentile_nearest_rank({}, 0.75), std::invalid_argument);
}

TEST(Statistics, SummaryOfFailureCounts) {
  auto s = summarize(with_failure_counts({1, 2, 3, 4}), "A4", "m");
  EXPECT_EQ(s.dialogs_evaluated, 4u);
  EXPECT_EQ(s.dialogs_failed, 4u);
  EXPECT_EQ(s.failures_p75, 3.0);
  EXPECT_EQ(s.failures_median, 2.0);
  EXPECT_TRUE(s.flags.harness_defined);

  s = summarize(with_failure_counts({2, 0, 4, 0}), "A4", "m");
  EXPECT_EQ(s.dialogs_failed, 2u);
  EXPECT_NEAR(*s.failures_std, 1.0, 1e-12);
  EXPECT_EQ(s.failures_median, 2.0);
  EXPECT_DOUBLE_EQ(s.failed_fraction, 0.5);

  std::vector<int> counts(200, 0);
  std::fill(counts.begin(), counts.begin() + 79, 1);
  s = summarize(with_failure_counts(counts, "I2"), "I2", "m");
  EXPECT_DOUBLE_EQ(s.failed_fraction, 0.395);
  EXPECT_FALSE(s.flags.unvalidated_metric);
  EXPECT_TRUE(summarize(with_failure_counts({1}, "I3"), "I3", "m").flags.unvalidated_metric);

  s = summarize(with_failure_counts({0, 0}), "A4", "m");
  EXPECT_FALSE(s.failures_p75.has_value());
  EXPECT_FALSE(s.failures_median.has_value());

  s = summarize({}, "A4", "m");
  EXPECT_EQ(s.dialogs_evaluated, 0u);
  EXPECT_EQ(s.failed_fraction, 0.0);
}

TEST(Statistics, SkipsLeaveDenominators) {
  std::vector<Verdict> vs{v("a", "m", "I5", "I5#1", Outcome::skip), v("b", "m", "I5", "I5#1", Outcome::fail),
                          v("c", "m", "I5", "I5#1", Outcome::pass), v("c", "other", "I5", "I5#1", Outcome::fail)};
  const auto s = summarize(vs, "I5", "m");
  EXPECT_EQ(s.dialogs_evaluated, 2u);
  EXPECT_EQ(s.dialogs_failed, 1u);
}

TEST(Statistics, CountsMergeAndIntegerIdentity) {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_verdicts(g, 150, {"m"});
    auto b = random_verdicts(g, 150, {"m"});
    for (auto& x : b) x.dialog_id += "-b";
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    for (const char* req : {"P2", "A4", "I5"}) {
      const auto sa = summarize(a, req, "m");
      const auto sb = summarize(b, req, "m");
      const auto sab = summarize(both, req, "m");
      EXPECT_EQ(sab.dialogs_evaluated, sa.dialogs_evaluated + sb.dialogs_evaluated);
      EXPECT_EQ(sab.dialogs_failed, sa.dialogs_failed + sb.dialogs_failed);
      EXPECT_EQ(static_cast<std::size_t>(std::llround(sab.failed_fraction * static_cast<double>(sab.dialogs_evaluated))),
                sab.dialogs_failed);
      EXPECT_LE(sab.dialogs_failed, sab.dialogs_evaluated);
    }
  }
}

TEST(Statistics, Histogram) {
  const std::vector<double> constant(40, 0.5);
  const auto h = histogram(constant);
  ASSERT_EQ(h.counts.size(), 30u);
  ASSERT_EQ(h.bin_edges.size(), 31u);
  EXPECT_EQ(std::count_if(h.counts.begin(), h.counts.end(), [](std::size_t c) { return c > 0; }), 1);
  EXPECT_EQ(h.counts.back(), 40u);
  EXPECT_EQ(h.bin_edges.back(), 0.5);

  const std::vector<double> zeros(5, 0.0);
  const auto z = histogram(zeros);
  EXPECT_EQ(z.bin_edges.back(), 1.0);
  EXPECT_EQ(z.counts.front(), 5u);

  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0, 3);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = u(g);
  const auto r = histogram(xs, 7);
  std::size_t total = 0;
  for (auto c : r.counts) total += c;
  EXPECT_EQ(total, xs.size());
}

TEST(Statistics, Nagging) {
  const std::vector<std::size_t> once(200, 1);
  auto n = nag_statistics_from_counts(once);
  EXPECT_EQ(n.nagging_dialog_fraction, 1.0);
  EXPECT_EQ(n.total_nags, 200u);
  EXPECT_EQ(n.median_nags_among_nagging, 1.0);

  const std::vector<std::size_t> none(10, 0);
  n = nag_statistics_from_counts(none);
  EXPECT_EQ(n.nagging_dialog_fraction, 0.0);
  EXPECT_FALSE(n.median_nags_among_nagging.has_value());

  const std::vector<std::size_t> mixed{2, 0, 3, 2};
  n = nag_statistics_from_counts(mixed);
  EXPECT_EQ(n.median_nags_among_nagging, 2.0);
  EXPECT_EQ(n.nagging_dialogs, 3u);

  std::vector<Verdict> vs{v("a", "m", "A3", "A3@0001", Outcome::pass, 0.0), v("a", "m", "A3", "A3@0003", Outcome::fail, 2.0),
                          v("b", "m", "A3", "A3@0001", Outcome::pass, 0.0), v("c", "m", "A3", "A3@0001", Outcome::skip)};
  n = nag_statistics(vs);
  EXPECT_EQ(n.dialogs_evaluated, 2u);
  EXPECT_EQ(n.total_nags, 2u);
  EXPECT_DOUBLE_EQ(n.nagging_dialog_fraction, 0.5);
}

TEST(Statistics, Toxicity) {
  std::vector<double> scores(10000, 0.0);
  std::fill(scores.begin(), scores.begin() + 526, 0.9);
  auto t = toxicity_statistics_from_scores(scores, 0.1);
  EXPECT_DOUBLE_EQ(t.toxic_fraction, 0.0526);
  const std::vector<double> zeros(50, 0.0);
  t = toxicity_statistics_from_scores(zeros, 0.1);
  EXPECT_EQ(t.toxic_fraction, 0.0);
  EXPECT_EQ(t.p75_max_category_score, 0.0);
}

TEST(Report, ComparisonLayout) {
  auto a = with_failure_counts({1, 0, 2}, "A4", "model-b");
  const auto b = with_failure_counts({0, 0, 1}, "A4", "model-a");
  a.insert(a.end(), b.begin(), b.end());
  sort_canonical(a);
  const auto report = build_report(a, registry_defaults());
  EXPECT_EQ(report.model_ids, (std::vector<std::string>{"model-a", "model-b"}));
  ASSERT_EQ(report.groups.size(), 1u);
  ASSERT_EQ(report.groups[0].per_model.size(), 2u);
  EXPECT_EQ(report.groups[0].per_model[0].model_id, "model-a");
  EXPECT_EQ(report.groups[0].per_model[1].dialogs_failed, 2u);

  const auto doc = nlohmann::json::parse(render_json(report));
  EXPECT_EQ(doc.at("models").size(), 2u);
  EXPECT_EQ(doc.at("requirements").at(0).at("models").size(), 2u);
  EXPECT_TRUE(doc.at("requirements").at(0).at("models").at("model-a").at("flags").at("harness_defined").get<bool>());
  const auto md = render_markdown(report);
  EXPECT_NE(md.find("model-a"), std::string::npos);
  EXPECT_NE(md.find("model-b"), std::string::npos);
  EXPECT_NE(render_html(report).find("<svg"), std::string::npos);
}

TEST(Report, UnvalidatedBanner) {
  const auto report = build_report(with_failure_counts({1, 0}, "I3"), registry_defaults());
  for (auto f : {Format::markdown, Format::html}) {
    EXPECT_NE(render(report, f).find("Unvalidated metric"), std::string::npos);
  }
  const auto doc = nlohmann::json::parse(render_json(report));
  EXPECT_TRUE(doc.at("requirements").at(0).at("models").at("m").at("flags").at("unvalidated_metric").get<bool>());
}

TEST(Report, RenderingIsStable) {
  std::mt19937_64 g(3);
  const auto verdicts = random_verdicts(g, 2000, {"x", "y"});
  const auto registry = registry_defaults();
  const auto report = build_report(verdicts, registry);
  for (auto f : {Format::json, Format::markdown, Format::html}) {
    EXPECT_EQ(render(report, f), render(build_report(verdicts, registry), f));
  }
  auto shuffled = verdicts;
  std::shuffle(shuffled.begin(), shuffled.end(), g);
  EXPECT_EQ(render_json(build_report(shuffled, registry)), render_json(report));

  const auto json_text = render_json(report);
  const auto doc = nlohmann::json::parse(json_text);
  EXPECT_EQ(doc.dump(2) + "\n", json_text);
}

TEST(Report, Formats) {
  EXPECT_EQ(parse_format("json"), Format::json);
  EXPECT_EQ(parse_format("md"), Format::markdown);
  EXPECT_EQ(parse_format("markdown"), Format::markdown);
  EXPECT_EQ(parse_format("html"), Format::html);
  EXPECT_THROW(parse_format("pdf"), UnknownFormat);
}
