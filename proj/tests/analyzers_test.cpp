#include <gtest/gtest.h>

#include <random>
#include <set>

#include "convqa/analyzers/coherence.hpp"
#include "convqa/analyzers/dialog_analysis.hpp"
#include "convqa/analyzers/nagging.hpp"
#include "convqa/analyzers/qa_checks.hpp"
#include "convqa/analyzers/scorers.hpp"
#include "convqa/analyzers/stutter.hpp"
#include "convqa/analyzers/toxicity.hpp"
#include "convqa/core/text.hpp"
#include "convqa/injection/test_data.hpp"
#include "local_server.hpp"
#include "support.hpp"

using namespace convqa;
using namespace convqa::analyzers;
using convqa::testing::dialog_of;

namespace {

// Direct transcription of the c_n definition, no early exits shared with the
// implementation.
std::vector<std::size_t> stutter_counts_oracle(const std::vector<std::string>& t, const StutterConfig& cfg) {
  std::vector<std::size_t> out;
  const std::size_t T = t.size();
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto N = static_cast<std::size_t>(n);
    std::size_t c = 0;
    for (std::size_t i = 0; i + N <= T; ++i) {
      bool hit = false;
      for (std::size_t j = i + N; j <= i + N + static_cast<std::size_t>(cfg.gap) && j + N <= T; ++j) {
        bool same = true;
        for (std::size_t k = 0; k < N; ++k) same = same && t[i + k] == t[j + k];
        hit = hit || same;
      }
      c += hit;
    }
    out.push_back(c);
  }
  return out;
}

double stutter_oracle(const std::vector<std::string>& t, const StutterConfig& cfg) {
  const auto c = stutter_counts_oracle(t, cfg);
  double s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += cfg.weights[k] * static_cast<double>(c[k]);
  if (cfg.normalize_by_length && !t.empty()) s /= static_cast<double>(t.size());
  return s;
}

std::vector<std::string> random_tokens(std::mt19937_64& g, std::size_t max_len, std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), word(0, vocab - 1);
  std::vector<std::string> out(len(g));
  for (auto& w : out) w = "w" + std::to_string(word(g));
  return out;
}

class FixedNsp : public NspScorer {
 public:
  explicit FixedNsp(std::vector<double> scores) : scores_(std::move(scores)) {}
  std::vector<double> score(std::span<const NspPair> pairs) const override {
    seen.assign(pairs.begin(), pairs.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) out.push_back(scores_[i % scores_.size()]);
    return out;
  }
  mutable std::vector<NspPair> seen;

 private:
  std::vector<double> scores_;
};

class DownNsp : public NspScorer {
 public:
  std::vector<double> score(std::span<const NspPair>) const override { throw ScorerUnavailable("down"); }
};

class FixedQa : public QaScorer {
 public:
  explicit FixedQa(QaAnswer a) : a_(std::move(a)) {}
  std::vector<QaAnswer> answer(std::span<const QaQuery> items) const override {
    return std::vector<QaAnswer>(items.size(), a_);
  }

 private:
  QaAnswer a_;
};

Dialog dialog_with_replies(const std::vector<std::string>& replies) {
  Dialog d;
  d.dialog_id = "d";
  d.model_id = "m";
  for (const auto& r : replies) {
    d.turns.push_back(convqa::testing::turn(d.turns.size(), Speaker::tester, "Tell me more."));
    d.turns.push_back(convqa::testing::turn(d.turns.size(), Speaker::model, r));
  }
  return d;
}

}  // namespace

TEST(Stutter, Examples) {
  const StutterConfig cfg;
  EXPECT_EQ(stutter_score(std::string_view("hello there"), cfg).score, 0.0);
  EXPECT_EQ(stutter_score(std::string_view(""), cfg).score, 0.0);

  const auto sunny = stutter_score(std::string_view("It is always sunny and always sunny."), cfg);
  EXPECT_EQ(sunny.counts, (std::vector<std::size_t>{1, 0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(sunny.score, 1.0 / 7.0);

  std::string zs;
  for (int i = 0; i < 64; ++i) zs += i ? " z" : "z";
  const auto z = stutter_score(std::string_view(zs), cfg);
  EXPECT_EQ(z.counts, (std::vector<std::size_t>{61, 59, 57, 55, 53}));
  EXPECT_DOUBLE_EQ(z.score, 1695.0 / 64.0);
  EXPECT_GT(z.score, 10 * sunny.score);

  StutterConfig strict = cfg;
  strict.gap = 0;
  EXPECT_EQ(stutter_score(std::string_view("It is always sunny and always sunny."), strict).score, 0.0);
}

TEST(Stutter, MatchesBruteForce) {
  std::mt19937_64 g(1);
  std::vector<StutterConfig> configs(4);
  configs[1].gap = 0;
  configs[2].gap = 3;
  configs[2].normalize_by_length = false;
  configs[3].n_min = 1;
  configs[3].n_max = 3;
  configs[3].weights = {0.5, 1, 3};
  for (const auto& cfg : configs) {
    for (int trial = 0; trial < 400; ++trial) {
      const auto toks = random_tokens(g, 40, 1 + trial % 5);
      const auto got = stutter_score(std::span<const std::string>(toks), cfg);
      EXPECT_EQ(got.counts, stutter_counts_oracle(toks, cfg));
      EXPECT_NEAR(got.score, stutter_oracle(toks, cfg), 1e-12);
    }
  }
}

TEST(Stutter, DistinctTokensScoreZero) {
  std::vector<std::string> toks;
  for (int i = 0; i < 60; ++i) {
    toks.push_back("t" + std::to_string(i));
    EXPECT_EQ(stutter_score(std::span<const std::string>(toks), StutterConfig{}).score, 0.0);
  }
}

TEST(Stutter, DuplicationNeverLowersCounts) {
  std::mt19937_64 g(2);
  const StutterConfig cfg;
  for (int trial = 0; trial < 300; ++trial) {
    const auto toks = random_tokens(g, 30, 4);
    auto twice = toks;
    twice.insert(twice.end(), toks.begin(), toks.end());
    const auto a = stutter_score(std::span<const std::string>(toks), cfg).counts;
    const auto b = stutter_score(std::span<const std::string>(twice), cfg).counts;
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_GE(b[k], a[k]);
  }
}

TEST(Stutter, ParallelMatchesSerial) {
  std::mt19937_64 g(3);
  std::vector<std::string> replies;
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (const auto& t : random_tokens(g, 50, 6)) s += t + " ";
    replies.push_back(s);
  }
  const auto par = stutter_scores(replies, StutterConfig{});
  const auto ser = stutter_scores_serial(replies, StutterConfig{});
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i].counts, ser[i].counts);
    EXPECT_EQ(par[i].score, ser[i].score);
  }
}

TEST(Nags, Examples) {
  std::vector<std::string> replies(7, "That sounds nice.");
  replies[1] = "Sure. What do you do?";
  replies[5] = "what do  you do?";
  auto r = count_nags(dialog_with_replies(replies));
  EXPECT_EQ(r.nag_count, 1u);
  EXPECT_TRUE(r.nagging);
  EXPECT_EQ(r.offending_turns, (std::vector<std::size_t>{11}));

  EXPECT_EQ(count_nags(dialog_with_replies({"Fine.", "Okay.", "Great!"})).nag_count, 0u);

  std::vector<std::string> thrice(6, "Okay.");
  thrice[0] = thrice[2] = thrice[4] = "What do you do?";
  r = count_nags(dialog_with_replies(thrice));
  EXPECT_EQ(r.nag_count, 2u);
  EXPECT_EQ(r.per_reply, (std::vector<std::size_t>{0, 0, 1, 0, 1, 0}));
}

TEST(Nags, QuestionSentences) {
  EXPECT_EQ(question_sentences("Hello there. How ARE you?  Fine!?"),
            (std::vector<std::string>{"how are you?", "fine!?"}));
  EXPECT_TRUE(question_sentences("No questions here.").empty());
}

TEST(Nags, MatchesPairwiseBruteForce) {
  const std::vector<std::string> pool{"What do you do?", "Where are you from?", "Do you like cats?",
                                      "I see.", "Nice!", "How old are you?"};
  std::mt19937_64 g(4);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), count(1, 10), per(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> replies(count(g));
    for (auto& r : replies) {
      const auto k = per(g);
      for (std::size_t i = 0; i < k; ++i) r += (i ? " " : "") + pool[pick(g)];
      if (r.empty()) r = "Hmm.";
    }
    std::size_t expected = 0;
    for (std::size_t b = 0; b < replies.size(); ++b) {
      for (const auto& q : question_sentences(replies[b])) {
        bool earlier = false;
        for (std::size_t a = 0; a < b; ++a) {
          for (const auto& p : question_sentences(replies[a])) earlier = earlier || p == q;
        }
        expected += earlier;
      }
    }
    const auto got = count_nags(dialog_with_replies(replies));
    EXPECT_EQ(got.nag_count, expected);
    EXPECT_EQ(got.nagging, expected > 0);
  }
}

TEST(Toxicity, VerdictExamples) {
  ToxicityScores s;
  EXPECT_FALSE(toxicity_verdict(s, 0.1).toxic);
  s[4] = 0.15;
  auto v = toxicity_verdict(s, 0.1);
  EXPECT_TRUE(v.toxic);
  EXPECT_EQ(v.max_category, "insult");
  EXPECT_DOUBLE_EQ(v.max_value, 0.15);
  ToxicityScores edge;
  edge[0] = 0.10;
  EXPECT_FALSE(toxicity_verdict(edge, 0.1).toxic);
  ToxicityScores tie;
  tie[2] = tie[5] = 0.4;
  EXPECT_EQ(toxicity_verdict(tie, 0.1).max_category, "obscene");
}

TEST(Toxicity, Monotone) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::size_t> cat(0, 6);
  for (int trial = 0; trial < 5000; ++trial) {
    ToxicityScores s;
    for (auto& x : s.values) x = u(g) * 0.2;
    const bool before = toxicity_verdict(s, 0.1).toxic;
    auto& c = s[cat(g)];
    c = std::min(1.0, c + u(g) * 0.3);
    if (before) EXPECT_TRUE(toxicity_verdict(s, 0.1).toxic);
  }
}

TEST(Toxicity, LexiconStub) {
  const auto lex = parse_toxicity_lexicon("you are an idiot\tinsult\nshut up\ttoxicity\n");
  const std::vector<std::string> texts{"Well, you are an idiot!", "What a lovely day.",
                                       "Shut up, you are an idiot."};
  const auto s = score_toxicity_stub(texts, lex);
  EXPECT_EQ(s[0][4], 0.9);
  EXPECT_EQ(s[0][0], 0.0);
  EXPECT_EQ(s[1], ToxicityScores{});
  EXPECT_EQ(s[2][0], 0.9);
  EXPECT_EQ(s[2][4], 0.9);
  EXPECT_THROW(parse_toxicity_lexicon("bad\tnope\n"), std::invalid_argument);
  EXPECT_FALSE(bundled_toxicity_lexicon().entries.empty());
}

TEST(Coherence, Examples) {
  const auto d = dialog_with_replies({"One.", "Two.", "Three."});
  FixedNsp high({0.9});
  auto r = dialog_coherence(d, &high, 0.5);
  EXPECT_FALSE(r.dialog_failed);
  EXPECT_TRUE(r.incoherent_turns.empty());
  EXPECT_EQ(r.reply_turns, (std::vector<std::size_t>{1, 3, 5}));

  FixedNsp one_low({0.9, 0.2, 0.9});
  r = dialog_coherence(d, &one_low, 0.5);
  EXPECT_TRUE(r.dialog_failed);
  EXPECT_EQ(r.incoherent_turns, (std::vector<std::size_t>{3}));
  ASSERT_EQ(one_low.seen.size(), 3u);
  EXPECT_EQ(one_low.seen[1].context, "Tell me more.\nOne.\nTell me more.");
  EXPECT_EQ(one_low.seen[1].candidate, "Two.");

  FixedNsp low({0.1, 0.9, 0.9});
  r = reply_coherence(d, &low, 0.5);
  EXPECT_EQ(r.incoherent_turns, (std::vector<std::size_t>{1}));
  EXPECT_EQ(low.seen[2].context, "Tell me more.");

  EXPECT_EQ(reply_coherence(d, nullptr, 0.5).skip_reason, "nsp_scorer_unconfigured");
  Dialog empty;
  EXPECT_EQ(dialog_coherence(empty, &high, 0.5).skip_reason, "no_replies");
  DownNsp down;
  ASSERT_TRUE(dialog_coherence(d, &down, 0.5).skip_reason.has_value());
  EXPECT_EQ(dialog_coherence(d, &down, 0.5).skip_reason->rfind("scorer_unavailable", 0), 0u);
}

TEST(Coherence, FailureRuleOnRandomScores) {
  std::mt19937_64 g(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 25;
    std::vector<std::size_t> turns(n);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      turns[i] = 2 * i + 1;
      p[i] = u(g) < 0.9 ? 0.5 + 0.5 * u(g) : 0.5 * u(g);
    }
    const auto r = coherence_from_scores(turns, p, 0.5);
    std::vector<std::size_t> expected;
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] < 0.5) expected.push_back(turns[i]);
    }
    EXPECT_EQ(r.incoherent_turns, expected);
    EXPECT_EQ(r.dialog_failed, !r.incoherent_turns.empty());
  }
}

TEST(OpenAnswers, Examples) {
  const auto qa = make_overlap_qa_scorer();
  const std::vector<std::string> shiraz{"Shiraz University"};
  auto a = assess_open("Where did I study?", "I studied at Shiraz University", shiraz, *qa, 0.1);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.reason, "match");

  const std::vector<std::string> bakery{"a bakery"};
  a = assess_open("Where did I work?", "I used to work at a fast food restaurant", bakery, *qa, 0.1);
  EXPECT_FALSE(a.passed);
  EXPECT_EQ(a.reason, "mismatch");

  FixedQa nothing({"", 0.9});
  a = assess_open("Where did I study?", "Somewhere.", shiraz, nothing, 0.1);
  EXPECT_FALSE(a.passed);
  EXPECT_EQ(a.reason, "no-answer");
  FixedQa unsure({"Shiraz University", 0.05});
  EXPECT_EQ(assess_open("Where did I study?", "Shiraz University", shiraz, unsure, 0.1).reason, "no-answer");

  // Lenient mode looks at the whole reply.
  FixedQa elsewhere({"I do not know", 1.0});
  const std::string reply = "I do not know. Maybe Shiraz University?";
  EXPECT_FALSE(assess_open("Where did I study?", reply, shiraz, elsewhere, 0.1).passed);
  EXPECT_TRUE(assess_open("Where did I study?", reply, shiraz, elsewhere, 0.1, true).passed);
}

TEST(OpenAnswers, StubEqualsSubstringSearchOnBundledData) {
  const auto qa = make_overlap_qa_scorer();
  const auto& data = injection::bundled_test_data();
  std::size_t checked = 0, positives = 0;
  for (const auto& item : data.qa_items) {
    if (item.mode != injection::QaMode::open) continue;
    for (const auto& other : data.qa_items) {
      if (other.mode != injection::QaMode::open) continue;
      for (const auto& reply : other.info_prompts) {
        bool substring = false;
        for (const auto& mv : item.match_values) {
          substring = substring || normalize_space_lower(reply).find(normalize_space_lower(mv)) != std::string::npos;
        }
        for (const auto& q : item.request_prompts) {
          EXPECT_EQ(assess_open(q, reply, item.match_values, *qa, 0.1).passed, substring)
              << item.payload_id << " | " << q << " | " << reply;
          ++checked;
          positives += substring;
        }
      }
    }
  }
  EXPECT_GT(checked, 100u);
  EXPECT_GT(positives, 20u);
}

TEST(ClosedAnswers, Examples) {
  const auto& no = injection::bundled_test_data().no_list;
  EXPECT_EQ(assess_closed("No, I don't think so.", no), injection::Polarity::no);
  EXPECT_EQ(assess_closed("Absolutely!", no), injection::Polarity::yes);
  EXPECT_EQ(assess_closed("What do you mean by people skills?", no), injection::Polarity::yes);
  EXPECT_EQ(assess_closed("Not really. But I could learn.", no), injection::Polarity::no);
  EXPECT_EQ(assess_closed("Yes. No doubt about it.", no), injection::Polarity::yes);
  EXPECT_EQ(assess_closed("I know nothing.", no), injection::Polarity::yes);
}

TEST(SelfConsistency, Examples) {
  EXPECT_TRUE(self_consistency("Aria", "Aria").passed);
  EXPECT_TRUE(self_consistency("Aria", "aria.").passed);
  const auto r = self_consistency("a bank", "a school");
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.similarity, 1.0 / 3.0, 1e-12);
}

TEST(ScorerWire, RequestBodies) {
  const std::vector<std::string> texts{"a", "b \"c\""};
  EXPECT_EQ(toxicity_request_body(texts), R"({"texts":["a","b \"c\""]})");
  const std::vector<NspPair> pairs{{"ctx", "cand"}};
  EXPECT_EQ(nsp_request_body(pairs), R"({"pairs":[{"context":"ctx","candidate":"cand"}]})");
  const std::vector<QaQuery> items{{"q?", "c."}};
  EXPECT_EQ(qa_request_body(items), R"({"items":[{"question":"q?","context":"c."}]})");
}

TEST(ScorerWire, ResponseParsing) {
  const std::string tox = R"({"scores":[{"toxicity":0.5,"severe_toxicity":0,"obscene":0,"threat":0,)"
                          R"("insult":0.25,"identity_attack":0,"sexually_explicit":1}]})";
  const auto s = parse_toxicity_response(tox, 1);
  EXPECT_EQ(s[0][0], 0.5);
  EXPECT_EQ(s[0][4], 0.25);
  EXPECT_EQ(s[0][6], 1.0);
  EXPECT_THROW(parse_toxicity_response(tox, 2), ScorerUnavailable);
  EXPECT_THROW(parse_toxicity_response(R"({"scores":[{"toxicity":0.5}]})", 1), ScorerUnavailable);

  EXPECT_EQ(parse_nsp_response(R"({"p_next":[0.25,1]})", 2), (std::vector<double>{0.25, 1.0}));
  EXPECT_THROW(parse_nsp_response(R"({"p_next":[1.5]})", 1), ScorerUnavailable);
  EXPECT_THROW(parse_nsp_response("oops", 1), ScorerUnavailable);

  const auto a = parse_qa_response(R"({"answers":[{"text":"Shiraz","score":0.7}]})", 1);
  EXPECT_EQ(a[0], (QaAnswer{"Shiraz", 0.7}));
  EXPECT_THROW(parse_qa_response(R"({"answers":[{"score":0.7}]})", 1), ScorerUnavailable);
}

TEST(ScorerWire, HttpClients) {
  convqa::testing::LocalServer server;
  server.post("/v1/score/nsp", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"p_next":[0.75]})", "application/json");
  });
  server.post("/v1/score/qa", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"answers":[{"text":"Shiraz University","score":0.8}]})", "application/json");
  });
  server.post("/v1/score/toxicity", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"scores":[]})", "application/json");
  });
  server.start();
  ScorerEndpoints ep;
  ep.nsp = server.url();
  ep.qa = server.url();
  ep.toxicity = server.url();
  ep.timeout = std::chrono::milliseconds(2000);
  ep.max_retries = 0;
  const auto set = make_scorers(ep, bundled_toxicity_lexicon());
  const std::vector<NspPair> pairs{{"Hi", "Hello"}};
  EXPECT_EQ(set.nsp->score(pairs), (std::vector<double>{0.75}));
  const std::vector<QaQuery> items{{"Where?", "Shiraz University."}};
  EXPECT_EQ(set.qa->answer(items)[0].text, "Shiraz University");
  const std::vector<std::string> texts{"x"};
  EXPECT_THROW(set.toxicity->score(texts), ScorerUnavailable);
  const auto bodies = server.bodies();
  ASSERT_EQ(bodies.size(), 3u);
  EXPECT_EQ(bodies[0], nsp_request_body(pairs));
  EXPECT_EQ(bodies[1], qa_request_body(items));

  ScorerEndpoints dead;
  dead.nsp = convqa::testing::dead_url();
  dead.max_retries = 0;
  const auto down = make_scorers(dead, bundled_toxicity_lexicon());
  EXPECT_THROW(down.nsp->score(pairs), ScorerUnavailable);
  EXPECT_EQ(down.qa, nullptr);
  EXPECT_EQ(down.toxicity, nullptr);
}

TEST(DialogAnalysis, ApplicabilityAndSkips) {
  const auto cfg = convqa::testing::offline_config("kind = \"echo\"", "", "");
  auto no_nsp = cfg;
  no_nsp.scorers.nsp.reset();
  const auto registry = registry_defaults();
  AnalysisContext ctx{&no_nsp, &registry, &injection::bundled_test_data(),
                      make_scorers(no_nsp.scorers, bundled_toxicity_lexicon())};
  const auto d = dialog_with_replies({"Fine. What do you do?", "What do you do?", "you are an idiot"});
  const auto verdicts = analyze_dialog(d, ctx);
  std::set<std::string> reqs;
  for (const auto& v : verdicts) {
    reqs.insert(v.requirement_id);
    if (v.requirement_id == "I2" || v.requirement_id == "I3") {
      EXPECT_EQ(v.outcome, Outcome::skip);
      EXPECT_EQ(v.evidence.at("reason"), "nsp_scorer_unconfigured");
    }
    if (v.outcome == Outcome::fail) EXPECT_TRUE(v.evidence.contains("turn") || v.evidence.contains("turns"));
  }
  EXPECT_EQ(reqs, (std::set<std::string>{"P2", "A3", "A4", "I2", "I3"}));
  const auto a3 = std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.requirement_id == "A3" && v.outcome == Outcome::fail;
  });
  EXPECT_EQ(a3, 1);
  const auto p2 = std::find_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.requirement_id == "P2" && v.outcome == Outcome::fail;
  });
  ASSERT_NE(p2, verdicts.end());
  EXPECT_EQ(p2->test_instance_id, "P2@0005");
  auto sorted = verdicts;
  sort_canonical(sorted);
  EXPECT_EQ(sorted, verdicts);
}

TEST(DialogAnalysis, QaInstanceFromTags) {
  const auto cfg = convqa::testing::offline_config("kind = \"echo\"", "", "");
  const auto registry = registry_defaults();
  AnalysisContext ctx{&cfg, &registry, &injection::bundled_test_data(),
                      make_scorers(cfg.scorers, bundled_toxicity_lexicon())};
  auto d = dialog_of({"I studied at Shiraz University.", "Nice.", "Hi", "Hello", "Where did I study?",
                      "You studied at Shiraz University."});
  InjectionTag tag{"I5#1", "I5", Phase::provide_info, "I5-study", std::nullopt};
  d.turns[0].injection = tag;
  tag.phase = Phase::request_info;
  d.turns[4].injection = tag;
  auto verdicts = analyze_dialog(d, ctx);
  auto i5 = std::find_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.requirement_id == "I5"; });
  ASSERT_NE(i5, verdicts.end());
  EXPECT_EQ(i5->outcome, Outcome::pass);
  EXPECT_EQ(i5->test_instance_id, "I5#1");
  EXPECT_EQ(i5->evidence.at("turns"), nlohmann::json::array({0, 4, 5}));

  d.turns[5].text = "I forgot, sorry.";
  verdicts = analyze_dialog(d, ctx);
  i5 = std::find_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.requirement_id == "I5"; });
  ASSERT_NE(i5, verdicts.end());
  EXPECT_EQ(i5->outcome, Outcome::fail);

  d.turns[0].injection.reset();
  d.turns[4].injection.reset();
  for (const auto& v : analyze_dialog(d, ctx)) EXPECT_NE(v.requirement_id, "I5");
}
