#include "convqa/analyzers/dialog_analysis.hpp"

#include <cstdio>
#include <map>

#include "convqa/analyzers/coherence.hpp"
#include "convqa/analyzers/nagging.hpp"
#include "convqa/analyzers/qa_checks.hpp"
#include "convqa/analyzers/stutter.hpp"
#include "convqa/analyzers/toxicity.hpp"

namespace convqa::analyzers {
namespace {

using nlohmann::json;

struct Reply {
  std::size_t turn;
  const std::string* text;
};

struct Instance {
  std::string requirement_id;
  std::string payload_id;
  std::optional<std::size_t> provide_turn;
  std::optional<std::size_t> request_turn;
};

std::string reply_instance(std::string_view req, std::size_t turn) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "@%04zu", turn);
  return std::string(req) + buf;
}

class Emitter {
 public:
  Emitter(const Dialog& d, std::vector<Verdict>& out) : d_(d), out_(out) {}

  void pass(const std::string& req, std::string inst, std::optional<double> score, json ev) {
    out_.push_back(Verdict::pass(d_.dialog_id, d_.model_id, req, std::move(inst), score, std::move(ev)));
  }
  void fail(const std::string& req, std::string inst, std::optional<double> score, json ev) {
    out_.push_back(Verdict::fail(d_.dialog_id, d_.model_id, req, std::move(inst), score, std::move(ev)));
  }
  void outcome(bool ok, const std::string& req, std::string inst, std::optional<double> score, json ev) {
    if (ok) pass(req, std::move(inst), score, std::move(ev));
    else fail(req, std::move(inst), score, std::move(ev));
  }
  void skip(const std::string& req, std::string inst, std::string reason) {
    out_.push_back(Verdict::skip(d_.dialog_id, d_.model_id, req, std::move(inst), std::move(reason)));
  }
  // One skip per reply, or one for the requirement when there are none.
  void skip_replies(const std::string& req, const std::vector<Reply>& replies, const std::string& reason) {
    if (replies.empty()) skip(req, req, reason);
    for (const auto& r : replies) skip(req, reply_instance(req, r.turn), reason);
  }

 private:
  const Dialog& d_;
  std::vector<Verdict>& out_;
};

void analyze_toxicity(const std::string& req, const std::vector<Reply>& replies, const AnalysisContext& ctx,
                      Emitter& emit) {
  if (replies.empty()) return emit.skip(req, req, "no_replies");
  if (!ctx.scorers.toxicity) return emit.skip_replies(req, replies, "toxicity_scorer_unconfigured");
  std::vector<std::string> texts;
  for (const auto& r : replies) texts.push_back(*r.text);
  std::vector<ToxicityScores> scores;
  try {
    scores = ctx.scorers.toxicity->score(texts);
  } catch (const ScorerUnavailable& e) {
    return emit.skip_replies(req, replies, std::string("scorer_unavailable: ") + e.what());
  }
  for (std::size_t k = 0; k < replies.size(); ++k) {
    const auto v = toxicity_verdict(scores[k], ctx.config->toxicity_threshold);
    json per = json::object();
    for (std::size_t c = 0; c < kToxicityCategories.size(); ++c) {
      per[std::string(kToxicityCategories[c])] = scores[k][c];
    }
    json ev{{"turn", replies[k].turn}, {"max_category", std::string(v.max_category)}, {"scores", per}};
    emit.outcome(!v.toxic, req, reply_instance(req, replies[k].turn), v.max_value, std::move(ev));
  }
}

void analyze_nagging(const std::string& req, const Dialog& dialog, const std::vector<Reply>& replies,
                     Emitter& emit) {
  if (replies.empty()) return emit.skip(req, req, "no_replies");
  const auto nags = count_nags(dialog);
  for (std::size_t k = 0; k < replies.size(); ++k) {
    const std::size_t n = nags.per_reply[k];
    emit.outcome(n == 0, req, reply_instance(req, replies[k].turn), static_cast<double>(n),
                 json{{"turn", replies[k].turn}, {"nags", n}});
  }
}

void analyze_stutter(const std::string& req, const std::vector<Reply>& replies, const AnalysisContext& ctx,
                     Emitter& emit) {
  if (replies.empty()) return emit.skip(req, req, "no_replies");
  for (const auto& r : replies) {
    const auto s = stutter_score(std::string_view(*r.text), ctx.config->stutter);
    emit.outcome(s.score <= 0.0, req, reply_instance(req, r.turn), s.score,
                 json{{"turn", r.turn}, {"counts", s.counts}});
  }
}

void analyze_coherence(const std::string& req, const Dialog& dialog, const std::vector<Reply>& replies,
                       const AnalysisContext& ctx, Emitter& emit, bool full_context) {
  const NspScorer* nsp = ctx.scorers.nsp.get();
  const double threshold = ctx.config->coherence_threshold;
  const auto res = full_context ? dialog_coherence(dialog, nsp, threshold) : reply_coherence(dialog, nsp, threshold);
  if (res.skip_reason) return emit.skip_replies(req, replies, *res.skip_reason);
  for (std::size_t k = 0; k < res.reply_turns.size(); ++k) {
    json ev{{"turn", res.reply_turns[k]}};
    if (!full_context) ev["validated"] = false;
    emit.outcome(res.p_next[k] >= threshold, req, reply_instance(req, res.reply_turns[k]), res.p_next[k],
                 std::move(ev));
  }
}

const Turn* reply_after(const Dialog& dialog, std::size_t turn) {
  if (turn + 1 >= dialog.turns.size()) return nullptr;
  const Turn& t = dialog.turns[turn + 1];
  return t.speaker == Speaker::model ? &t : nullptr;
}

void analyze_instance(const std::string& inst_id, const Instance& inst, const Dialog& dialog,
                      const AnalysisContext& ctx, Emitter& emit) {
  const std::string& req = inst.requirement_id;
  if (!inst.provide_turn || !inst.request_turn) return emit.skip(req, inst_id, "incomplete_instance");
  const Turn* provide_reply = reply_after(dialog, *inst.provide_turn);
  const Turn* request_reply = reply_after(dialog, *inst.request_turn);
  if (!provide_reply || !request_reply) return emit.skip(req, inst_id, "incomplete_instance");
  const auto* item = ctx.data->find(inst.payload_id);
  if (!item) return emit.skip(req, inst_id, "unknown_payload");
  const auto& cfg = *ctx.config;
  const std::string& question = dialog.turns[*inst.request_turn].text;
  const json turns = json::array({*inst.provide_turn, *inst.request_turn, request_reply->index});

  try {
    if (req == "I1") {
      if (!ctx.scorers.qa) return emit.skip(req, inst_id, "qa_scorer_unconfigured");
      const auto first = assess_open(dialog.turns[*inst.provide_turn].text, provide_reply->text, {}, *ctx.scorers.qa,
                                     cfg.min_confidence);
      const auto second = assess_open(question, request_reply->text, {}, *ctx.scorers.qa, cfg.min_confidence);
      json ev{{"turns", json::array({provide_reply->index, request_reply->index})},
              {"payload_id", inst.payload_id},
              {"answers", json::array({first.extracted, second.extracted})}};
      if (first.reason == "no-answer" || second.reason == "no-answer") {
        ev["reason"] = "no-answer";
        return emit.fail(req, inst_id, std::nullopt, std::move(ev));
      }
      const auto c = self_consistency(first.extracted, second.extracted, cfg.self_consistency_threshold);
      return emit.outcome(c.passed, req, inst_id, c.similarity, std::move(ev));
    }
    if (item->mode == injection::QaMode::closed) {
      const auto got = assess_closed(request_reply->text, ctx.data->no_list);
      json ev{{"turns", turns},
              {"payload_id", inst.payload_id},
              {"polarity", std::string(injection::to_string(got))},
              {"expected", std::string(injection::to_string(item->expected_polarity))}};
      return emit.outcome(got == item->expected_polarity, req, inst_id, std::nullopt, std::move(ev));
    }
    if (!ctx.scorers.qa && !cfg.lenient_match) return emit.skip(req, inst_id, "qa_scorer_unconfigured");
    // Lenient matching never consults the scorer.
    static const auto unused = make_overlap_qa_scorer();
    const QaScorer& qa = ctx.scorers.qa ? *ctx.scorers.qa : *unused;
    const auto a = assess_open(question, request_reply->text, item->match_values, qa, cfg.min_confidence,
                               cfg.lenient_match);
    json ev{{"turns", turns}, {"payload_id", inst.payload_id}, {"extracted", a.extracted}, {"reason", a.reason}};
    emit.outcome(a.passed, req, inst_id, a.confidence, std::move(ev));
  } catch (const ScorerUnavailable& e) {
    emit.skip(req, inst_id, std::string("scorer_unavailable: ") + e.what());
  }
}

}  // namespace

std::vector<Verdict> analyze_dialog(const Dialog& dialog, const AnalysisContext& ctx) {
  std::vector<Verdict> out;
  Emitter emit(dialog, out);

  std::vector<Reply> replies;
  for (const auto& t : dialog.turns) {
    if (t.speaker == Speaker::model) replies.push_back({t.index, &t.text});
  }
  std::map<std::string, Instance> instances;
  for (const auto& t : dialog.turns) {
    if (!t.injection) continue;
    auto& inst = instances[t.injection->test_id];
    inst.requirement_id = t.injection->requirement_id;
    inst.payload_id = t.injection->payload_id;
    (t.injection->phase == Phase::provide_info ? inst.provide_turn : inst.request_turn) = t.index;
  }

  for (const auto& entry : ctx.registry->entries()) {
    if (!entry.enabled) continue;
    const std::string& req = entry.id;
    if (entry.structure == TestStructure::qa) {
      for (const auto& s : dialog.skipped) {
        if (s.requirement_id == req) emit.skip(req, s.test_instance_id, s.reason);
      }
      for (const auto& [id, inst] : instances) {
        if (inst.requirement_id != req) continue;
        if (dialog.error) emit.skip(req, id, "dialog_error");
        else analyze_instance(id, inst, dialog, ctx, emit);
      }
      continue;
    }
    if (dialog.error) {
      emit.skip(req, req, "dialog_error");
      continue;
    }
    if (req == "P2") analyze_toxicity(req, replies, ctx, emit);
    else if (req == "A3") analyze_nagging(req, dialog, replies, emit);
    else if (req == "A4") analyze_stutter(req, replies, ctx, emit);
    else if (req == "I2") analyze_coherence(req, dialog, replies, ctx, emit, true);
    else if (req == "I3") analyze_coherence(req, dialog, replies, ctx, emit, false);
  }
  sort_canonical(out);
  return out;
}

}  // namespace convqa::analyzers
