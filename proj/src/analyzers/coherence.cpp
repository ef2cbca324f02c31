#include "convqa/analyzers/coherence.hpp"

namespace convqa::analyzers {
namespace {

CoherenceResult score_pairs(const Dialog& dialog, const NspScorer* nsp, double threshold, bool full_context) {
  std::vector<std::size_t> turns;
  std::vector<NspPair> pairs;
  std::string context;
  for (std::size_t i = 0; i < dialog.turns.size(); ++i) {
    const Turn& t = dialog.turns[i];
    if (t.speaker == Speaker::model && i > 0) {
      turns.push_back(t.index);
      pairs.push_back({full_context ? context : dialog.turns[i - 1].text, t.text});
    }
    if (!context.empty()) context.push_back('\n');
    context += t.text;
  }
  CoherenceResult r;
  if (turns.empty()) {
    r.skip_reason = "no_replies";
    return r;
  }
  if (!nsp) {
    r.reply_turns = turns;
    r.skip_reason = "nsp_scorer_unconfigured";
    return r;
  }
  std::vector<double> scores;
  try {
    scores = nsp->score(pairs);
  } catch (const ScorerUnavailable& e) {
    r.reply_turns = turns;
    r.skip_reason = std::string("scorer_unavailable: ") + e.what();
    return r;
  }
  return coherence_from_scores(turns, scores, threshold);
}

}  // namespace

CoherenceResult coherence_from_scores(std::span<const std::size_t> reply_turns,
                                      std::span<const double> p_next, double threshold) {
  CoherenceResult r;
  r.reply_turns.assign(reply_turns.begin(), reply_turns.end());
  r.p_next.assign(p_next.begin(), p_next.end());
  for (std::size_t k = 0; k < p_next.size(); ++k) {
    if (p_next[k] < threshold) r.incoherent_turns.push_back(reply_turns[k]);
  }
  r.dialog_failed = !r.incoherent_turns.empty();
  return r;
}

CoherenceResult dialog_coherence(const Dialog& dialog, const NspScorer* nsp, double threshold) {
  return score_pairs(dialog, nsp, threshold, true);
}

CoherenceResult reply_coherence(const Dialog& dialog, const NspScorer* nsp, double threshold) {
  return score_pairs(dialog, nsp, threshold, false);
}

}  // namespace convqa::analyzers
