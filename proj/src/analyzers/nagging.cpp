#include "convqa/analyzers/nagging.hpp"

#include <set>

#include "convqa/core/text.hpp"

namespace convqa::analyzers {

std::vector<std::string> question_sentences(std::string_view reply) {
  std::vector<std::string> out;
  for (const auto& sentence : split_sentences(reply)) {
    std::size_t end = sentence.size();
    while (end > 0 && (sentence[end - 1] == '.' || sentence[end - 1] == '!' || sentence[end - 1] == '?')) --end;
    if (sentence.find('?', end) != std::string::npos) out.push_back(normalize_space_lower(sentence));
  }
  return out;
}

NagResult count_nags(const Dialog& dialog) {
  NagResult r;
  std::set<std::string> asked;
  for (const auto& turn : dialog.turns) {
    if (turn.speaker != Speaker::model) continue;
    const auto questions = question_sentences(turn.text);
    std::size_t nags = 0;
    for (const auto& q : questions) nags += asked.count(q);
    asked.insert(questions.begin(), questions.end());
    r.per_reply.push_back(nags);
    if (nags > 0) r.offending_turns.push_back(turn.index);
    r.nag_count += nags;
  }
  r.nagging = r.nag_count > 0;
  return r;
}

}  // namespace convqa::analyzers
