#include "convqa/analyzers/qa_checks.hpp"

#include <set>

#include "convqa/core/text.hpp"

namespace convqa::analyzers {

OpenAssessment assess_open(std::string_view question, std::string_view reply,
                           std::span<const std::string> match_values, const QaScorer& qa,
                           double min_confidence, bool lenient) {
  OpenAssessment a;
  if (lenient) {
    a.extracted = std::string(reply);
    a.confidence = 1.0;
    const std::string hay = normalize_space_lower(reply);
    for (const auto& mv : match_values) {
      const std::string needle = normalize_space_lower(mv);
      a.passed = a.passed || (!needle.empty() && hay.find(needle) != std::string::npos);
    }
    a.reason = a.passed ? "match" : "mismatch";
    return a;
  }
  const QaQuery query{std::string(question), std::string(reply)};
  const auto answers = qa.answer(std::span<const QaQuery>(&query, 1));
  if (answers.size() != 1) throw ScorerUnavailable("qa scorer returned a wrong number of answers");
  a.extracted = answers[0].text;
  a.confidence = answers[0].score;
  const auto span_tokens = tokenize(a.extracted);
  if (span_tokens.empty() || a.confidence < min_confidence) {
    a.reason = "no-answer";
    return a;
  }
  for (const auto& mv : match_values) {
    a.passed = a.passed || contains_sequence(span_tokens, tokenize(mv));
  }
  a.reason = a.passed ? "match" : "mismatch";
  return a;
}

injection::Polarity assess_closed(std::string_view reply, std::span<const std::string> no_list) {
  const auto sentences = split_sentences(reply);
  if (sentences.empty()) return injection::Polarity::yes;
  const auto first = tokenize(sentences.front());
  for (const auto& phrase : no_list) {
    if (contains_sequence(first, tokenize(phrase))) return injection::Polarity::no;
  }
  return injection::Polarity::yes;
}

ConsistencyResult self_consistency(std::string_view answer_1, std::string_view answer_2, double threshold) {
  const auto a = tokenize(answer_1);
  const auto b = tokenize(answer_2);
  ConsistencyResult r;
  r.similarity = jaccard(std::set<std::string>(a.begin(), a.end()), std::set<std::string>(b.begin(), b.end()));
  r.passed = r.similarity >= threshold;
  return r;
}

}  // namespace convqa::analyzers
