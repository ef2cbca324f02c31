#pragma once

#include <array>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/config.hpp"

// Scorer clients for the subjective checks. Each has an HTTP implementation
// speaking the scorer wire protocol and a deterministic offline stub.
namespace convqa::analyzers {

class ScorerUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::string_view, 7> kToxicityCategories = {
    "toxicity", "severe_toxicity", "obscene", "threat", "insult", "identity_attack", "sexually_explicit",
};

struct ToxicityScores {
  // Indexed like kToxicityCategories.
  std::array<double, 7> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  bool operator==(const ToxicityScores&) const = default;
};

struct NspPair {
  std::string context;
  std::string candidate;
};

struct QaQuery {
  std::string question;
  std::string context;
};

struct QaAnswer {
  std::string text;
  double score = 0.0;

  bool operator==(const QaAnswer&) const = default;
};

class ToxicityScorer {
 public:
  virtual ~ToxicityScorer() = default;
  virtual std::vector<ToxicityScores> score(std::span<const std::string> texts) const = 0;
};

class NspScorer {
 public:
  virtual ~NspScorer() = default;
  virtual std::vector<double> score(std::span<const NspPair> pairs) const = 0;
};

class QaScorer {
 public:
  virtual ~QaScorer() = default;
  virtual std::vector<QaAnswer> answer(std::span<const QaQuery> items) const = 0;
};

// Phrase -> category, phrases pre-tokenized.
struct ToxicityLexicon {
  struct Entry {
    std::vector<std::string> tokens;
    std::size_t category = 0;
  };
  std::vector<Entry> entries;
};

// Lines "phrase<TAB>category". Unknown categories throw std::invalid_argument.
ToxicityLexicon parse_toxicity_lexicon(std::string_view tsv);
const ToxicityLexicon& bundled_toxicity_lexicon();

// 0.9 in every category with a phrase occurring as a token run, else 0.
std::vector<ToxicityScores> score_toxicity_stub(std::span<const std::string> texts,
                                                const ToxicityLexicon& lexicon);
// Jaccard overlap of the content-token sets.
double nsp_stub(std::string_view context, std::string_view candidate);
// Longest sentence of `context` sharing a content token with `question`,
// confidence 1.0; empty text and confidence 0.0 when none does.
QaAnswer qa_stub(std::string_view question, std::string_view context);

// Wire bodies and response parsers. Parsers throw ScorerUnavailable on any
// schema violation, including a length mismatch with the request.
std::string toxicity_request_body(std::span<const std::string> texts);
std::string nsp_request_body(std::span<const NspPair> pairs);
std::string qa_request_body(std::span<const QaQuery> items);
std::vector<ToxicityScores> parse_toxicity_response(std::string_view body, std::size_t expected);
std::vector<double> parse_nsp_response(std::string_view body, std::size_t expected);
std::vector<QaAnswer> parse_qa_response(std::string_view body, std::size_t expected);

struct ScorerSet {
  std::shared_ptr<const ToxicityScorer> toxicity;
  std::shared_ptr<const NspScorer> nsp;
  std::shared_ptr<const QaScorer> qa;
};

// Builds clients for the configured endpoints; unconfigured ones stay null.
ScorerSet make_scorers(const ScorerEndpoints& endpoints, const ToxicityLexicon& lexicon);

std::shared_ptr<const ToxicityScorer> make_lexicon_toxicity_scorer(ToxicityLexicon lexicon);
std::shared_ptr<const NspScorer> make_overlap_nsp_scorer();
std::shared_ptr<const QaScorer> make_overlap_qa_scorer();

}  // namespace convqa::analyzers
