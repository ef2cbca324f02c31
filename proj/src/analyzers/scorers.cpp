#include "convqa/analyzers/scorers.hpp"

#include <algorithm>
#include <set>

#include "convqa/core/bundled.hpp"
#include "convqa/core/text.hpp"
#include "convqa/gateway/http_client.hpp"
#include "json.hpp"

namespace convqa::analyzers {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::set<std::string> token_set(std::string_view text) {
  const auto toks = content_tokens(text);
  return {toks.begin(), toks.end()};
}

json parse_body(std::string_view body, std::string_view what) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw ScorerUnavailable(std::string(what) + " response is not JSON: " + e.what());
  }
}

const json& expect_array(const json& doc, std::string_view key, std::size_t expected,
                         std::string_view what) {
  if (!doc.is_object() || !doc.contains(key) || !doc[std::string(key)].is_array()) {
    throw ScorerUnavailable(std::string(what) + " response lacks array '" + std::string(key) + "'");
  }
  const json& arr = doc[std::string(key)];
  if (arr.size() != expected) {
    throw ScorerUnavailable(std::string(what) + " response has " + std::to_string(arr.size()) +
                            " entries, expected " + std::to_string(expected));
  }
  return arr;
}

double unit_number(const json& v, std::string_view what) {
  if (!v.is_number()) throw ScorerUnavailable(std::string(what) + " score is not a number");
  const double d = v.get<double>();
  if (!(d >= 0.0 && d <= 1.0)) throw ScorerUnavailable(std::string(what) + " score outside [0,1]");
  return d;
}

gateway::HttpOptions options_for(const ScorerEndpoints& e) {
  return gateway::HttpOptions{e.timeout, e.max_retries, std::chrono::milliseconds(100)};
}

std::string post(const std::string& url, std::string_view path, const std::string& body,
                 const gateway::HttpOptions& opts) {
  try {
    return gateway::post_json(url, path, body, opts);
  } catch (const std::exception& e) {
    throw ScorerUnavailable(std::string(path) + ": " + e.what());
  }
}

class LexiconToxicity final : public ToxicityScorer {
 public:
  explicit LexiconToxicity(ToxicityLexicon lex) : lex_(std::move(lex)) {}
  std::vector<ToxicityScores> score(std::span<const std::string> texts) const override {
    return score_toxicity_stub(texts, lex_);
  }

 private:
  ToxicityLexicon lex_;
};

class OverlapNsp final : public NspScorer {
 public:
  std::vector<double> score(std::span<const NspPair> pairs) const override {
    std::vector<double> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(nsp_stub(p.context, p.candidate));
    return out;
  }
};

class OverlapQa final : public QaScorer {
 public:
  std::vector<QaAnswer> answer(std::span<const QaQuery> items) const override {
    std::vector<QaAnswer> out;
    out.reserve(items.size());
    for (const auto& q : items) out.push_back(qa_stub(q.question, q.context));
    return out;
  }
};

class HttpToxicity final : public ToxicityScorer {
 public:
  HttpToxicity(std::string url, gateway::HttpOptions opts) : url_(std::move(url)), opts_(opts) {}
  std::vector<ToxicityScores> score(std::span<const std::string> texts) const override {
    if (texts.empty()) return {};
    return parse_toxicity_response(post(url_, "/v1/score/toxicity", toxicity_request_body(texts), opts_),
                                   texts.size());
  }

 private:
  std::string url_;
  gateway::HttpOptions opts_;
};

class HttpNsp final : public NspScorer {
 public:
  HttpNsp(std::string url, gateway::HttpOptions opts) : url_(std::move(url)), opts_(opts) {}
  std::vector<double> score(std::span<const NspPair> pairs) const override {
    if (pairs.empty()) return {};
    return parse_nsp_response(post(url_, "/v1/score/nsp", nsp_request_body(pairs), opts_), pairs.size());
  }

 private:
  std::string url_;
  gateway::HttpOptions opts_;
};

class HttpQa final : public QaScorer {
 public:
  HttpQa(std::string url, gateway::HttpOptions opts) : url_(std::move(url)), opts_(opts) {}
  std::vector<QaAnswer> answer(std::span<const QaQuery> items) const override {
    if (items.empty()) return {};
    return parse_qa_response(post(url_, "/v1/score/qa", qa_request_body(items), opts_), items.size());
  }

 private:
  std::string url_;
  gateway::HttpOptions opts_;
};

bool is_stub(const std::optional<std::string>& url) { return url && url->rfind("stub:", 0) == 0; }

}  // namespace

ToxicityLexicon parse_toxicity_lexicon(std::string_view tsv) {
  ToxicityLexicon lex;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    std::size_t end = tsv.find('\n', pos);
    if (end == std::string_view::npos) end = tsv.size();
    const std::string line = trim(tsv.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::invalid_argument("toxicity lexicon line lacks a TAB: " + line);
    const std::string category = trim(std::string_view(line).substr(tab + 1));
    const auto it = std::find(kToxicityCategories.begin(), kToxicityCategories.end(), category);
    if (it == kToxicityCategories.end()) {
      throw std::invalid_argument("unknown toxicity category '" + category + "'");
    }
    auto tokens = tokenize(std::string_view(line).substr(0, tab));
    if (tokens.empty()) continue;
    lex.entries.push_back({std::move(tokens), static_cast<std::size_t>(it - kToxicityCategories.begin())});
  }
  return lex;
}

const ToxicityLexicon& bundled_toxicity_lexicon() {
  static const ToxicityLexicon lex = parse_toxicity_lexicon(bundled::toxicity_lexicon_tsv());
  return lex;
}

std::vector<ToxicityScores> score_toxicity_stub(std::span<const std::string> texts,
                                                const ToxicityLexicon& lexicon) {
  std::vector<ToxicityScores> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    const auto toks = tokenize(text);
    ToxicityScores s;
    for (const auto& e : lexicon.entries) {
      if (contains_sequence(toks, e.tokens)) s[e.category] = 0.9;
    }
    out.push_back(s);
  }
  return out;
}

double nsp_stub(std::string_view context, std::string_view candidate) {
  return jaccard(token_set(context), token_set(candidate));
}

QaAnswer qa_stub(std::string_view question, std::string_view context) {
  const auto wanted = token_set(question);
  QaAnswer best;
  for (const auto& sentence : split_sentences(context)) {
    bool shares = false;
    for (const auto& t : content_tokens(sentence)) shares = shares || wanted.count(t) > 0;
    if (shares && sentence.size() > best.text.size()) best = {sentence, 1.0};
  }
  return best;
}

std::string toxicity_request_body(std::span<const std::string> texts) {
  ordered_json body;
  body["texts"] = ordered_json::array();
  for (const auto& t : texts) body["texts"].push_back(t);
  return body.dump();
}

std::string nsp_request_body(std::span<const NspPair> pairs) {
  ordered_json body;
  body["pairs"] = ordered_json::array();
  for (const auto& p : pairs) {
    ordered_json item;
    item["context"] = p.context;
    item["candidate"] = p.candidate;
    body["pairs"].push_back(std::move(item));
  }
  return body.dump();
}

std::string qa_request_body(std::span<const QaQuery> items) {
  ordered_json body;
  body["items"] = ordered_json::array();
  for (const auto& q : items) {
    ordered_json item;
    item["question"] = q.question;
    item["context"] = q.context;
    body["items"].push_back(std::move(item));
  }
  return body.dump();
}

std::vector<ToxicityScores> parse_toxicity_response(std::string_view body, std::size_t expected) {
  const json doc = parse_body(body, "toxicity");
  std::vector<ToxicityScores> out;
  for (const auto& entry : expect_array(doc, "scores", expected, "toxicity")) {
    if (!entry.is_object()) throw ScorerUnavailable("toxicity score entry is not an object");
    ToxicityScores s;
    for (std::size_t i = 0; i < kToxicityCategories.size(); ++i) {
      const std::string key(kToxicityCategories[i]);
      if (!entry.contains(key)) throw ScorerUnavailable("toxicity score lacks '" + key + "'");
      s[i] = unit_number(entry[key], "toxicity");
    }
    out.push_back(s);
  }
  return out;
}

std::vector<double> parse_nsp_response(std::string_view body, std::size_t expected) {
  const json doc = parse_body(body, "nsp");
  std::vector<double> out;
  for (const auto& v : expect_array(doc, "p_next", expected, "nsp")) out.push_back(unit_number(v, "nsp"));
  return out;
}

std::vector<QaAnswer> parse_qa_response(std::string_view body, std::size_t expected) {
  const json doc = parse_body(body, "qa");
  std::vector<QaAnswer> out;
  for (const auto& a : expect_array(doc, "answers", expected, "qa")) {
    if (!a.is_object() || !a.contains("text") || !a["text"].is_string() || !a.contains("score")) {
      throw ScorerUnavailable("qa answer must hold string 'text' and number 'score'");
    }
    out.push_back({a["text"].get<std::string>(), unit_number(a["score"], "qa")});
  }
  return out;
}

std::shared_ptr<const ToxicityScorer> make_lexicon_toxicity_scorer(ToxicityLexicon lexicon) {
  return std::make_shared<LexiconToxicity>(std::move(lexicon));
}

std::shared_ptr<const NspScorer> make_overlap_nsp_scorer() { return std::make_shared<OverlapNsp>(); }

std::shared_ptr<const QaScorer> make_overlap_qa_scorer() { return std::make_shared<OverlapQa>(); }

ScorerSet make_scorers(const ScorerEndpoints& endpoints, const ToxicityLexicon& lexicon) {
  ScorerSet set;
  const auto opts = options_for(endpoints);
  if (is_stub(endpoints.toxicity)) set.toxicity = make_lexicon_toxicity_scorer(lexicon);
  else if (endpoints.toxicity) set.toxicity = std::make_shared<HttpToxicity>(*endpoints.toxicity, opts);
  if (is_stub(endpoints.nsp)) set.nsp = make_overlap_nsp_scorer();
  else if (endpoints.nsp) set.nsp = std::make_shared<HttpNsp>(*endpoints.nsp, opts);
  if (is_stub(endpoints.qa)) set.qa = make_overlap_qa_scorer();
  else if (endpoints.qa) set.qa = std::make_shared<HttpQa>(*endpoints.qa, opts);
  return set;
}

}  // namespace convqa::analyzers
