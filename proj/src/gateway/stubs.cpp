#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "convqa/core/bundled.hpp"
#include "convqa/core/rng.hpp"
#include "convqa/core/text.hpp"
#include "convqa/gateway/chat.hpp"

namespace convqa::gateway {
namespace {

constexpr std::array<std::string_view, 8> kFillers = {
    "That sounds interesting.",   "I see what you mean.",     "Thank you for sharing that.",
    "That is a good point.",      "I understand.",            "Tell me more about that.",
    "That makes sense to me.",    "I appreciate your honesty.",
};

// Stutter n-grams are drawn from here; none of these words appear in the
// surrounding frame of a stutter reply.
constexpr std::array<std::string_view, 12> kStutterPool = {
    "really", "truly", "very",  "quite", "so",     "just",
    "simply", "totally", "fully", "deeply", "rather", "pretty",
};

constexpr std::string_view kForgotten = "No, I do not remember that.";

bool is_question(std::string_view text) { return text.find('?') != std::string_view::npos; }

std::size_t count_speaker(std::span<const Turn> history, Speaker s) {
  return static_cast<std::size_t>(
      std::count_if(history.begin(), history.end(), [s](const Turn& t) { return t.speaker == s; }));
}

std::uint64_t reply_seed(const StubSpec& spec, std::string_view dialog_id, std::size_t history_len) {
  return derive_seed(derive_seed(spec.seed, dialog_id), static_cast<std::uint64_t>(history_len));
}

std::string_view filler(std::uint64_t seed) { return kFillers[seed % kFillers.size()]; }

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(pos, end - pos));
    if (!line.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

const std::vector<std::string>& bundled_toxic_phrases() {
  static const std::vector<std::string> phrases = [] {
    std::vector<std::string> out;
    for (const auto& line : split_lines(bundled::toxicity_lexicon_tsv())) {
      out.push_back(line.substr(0, line.find('\t')));
    }
    return out;
  }();
  return phrases;
}

const std::string& last_tester_text(std::span<const Turn> history) {
  if (history.empty() || history.back().speaker != Speaker::tester) {
    throw std::invalid_argument("next_reply requires a history ending with a tester turn");
  }
  return history.back().text;
}

std::string parrot_reply(std::span<const Turn> history) {
  const std::string& latest = last_tester_text(history);
  if (!is_question(latest)) return latest;
  const auto wanted = content_tokens(latest);
  const std::set<std::string> wanted_set(wanted.begin(), wanted.end());
  const Turn* best = nullptr;
  std::size_t best_overlap = 0;
  for (std::size_t i = 0; i + 1 < history.size(); ++i) {
    const Turn& t = history[i];
    if (t.speaker != Speaker::tester || is_question(t.text)) continue;
    const auto toks = content_tokens(t.text);
    const std::set<std::string> have(toks.begin(), toks.end());
    std::size_t overlap = 0;
    for (const auto& w : wanted_set) overlap += have.count(w);
    if (overlap > 0 && overlap >= best_overlap) {
      best = &t;
      best_overlap = overlap;
    }
  }
  return best ? best->text : latest;
}

std::string stutter_reply(const StubSpec& spec, std::uint64_t seed) {
  const std::size_t m = static_cast<std::size_t>(spec.ngram);
  const std::size_t offset = seed % kStutterPool.size();
  std::string gram;
  for (std::size_t i = 0; i < m; ++i) {
    if (i) gram.push_back(' ');
    gram += kStutterPool[(offset + i) % kStutterPool.size()];
  }
  std::string reply = "Well";
  for (int k = 0; k <= spec.times; ++k) reply += " " + gram;
  reply += " indeed.";
  return reply;
}

std::string planter_reply(const StubSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const bool plant = rng.bernoulli(spec.rate);
  std::string reply(kFillers[rng.below(kFillers.size())]);
  if (!plant) return reply;
  const auto& phrases = spec.lexicon.empty() ? bundled_toxic_phrases() : spec.lexicon;
  if (phrases.empty()) return reply;
  std::string phrase = phrases[rng.below(phrases.size())];
  if (!phrase.empty()) phrase[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(phrase[0])));
  return reply + " " + phrase + "!";
}

const std::vector<std::string>& script_or_corpus(const StubSpec& spec) {
  return spec.script.empty() ? interview_corpus() : spec.script;
}

}  // namespace

std::span<const std::string_view> stub_fillers() { return kFillers; }

const std::vector<std::string>& interview_corpus() {
  static const std::vector<std::string> corpus = split_lines(bundled::interview_corpus_txt());
  return corpus;
}

std::string stub_reply(std::string_view dialog_id, std::span<const Turn> history,
                       const StubSpec& spec) {
  const std::string& latest = last_tester_text(history);
  const std::uint64_t seed = reply_seed(spec, dialog_id, history.size());
  switch (spec.kind) {
    case StubKind::echo:
      return latest;
    case StubKind::scripted: {
      const auto& lines = script_or_corpus(spec);
      return lines[count_speaker(history, Speaker::model) % lines.size()];
    }
    case StubKind::parrot:
      return parrot_reply(history);
    case StubKind::amnesiac:
      return is_question(latest) ? std::string(kForgotten) : std::string(filler(seed));
    case StubKind::nagger: {
      const std::size_t reply_number = count_speaker(history, Speaker::model) + 1;
      std::string reply(filler(seed));
      if (reply_number % static_cast<std::size_t>(spec.period) == 0) reply += " " + spec.question;
      return reply;
    }
    case StubKind::stutterer:
      return stutter_reply(spec, seed);
    case StubKind::toxic_planter:
      return planter_reply(spec, seed);
  }
  return latest;
}

std::string stub_generator_prompt(std::string_view dialog_id, std::span<const Turn> history,
                                  const StubSpec& spec) {
  if (!history.empty() && history.back().speaker != Speaker::model) {
    throw std::invalid_argument("generator_prompt requires a history ending with a model turn");
  }
  if (spec.kind == StubKind::scripted) {
    // Sampling without replacement: walk a seeded permutation, cycling once
    // it is exhausted. Only generator-produced prompts advance the walk.
    const auto& lines = script_or_corpus(spec);
    std::vector<std::size_t> order(lines.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(spec.seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const auto produced = static_cast<std::size_t>(std::count_if(
        history.begin(), history.end(),
        [](const Turn& t) { return t.speaker == Speaker::tester && !t.injection; }));
    return lines[order[produced % order.size()]];
  }
  if (history.empty()) return "Hello! Can you tell me a little about yourself?";
  std::vector<Turn> swapped(history.begin(), history.end());
  for (auto& t : swapped) {
    t.speaker = t.speaker == Speaker::tester ? Speaker::model : Speaker::tester;
    t.injection.reset();
  }
  return stub_reply(dialog_id, swapped, spec);
}

}  // namespace convqa::gateway
