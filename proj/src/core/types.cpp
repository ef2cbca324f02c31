#include "convqa/core/types.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "convqa/core/text.hpp"

namespace convqa {

std::string_view to_string(Speaker s) { return s == Speaker::tester ? "tester" : "model"; }

std::string_view to_string(Phase p) {
  return p == Phase::provide_info ? "provide_info" : "request_info";
}

std::string_view to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::typo: return "typo";
    case NoiseKind::word_swap: return "word_swap";
    case NoiseKind::word_drop: return "word_drop";
    case NoiseKind::synonym: return "synonym";
  }
  return "typo";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skip: return "skip";
  }
  return "skip";
}

Speaker speaker_from_string(std::string_view s) {
  if (s == "tester") return Speaker::tester;
  if (s == "model") return Speaker::model;
  throw TranscriptError("unknown speaker '" + std::string(s) + "'");
}

Phase phase_from_string(std::string_view s) {
  if (s == "provide_info") return Phase::provide_info;
  if (s == "request_info") return Phase::request_info;
  throw TranscriptError("unknown phase '" + std::string(s) + "'");
}

NoiseKind noise_kind_from_string(std::string_view s) {
  if (s == "typo") return NoiseKind::typo;
  if (s == "word_swap") return NoiseKind::word_swap;
  if (s == "word_drop") return NoiseKind::word_drop;
  if (s == "synonym") return NoiseKind::synonym;
  throw TranscriptError("unknown noise kind '" + std::string(s) + "'");
}

Outcome outcome_from_string(std::string_view s) {
  if (s == "pass") return Outcome::pass;
  if (s == "fail") return Outcome::fail;
  if (s == "skip") return Outcome::skip;
  throw TranscriptError("unknown outcome '" + std::string(s) + "'");
}

std::size_t Dialog::model_turn_count() const {
  return static_cast<std::size_t>(std::count_if(
      turns.begin(), turns.end(), [](const Turn& t) { return t.speaker == Speaker::model; }));
}

void validate_dialog(const Dialog& dialog) {
  auto fail = [&](const std::string& what) {
    throw TranscriptError("dialog '" + dialog.dialog_id + "': " + what);
  };
  if (dialog.dialog_id.empty()) throw TranscriptError("dialog with empty dialog_id");
  if (dialog.turns.size() % 2 != 0) fail("tester and model turn counts differ");

  std::set<std::string> provided;
  for (std::size_t i = 0; i < dialog.turns.size(); ++i) {
    const Turn& turn = dialog.turns[i];
    const std::string at = "turn " + std::to_string(i);
    if (turn.index != i) fail(at + " has index " + std::to_string(turn.index));
    const Speaker expected = i % 2 == 0 ? Speaker::tester : Speaker::model;
    if (turn.speaker != expected) fail(at + " breaks tester/model alternation");
    if (trim(turn.text).empty()) fail(at + " has empty text");
    if (!turn.injection) continue;
    if (turn.speaker != Speaker::tester) fail(at + " is a model turn carrying an injection tag");
    if (turn.injection->phase == Phase::provide_info) {
      provided.insert(turn.injection->test_id);
    } else if (!provided.contains(turn.injection->test_id)) {
      fail(at + " requests '" + turn.injection->test_id + "' before it was provided");
    }
  }
}

Verdict Verdict::pass(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::optional<double> score,
                      nlohmann::json evidence) {
  return Verdict{std::move(dialog_id),        std::move(model_id), std::move(requirement_id),
                 std::move(test_instance_id), Outcome::pass,       score,
                 std::move(evidence)};
}

Verdict Verdict::fail(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::optional<double> score,
                      nlohmann::json evidence) {
  if (!evidence.is_object() || (!evidence.contains("turn") && !evidence.contains("turns"))) {
    throw std::invalid_argument("fail verdict for " + requirement_id +
                                " must locate at least one turn");
  }
  return Verdict{std::move(dialog_id),        std::move(model_id), std::move(requirement_id),
                 std::move(test_instance_id), Outcome::fail,       score,
                 std::move(evidence)};
}

Verdict Verdict::skip(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::string reason) {
  if (reason.empty()) throw std::invalid_argument("skip verdict requires a reason");
  return Verdict{std::move(dialog_id),
                 std::move(model_id),
                 std::move(requirement_id),
                 std::move(test_instance_id),
                 Outcome::skip,
                 std::nullopt,
                 nlohmann::json{{"reason", std::move(reason)}}};
}

bool canonical_less(const Verdict& a, const Verdict& b) {
  return std::tie(a.dialog_id, a.requirement_id, a.test_instance_id) <
         std::tie(b.dialog_id, b.requirement_id, b.test_instance_id);
}

void sort_canonical(std::vector<Verdict>& verdicts) {
  std::stable_sort(verdicts.begin(), verdicts.end(), canonical_less);
}

}  // namespace convqa
