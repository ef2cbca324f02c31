#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace convqa {

enum class Speaker { tester, model };
enum class Phase { provide_info, request_info };
enum class NoiseKind { typo, word_swap, word_drop, synonym };
enum class Outcome { pass, fail, skip };

std::string_view to_string(Speaker s);
std::string_view to_string(Phase p);
std::string_view to_string(NoiseKind k);
std::string_view to_string(Outcome o);

Speaker speaker_from_string(std::string_view s);
Phase phase_from_string(std::string_view s);
NoiseKind noise_kind_from_string(std::string_view s);
Outcome outcome_from_string(std::string_view s);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::typo;
  double fraction = 0.0;
  std::uint64_t rng_stream = 0;

  bool operator==(const NoiseSpec&) const = default;
};

// Marks a tester turn whose prompt came from controlled test data instead of
// the generator.
struct InjectionTag {
  std::string test_id;
  std::string requirement_id;
  Phase phase = Phase::provide_info;
  std::string payload_id;
  std::optional<NoiseSpec> noise_applied;

  bool operator==(const InjectionTag&) const = default;
};

struct Turn {
  std::size_t index = 0;
  Speaker speaker = Speaker::tester;
  std::string text;
  std::optional<InjectionTag> injection;

  bool operator==(const Turn&) const = default;
};

// A test instance that was drawn for a dialog but never realized.
struct SkippedInstance {
  std::string test_instance_id;
  std::string requirement_id;
  std::string reason;

  bool operator==(const SkippedInstance&) const = default;
};

struct Dialog {
  std::string dialog_id;
  std::uint64_t seed = 0;
  std::string model_id;
  std::vector<Turn> turns;
  // Set when generation aborted; such dialogs hold only completed pairs.
  std::optional<std::string> error;
  std::vector<SkippedInstance> skipped;

  bool operator==(const Dialog&) const = default;

  std::size_t model_turn_count() const;
};

class TranscriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws TranscriptError if alternation, non-empty text, tag placement or
// provide-before-request ordering is violated.
void validate_dialog(const Dialog& dialog);

struct Verdict {
  std::string dialog_id;
  std::string model_id;
  std::string requirement_id;
  std::string test_instance_id;
  Outcome outcome = Outcome::skip;
  std::optional<double> score;
  nlohmann::json evidence = nlohmann::json::object();

  bool operator==(const Verdict&) const = default;

  static Verdict pass(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::optional<double> score,
                      nlohmann::json evidence = nlohmann::json::object());
  // `evidence` must carry "turn" or "turns".
  static Verdict fail(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::optional<double> score,
                      nlohmann::json evidence);
  static Verdict skip(std::string dialog_id, std::string model_id, std::string requirement_id,
                      std::string test_instance_id, std::string reason);
};

// Canonical verdict order: (dialog_id, requirement_id, test_instance_id).
bool canonical_less(const Verdict& a, const Verdict& b);
void sort_canonical(std::vector<Verdict>& verdicts);

}  // namespace convqa
