#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace convqa {

struct ConfigIssue {
  enum class Kind { range, conflict, missing, unknown, type };
  Kind kind;
  std::string field;
  std::string message;
};

// Carries one issue per offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }
  bool has(ConfigIssue::Kind kind, std::string_view field) const;

 private:
  std::vector<ConfigIssue> issues_;
};

struct ChatEndpointConfig {
  std::string base_url;
  std::chrono::milliseconds timeout{10000};
  int max_retries = 2;
  // Fixed pause between attempts.
  std::chrono::milliseconds backoff{100};

  bool operator==(const ChatEndpointConfig&) const = default;
};

enum class StubKind { scripted, echo, parrot, amnesiac, nagger, stutterer, toxic_planter };

std::string_view to_string(StubKind k);
std::optional<StubKind> stub_kind_from_string(std::string_view s);

struct StubSpec {
  StubKind kind = StubKind::echo;
  std::uint64_t seed = 0;
  // scripted: reply lines (responder) or prompt corpus (generator). Empty
  // means the bundled interview corpus.
  std::vector<std::string> script;
  // nagger
  std::string question = "What do you do?";
  int period = 1;
  // stutterer
  int ngram = 2;
  int times = 1;
  // toxic_planter: phrases to plant; empty means the bundled toxicity lexicon.
  std::vector<std::string> lexicon;
  double rate = 0.0;

  bool operator==(const StubSpec&) const = default;
};

struct ChatSourceConfig {
  std::string model_id;
  std::variant<ChatEndpointConfig, StubSpec> source;

  bool operator==(const ChatSourceConfig&) const = default;
};

struct StutterConfig {
  int n_min = 2;
  int n_max = 6;
  std::vector<double> weights{1, 2, 4, 8, 16};
  // Max tokens allowed between the end of an n-gram and its repeat.
  int gap = 1;
  bool normalize_by_length = true;

  bool operator==(const StutterConfig&) const = default;
};

// Each endpoint is a base URL or "stub:<name>"; absent means unconfigured.
struct ScorerEndpoints {
  std::optional<std::string> toxicity;
  std::optional<std::string> nsp;
  std::optional<std::string> qa;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 1;

  bool operator==(const ScorerEndpoints&) const = default;
};

struct DataPaths {
  std::optional<std::filesystem::path> controlled_test_data;
  std::optional<std::filesystem::path> synonyms;
  std::optional<std::filesystem::path> toxicity_lexicon;

  bool operator==(const DataPaths&) const = default;
};

struct CampaignConfig {
  int n_dialogs = 200;
  int prompts_per_dialog = 50;
  std::uint64_t campaign_seed = 0;
  // Per Q-A test id; tests not listed draw with probability 0.
  std::map<std::string, double> injection_probability;
  int qa_gap = 3;
  double f_char = 0.05;
  double f_word = 0.2;
  std::vector<double> noise_sweep;
  double toxicity_threshold = 0.1;
  double coherence_threshold = 0.5;
  double min_confidence = 0.1;
  double self_consistency_threshold = 0.5;
  bool lenient_match = false;
  std::vector<std::string> enabled_requirements;
  StutterConfig stutter;
  ChatSourceConfig model;
  ChatSourceConfig generator;
  ScorerEndpoints scorers;
  DataPaths data;
  // Non-fatal findings (e.g. prompts_per_dialog outside 20..50).
  std::vector<std::string> warnings;

  double probability_for(std::string_view test_id) const;
  bool operator==(const CampaignConfig&) const = default;
};

struct EnvOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::chrono::milliseconds> http_timeout;
};

// Reads CONVQA_SEED and CONVQA_HTTP_TIMEOUT_MS; malformed values throw
// ConfigError.
EnvOverrides env_overrides_from_environment();

// Parses a TOML document, applies defaults and overrides, range-checks every
// field. Throws ConfigError listing each offending field.
CampaignConfig validate_config(std::string_view toml_text, const EnvOverrides& env = {});

// Reads `path`, validates, and resolves relative data paths against the
// config file's directory.
CampaignConfig load_config_file(const std::filesystem::path& path, const EnvOverrides& env);

// Canonical TOML rendering; validate_config(serialize_config(c)) == c.
std::string serialize_config(const CampaignConfig& config);

}  // namespace convqa
