#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/types.hpp"
#include "json.hpp"

// JSON mapping for transcripts and verdicts. Objects are emitted with sorted
// keys so a value always serializes to the same bytes.
namespace convqa {

nlohmann::json to_json(const NoiseSpec& n);
nlohmann::json to_json(const InjectionTag& tag);
nlohmann::json to_json(const Turn& turn);
nlohmann::json to_json(const Dialog& dialog);
nlohmann::json to_json(const Verdict& verdict);

NoiseSpec noise_from_json(const nlohmann::json& j);
InjectionTag tag_from_json(const nlohmann::json& j);
Turn turn_from_json(const nlohmann::json& j);
// Validates turn invariants.
Dialog dialog_from_json(const nlohmann::json& j);
Verdict verdict_from_json(const nlohmann::json& j);

std::string to_line(const Dialog& dialog);
std::string to_line(const Verdict& verdict);

// Parse one JSON-lines document; errors carry the 1-based line number.
std::vector<Dialog> parse_transcripts(std::string_view text);
std::vector<Verdict> parse_verdicts(std::string_view text);

std::string serialize_transcripts(const std::vector<Dialog>& dialogs);
std::string serialize_verdicts(const std::vector<Verdict>& verdicts);

std::string read_file(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace convqa
