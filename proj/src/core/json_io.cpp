#include "convqa/core/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace convqa {

using nlohmann::json;

json to_json(const NoiseSpec& n) {
  return json{{"kind", to_string(n.kind)}, {"fraction", n.fraction}, {"rng_stream", n.rng_stream}};
}

json to_json(const InjectionTag& tag) {
  json j{{"test_id", tag.test_id},
         {"requirement_id", tag.requirement_id},
         {"phase", to_string(tag.phase)},
         {"payload_id", tag.payload_id},
         {"noise_applied", nullptr}};
  if (tag.noise_applied) j["noise_applied"] = to_json(*tag.noise_applied);
  return j;
}

json to_json(const Turn& turn) {
  json j{{"index", turn.index},
         {"speaker", to_string(turn.speaker)},
         {"text", turn.text},
         {"injection", nullptr}};
  if (turn.injection) j["injection"] = to_json(*turn.injection);
  return j;
}

json to_json(const Dialog& dialog) {
  json turns = json::array();
  for (const auto& t : dialog.turns) turns.push_back(to_json(t));
  json j{{"dialog_id", dialog.dialog_id},
         {"seed", dialog.seed},
         {"model_id", dialog.model_id},
         {"turns", std::move(turns)}};
  if (dialog.error) j["error"] = *dialog.error;
  if (!dialog.skipped.empty()) {
    json skipped = json::array();
    for (const auto& s : dialog.skipped) {
      skipped.push_back({{"test_instance_id", s.test_instance_id},
                         {"requirement_id", s.requirement_id},
                         {"reason", s.reason}});
    }
    j["skipped"] = std::move(skipped);
  }
  return j;
}

json to_json(const Verdict& v) {
  json j{{"dialog_id", v.dialog_id},
         {"model_id", v.model_id},
         {"requirement_id", v.requirement_id},
         {"test_instance_id", v.test_instance_id},
         {"outcome", to_string(v.outcome)},
         {"score", nullptr},
         {"evidence", v.evidence}};
  if (v.score) j["score"] = *v.score;
  return j;
}

NoiseSpec noise_from_json(const json& j) {
  NoiseSpec n;
  n.kind = noise_kind_from_string(j.at("kind").get<std::string>());
  n.fraction = j.at("fraction").get<double>();
  n.rng_stream = j.at("rng_stream").get<std::uint64_t>();
  return n;
}

InjectionTag tag_from_json(const json& j) {
  InjectionTag tag;
  tag.test_id = j.at("test_id").get<std::string>();
  tag.requirement_id = j.at("requirement_id").get<std::string>();
  tag.phase = phase_from_string(j.at("phase").get<std::string>());
  tag.payload_id = j.at("payload_id").get<std::string>();
  if (j.contains("noise_applied") && !j["noise_applied"].is_null()) {
    tag.noise_applied = noise_from_json(j["noise_applied"]);
  }
  return tag;
}

Turn turn_from_json(const json& j) {
  Turn t;
  t.index = j.at("index").get<std::size_t>();
  t.speaker = speaker_from_string(j.at("speaker").get<std::string>());
  t.text = j.at("text").get<std::string>();
  if (j.contains("injection") && !j["injection"].is_null()) t.injection = tag_from_json(j["injection"]);
  return t;
}

Dialog dialog_from_json(const json& j) {
  Dialog d;
  d.dialog_id = j.at("dialog_id").get<std::string>();
  d.seed = j.at("seed").get<std::uint64_t>();
  d.model_id = j.at("model_id").get<std::string>();
  for (const auto& t : j.at("turns")) d.turns.push_back(turn_from_json(t));
  if (j.contains("error")) d.error = j["error"].get<std::string>();
  if (j.contains("skipped")) {
    for (const auto& s : j["skipped"]) {
      d.skipped.push_back({s.at("test_instance_id").get<std::string>(),
                           s.at("requirement_id").get<std::string>(),
                           s.at("reason").get<std::string>()});
    }
  }
  validate_dialog(d);
  return d;
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.dialog_id = j.at("dialog_id").get<std::string>();
  v.model_id = j.at("model_id").get<std::string>();
  v.requirement_id = j.at("requirement_id").get<std::string>();
  v.test_instance_id = j.at("test_instance_id").get<std::string>();
  v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  if (!j.at("score").is_null()) v.score = j["score"].get<double>();
  v.evidence = j.at("evidence");
  if (v.outcome == Outcome::skip && !v.evidence.contains("reason")) {
    throw TranscriptError("skip verdict without reason");
  }
  return v;
}

std::string to_line(const Dialog& dialog) { return to_json(dialog).dump(); }
std::string to_line(const Verdict& verdict) { return to_json(verdict).dump(); }

namespace {

template <typename T, typename F>
std::vector<T> parse_lines(std::string_view text, F&& parse_one) {
  std::vector<T> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse_one(json::parse(line)));
    } catch (const std::exception& e) {
      throw TranscriptError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<Dialog> parse_transcripts(std::string_view text) {
  return parse_lines<Dialog>(text, [](const json& j) { return dialog_from_json(j); });
}

std::vector<Verdict> parse_verdicts(std::string_view text) {
  return parse_lines<Verdict>(text, [](const json& j) { return verdict_from_json(j); });
}

std::string serialize_transcripts(const std::vector<Dialog>& dialogs) {
  std::string out;
  for (const auto& d : dialogs) {
    out += to_line(d);
    out.push_back('\n');
  }
  return out;
}

std::string serialize_verdicts(const std::vector<Verdict>& verdicts) {
  std::string out;
  for (const auto& v : verdicts) {
    out += to_line(v);
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace convqa
