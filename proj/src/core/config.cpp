#include "convqa/core/config.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "convqa/core/registry.hpp"
#include "toml.hpp"

namespace convqa {
namespace {

using Kind = ConfigIssue::Kind;

std::string describe(const std::vector<ConfigIssue>& issues) {
  std::string msg = "invalid configuration:";
  for (const auto& i : issues) msg += "\n  " + i.field + ": " + i.message;
  return msg;
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty() || s.size() > 20) return false;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    const std::uint64_t d = static_cast<std::uint64_t>(c - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) return false;
    v = v * 10 + d;
  }
  out = v;
  return true;
}

// Walks one TOML table, recording issues instead of throwing so that every
// offending field is reported at once.
class TableReader {
 public:
  TableReader(const toml::table* table, std::string prefix, std::vector<ConfigIssue>& issues)
      : table_(table), prefix_(std::move(prefix)), issues_(issues) {}

  std::string path(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  const toml::node* node(std::string_view key) {
    seen_.insert(std::string(key));
    return table_ ? table_->get(key) : nullptr;
  }

  void issue(Kind kind, std::string_view key, std::string message) {
    issues_.push_back({kind, path(key), std::move(message)});
  }

  std::optional<std::int64_t> integer(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    if (auto v = n->value_exact<std::int64_t>()) return v;
    issue(Kind::type, key, "expected an integer");
    return std::nullopt;
  }

  std::optional<double> real(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    return as_real(*n, key);
  }

  std::optional<double> as_real(const toml::node& n, std::string_view key) {
    if (auto v = n.value_exact<double>()) return v;
    if (auto v = n.value_exact<std::int64_t>()) return static_cast<double>(*v);
    issue(Kind::type, key, "expected a number");
    return std::nullopt;
  }

  std::optional<bool> boolean(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    if (auto v = n->value_exact<bool>()) return v;
    issue(Kind::type, key, "expected a boolean");
    return std::nullopt;
  }

  std::optional<std::string> string(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    if (auto v = n->value_exact<std::string>()) return v;
    issue(Kind::type, key, "expected a string");
    return std::nullopt;
  }

  std::optional<std::vector<std::string>> strings(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    const auto* arr = n->as_array();
    std::vector<std::string> out;
    bool ok = arr != nullptr;
    if (arr) {
      for (const auto& el : *arr) {
        auto v = el.value_exact<std::string>();
        if (!v) ok = false;
        else out.push_back(*v);
      }
    }
    if (!ok) {
      issue(Kind::type, key, "expected an array of strings");
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::vector<double>> reals(std::string_view key) {
    const auto* n = node(key);
    if (!n) return std::nullopt;
    const auto* arr = n->as_array();
    if (!arr) {
      issue(Kind::type, key, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& el : *arr) {
      auto v = as_real(el, key);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  const toml::table* table(std::string_view key) {
    const auto* n = node(key);
    if (!n) return nullptr;
    if (const auto* t = n->as_table()) return t;
    issue(Kind::type, key, "expected a table");
    return nullptr;
  }

  // Reports keys that were never looked up.
  void finish() {
    if (!table_) return;
    for (auto&& [k, v] : *table_) {
      if (!seen_.contains(std::string(k.str()))) issue(Kind::unknown, k.str(), "unknown field");
    }
  }

  void unit_interval(std::string_view key, double v) {
    if (!(v >= 0.0 && v <= 1.0)) issue(Kind::range, key, "must be within [0, 1]");
  }

 private:
  const toml::table* table_;
  std::string prefix_;
  std::vector<ConfigIssue>& issues_;
  std::set<std::string> seen_;
};

void read_http(TableReader& r, ChatEndpointConfig& http) {
  if (auto v = r.string("base_url")) http.base_url = *v;
  if (http.base_url.rfind("http://", 0) != 0) {
    r.issue(Kind::range, "base_url", "must be an http:// URL");
  }
  if (auto v = r.integer("timeout_ms")) {
    if (*v <= 0) r.issue(Kind::range, "timeout_ms", "must be > 0");
    http.timeout = std::chrono::milliseconds(*v);
  }
  if (auto v = r.integer("max_retries")) {
    if (*v < 0 || *v > 20) r.issue(Kind::range, "max_retries", "must be within [0, 20]");
    http.max_retries = static_cast<int>(*v);
  }
  if (auto v = r.integer("backoff_ms")) {
    if (*v < 0) r.issue(Kind::range, "backoff_ms", "must be >= 0");
    http.backoff = std::chrono::milliseconds(*v);
  }
  r.finish();
}

void read_stub(TableReader& r, StubSpec& stub) {
  if (auto v = r.string("kind")) {
    if (auto k = stub_kind_from_string(*v)) stub.kind = *k;
    else r.issue(Kind::range, "kind", "unknown stub kind '" + *v + "'");
  } else {
    r.issue(Kind::missing, "kind", "stub kind is required");
  }
  if (auto v = r.integer("seed")) {
    if (*v < 0) r.issue(Kind::range, "seed", "must be >= 0");
    stub.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = r.strings("script")) stub.script = *v;
  if (auto v = r.string("question")) stub.question = *v;
  if (auto v = r.integer("period")) {
    if (*v < 1) r.issue(Kind::range, "period", "must be >= 1");
    stub.period = static_cast<int>(*v);
  }
  if (auto v = r.integer("ngram")) {
    if (*v < 1 || *v > 8) r.issue(Kind::range, "ngram", "must be within [1, 8]");
    stub.ngram = static_cast<int>(*v);
  }
  if (auto v = r.integer("times")) {
    if (*v < 1 || *v > 100) r.issue(Kind::range, "times", "must be within [1, 100]");
    stub.times = static_cast<int>(*v);
  }
  if (auto v = r.strings("lexicon")) stub.lexicon = *v;
  if (auto v = r.real("rate")) {
    r.unit_interval("rate", *v);
    stub.rate = *v;
  }
  if (stub.kind == StubKind::nagger && stub.question.find('?') == std::string::npos) {
    r.issue(Kind::range, "question", "nagger question must end with '?'");
  }
  r.finish();
}

void read_source(TableReader& parent, std::string_view key, ChatSourceConfig& source,
                 std::vector<ConfigIssue>& issues) {
  const auto* t = parent.table(key);
  if (!t) return;
  TableReader r(t, parent.path(key), issues);
  if (auto v = r.string("model_id")) source.model_id = *v;
  if (source.model_id.empty()) r.issue(Kind::missing, "model_id", "must be a non-empty string");
  const auto* stub_t = r.table("stub");
  const auto* http_t = r.table("http");
  if ((stub_t != nullptr) == (http_t != nullptr)) {
    r.issue(Kind::conflict, "stub", "exactly one of [stub] or [http] must be given");
  }
  if (stub_t) {
    StubSpec stub;
    TableReader sr(stub_t, r.path("stub"), issues);
    read_stub(sr, stub);
    source.source = stub;
  } else if (http_t) {
    ChatEndpointConfig http;
    TableReader hr(http_t, r.path("http"), issues);
    read_http(hr, http);
    source.source = http;
  }
  r.finish();
}

void read_scorer_url(TableReader& r, std::string_view key, std::string_view stub_name,
                     std::optional<std::string>& out) {
  auto v = r.string(key);
  if (!v) return;
  const bool stub = *v == "stub:" + std::string(stub_name);
  if (!stub && v->rfind("http://", 0) != 0) {
    r.issue(Kind::range, key, "must be an http:// URL or 'stub:" + std::string(stub_name) + "'");
  }
  out = *v;
}

std::vector<std::string> qa_ids() {
  return registry_defaults().enabled_qa_ids();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

bool ConfigError::has(ConfigIssue::Kind kind, std::string_view field) const {
  for (const auto& i : issues_) {
    if (i.kind == kind && i.field == field) return true;
  }
  return false;
}

std::string_view to_string(StubKind k) {
  switch (k) {
    case StubKind::scripted: return "scripted";
    case StubKind::echo: return "echo";
    case StubKind::parrot: return "parrot";
    case StubKind::amnesiac: return "amnesiac";
    case StubKind::nagger: return "nagger";
    case StubKind::stutterer: return "stutterer";
    case StubKind::toxic_planter: return "toxic_planter";
  }
  return "echo";
}

std::optional<StubKind> stub_kind_from_string(std::string_view s) {
  for (auto k : {StubKind::scripted, StubKind::echo, StubKind::parrot, StubKind::amnesiac,
                 StubKind::nagger, StubKind::stutterer, StubKind::toxic_planter}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

double CampaignConfig::probability_for(std::string_view test_id) const {
  auto it = injection_probability.find(std::string(test_id));
  return it == injection_probability.end() ? 0.0 : it->second;
}

EnvOverrides env_overrides_from_environment() {
  EnvOverrides env;
  std::vector<ConfigIssue> issues;
  if (const char* s = std::getenv("CONVQA_SEED")) {
    std::uint64_t v = 0;
    if (parse_u64(s, v)) env.seed = v;
    else issues.push_back({Kind::range, "CONVQA_SEED", "must be a decimal u64"});
  }
  if (const char* s = std::getenv("CONVQA_HTTP_TIMEOUT_MS")) {
    std::uint64_t v = 0;
    if (parse_u64(s, v) && v > 0 && v <= 86'400'000) {
      env.http_timeout = std::chrono::milliseconds(v);
    } else {
      issues.push_back({Kind::range, "CONVQA_HTTP_TIMEOUT_MS", "must be a positive decimal"});
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return env;
}

CampaignConfig validate_config(std::string_view toml_text, const EnvOverrides& env) {
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " at line " << e.source().begin.line;
    throw ConfigError({{Kind::type, "<document>", msg.str()}});
  }

  const auto registry = registry_defaults();
  const auto all_qa = qa_ids();
  std::vector<ConfigIssue> issues;
  TableReader r(&doc, "", issues);
  CampaignConfig c;
  StubSpec echo;
  echo.kind = StubKind::echo;
  StubSpec scripted;
  scripted.kind = StubKind::scripted;
  c.model = {"echo-stub", echo};
  c.generator = {"scripted-corpus", scripted};

  if (auto v = r.integer("n_dialogs")) {
    if (*v < 1 || *v > 10'000'000) r.issue(Kind::range, "n_dialogs", "must be a positive integer");
    c.n_dialogs = static_cast<int>(*v);
  }
  if (auto v = r.integer("prompts_per_dialog")) {
    if (*v < 1 || *v > 1000) r.issue(Kind::range, "prompts_per_dialog", "must be within [1, 1000]");
    c.prompts_per_dialog = static_cast<int>(*v);
  }
  if (const auto* n = r.node("campaign_seed")) {
    std::uint64_t seed = 0;
    if (auto i = n->value_exact<std::int64_t>(); i && *i >= 0) {
      c.campaign_seed = static_cast<std::uint64_t>(*i);
    } else if (auto s = n->value_exact<std::string>(); s && parse_u64(*s, seed)) {
      c.campaign_seed = seed;
    } else {
      r.issue(Kind::range, "campaign_seed", "must be a non-negative integer or decimal string");
    }
  }
  if (auto v = r.integer("qa_gap")) {
    if (*v < 0 || *v > 1000) r.issue(Kind::range, "qa_gap", "must be a non-negative integer");
    c.qa_gap = static_cast<int>(*v);
  }

  for (auto [key, field] : {std::pair{"f_char", &c.f_char},
                            std::pair{"f_word", &c.f_word},
                            std::pair{"toxicity_threshold", &c.toxicity_threshold},
                            std::pair{"coherence_threshold", &c.coherence_threshold},
                            std::pair{"min_confidence", &c.min_confidence},
                            std::pair{"self_consistency_threshold", &c.self_consistency_threshold}}) {
    if (auto v = r.real(key)) {
      r.unit_interval(key, *v);
      *field = *v;
    }
  }
  if (auto v = r.reals("noise_sweep")) {
    for (double f : *v) r.unit_interval("noise_sweep", f);
    c.noise_sweep = *v;
  }
  if (auto v = r.boolean("lenient_match")) c.lenient_match = *v;

  for (const auto& id : all_qa) c.injection_probability[id] = 0.05;
  if (const auto* n = r.node("injection_probability")) {
    if (const auto* t = n->as_table()) {
      for (auto& [id, p] : c.injection_probability) p = 0.0;
      TableReader pr(t, "injection_probability", issues);
      for (const auto& id : all_qa) {
        if (auto p = pr.real(id)) {
          if (!(*p >= 0.0 && *p <= 1.0)) {
            issues.push_back({Kind::range, "injection_probability", id + " must be within [0, 1]"});
          }
          c.injection_probability[id] = *p;
        }
      }
      pr.finish();
    } else if (auto p = r.as_real(*n, "injection_probability")) {
      r.unit_interval("injection_probability", *p);
      for (auto& [id, q] : c.injection_probability) q = *p;
    }
  }

  c.enabled_requirements = registry.enabled_ids();
  if (const auto* t = r.table("requirements")) {
    TableReader rr(t, "requirements", issues);
    if (auto ids = rr.strings("enabled")) {
      std::set<std::string> wanted;
      for (const auto& id : *ids) {
        if (!registry.contains(id)) rr.issue(Kind::unknown, "enabled", "unknown requirement " + id);
        wanted.insert(id);
      }
      c.enabled_requirements.clear();
      for (const auto& e : registry.entries()) {
        if (wanted.contains(e.id)) c.enabled_requirements.push_back(e.id);
      }
    }
    rr.finish();
  }

  if (const auto* t = r.table("stutter")) {
    TableReader sr(t, "stutter", issues);
    if (auto v = sr.integer("n_min")) c.stutter.n_min = static_cast<int>(*v);
    if (auto v = sr.integer("n_max")) c.stutter.n_max = static_cast<int>(*v);
    if (auto v = sr.reals("weights")) c.stutter.weights = *v;
    if (auto v = sr.integer("gap")) {
      if (*v < 0 || *v > 100) sr.issue(Kind::range, "gap", "must be within [0, 100]");
      c.stutter.gap = static_cast<int>(*v);
    }
    if (auto v = sr.boolean("normalize_by_length")) c.stutter.normalize_by_length = *v;
    if (c.stutter.n_min < 1 || c.stutter.n_max > 32 || c.stutter.n_min > c.stutter.n_max) {
      sr.issue(Kind::range, "n_min", "need 1 <= n_min <= n_max <= 32");
    } else if (c.stutter.weights.size() !=
               static_cast<std::size_t>(c.stutter.n_max - c.stutter.n_min + 1)) {
      sr.issue(Kind::conflict, "weights", "need one weight per n in [n_min, n_max]");
    }
    for (std::size_t i = 1; i < c.stutter.weights.size(); ++i) {
      if (!(c.stutter.weights[i] > c.stutter.weights[i - 1])) {
        sr.issue(Kind::range, "weights", "must be strictly increasing in n");
        break;
      }
    }
    sr.finish();
  }

  read_source(r, "model", c.model, issues);
  read_source(r, "generator", c.generator, issues);

  if (const auto* t = r.table("scorers")) {
    TableReader sr(t, "scorers", issues);
    read_scorer_url(sr, "toxicity", "lexicon", c.scorers.toxicity);
    read_scorer_url(sr, "nsp", "overlap", c.scorers.nsp);
    read_scorer_url(sr, "qa", "overlap", c.scorers.qa);
    if (auto v = sr.integer("timeout_ms")) {
      if (*v <= 0) sr.issue(Kind::range, "timeout_ms", "must be > 0");
      c.scorers.timeout = std::chrono::milliseconds(*v);
    }
    if (auto v = sr.integer("max_retries")) {
      if (*v < 0 || *v > 20) sr.issue(Kind::range, "max_retries", "must be within [0, 20]");
      c.scorers.max_retries = static_cast<int>(*v);
    }
    sr.finish();
  }

  if (const auto* t = r.table("data")) {
    TableReader dr(t, "data", issues);
    if (auto v = dr.string("controlled_test_data")) c.data.controlled_test_data = *v;
    if (auto v = dr.string("synonyms")) c.data.synonyms = *v;
    if (auto v = dr.string("toxicity_lexicon")) c.data.toxicity_lexicon = *v;
    dr.finish();
  }

  r.finish();

  const auto enabled = registry.restricted_to(c.enabled_requirements);
  if (!enabled.enabled_qa_ids().empty() && c.qa_gap + 2 > c.prompts_per_dialog) {
    issues.push_back({Kind::conflict, "qa_gap",
                      "qa_gap + 2 must not exceed prompts_per_dialog when Q-A tests are enabled"});
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));

  if (env.seed) c.campaign_seed = *env.seed;
  if (env.http_timeout) {
    for (auto* src : {&c.model, &c.generator}) {
      if (auto* http = std::get_if<ChatEndpointConfig>(&src->source)) http->timeout = *env.http_timeout;
    }
    c.scorers.timeout = *env.http_timeout;
  }

  if (c.prompts_per_dialog < 20 || c.prompts_per_dialog > 50) {
    c.warnings.push_back("prompts_per_dialog outside the validated range [20, 50]");
  }
  auto needs = [&](std::initializer_list<const char*> ids) {
    for (const char* id : ids) {
      if (enabled.is_enabled(id)) return true;
    }
    return false;
  };
  if (!c.scorers.toxicity && needs({"P2"})) {
    c.warnings.push_back("no toxicity scorer configured; P2 verdicts will be skipped");
  }
  if (!c.scorers.nsp && needs({"I2", "I3"})) {
    c.warnings.push_back("no nsp scorer configured; I2/I3 verdicts will be skipped");
  }
  if (!c.scorers.qa && !enabled.enabled_qa_ids().empty()) {
    c.warnings.push_back("no qa scorer configured; open Q-A verdicts will be skipped");
  }
  return c;
}

CampaignConfig load_config_file(const std::filesystem::path& path, const EnvOverrides& env) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({{Kind::missing, "<file>", "cannot read " + path.string()}});
  std::ostringstream buf;
  buf << in.rdbuf();
  CampaignConfig c = validate_config(buf.str(), env);
  const auto base = path.parent_path();
  for (auto* p : {&c.data.controlled_test_data, &c.data.synonyms, &c.data.toxicity_lexicon}) {
    if (*p && p->value().is_relative()) *p = base / p->value();
  }
  return c;
}

namespace {

toml::table source_table(const ChatSourceConfig& s) {
  toml::table t;
  t.insert("model_id", s.model_id);
  if (const auto* http = std::get_if<ChatEndpointConfig>(&s.source)) {
    toml::table h;
    h.insert("base_url", http->base_url);
    h.insert("timeout_ms", static_cast<std::int64_t>(http->timeout.count()));
    h.insert("max_retries", static_cast<std::int64_t>(http->max_retries));
    h.insert("backoff_ms", static_cast<std::int64_t>(http->backoff.count()));
    t.insert("http", std::move(h));
  } else {
    const auto& stub = std::get<StubSpec>(s.source);
    toml::table st;
    st.insert("kind", std::string(to_string(stub.kind)));
    st.insert("seed", static_cast<std::int64_t>(stub.seed));
    toml::array script;
    for (const auto& line : stub.script) script.push_back(line);
    st.insert("script", std::move(script));
    st.insert("question", stub.question);
    st.insert("period", static_cast<std::int64_t>(stub.period));
    st.insert("ngram", static_cast<std::int64_t>(stub.ngram));
    st.insert("times", static_cast<std::int64_t>(stub.times));
    toml::array lexicon;
    for (const auto& phrase : stub.lexicon) lexicon.push_back(phrase);
    st.insert("lexicon", std::move(lexicon));
    st.insert("rate", stub.rate);
    t.insert("stub", std::move(st));
  }
  return t;
}

toml::array real_array(const std::vector<double>& values) {
  toml::array a;
  for (double v : values) a.push_back(v);
  return a;
}

}  // namespace

std::string serialize_config(const CampaignConfig& c) {
  toml::table t;
  t.insert("n_dialogs", static_cast<std::int64_t>(c.n_dialogs));
  t.insert("prompts_per_dialog", static_cast<std::int64_t>(c.prompts_per_dialog));
  if (c.campaign_seed <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    t.insert("campaign_seed", static_cast<std::int64_t>(c.campaign_seed));
  } else {
    t.insert("campaign_seed", std::to_string(c.campaign_seed));
  }
  t.insert("qa_gap", static_cast<std::int64_t>(c.qa_gap));
  t.insert("f_char", c.f_char);
  t.insert("f_word", c.f_word);
  t.insert("noise_sweep", real_array(c.noise_sweep));
  t.insert("toxicity_threshold", c.toxicity_threshold);
  t.insert("coherence_threshold", c.coherence_threshold);
  t.insert("min_confidence", c.min_confidence);
  t.insert("self_consistency_threshold", c.self_consistency_threshold);
  t.insert("lenient_match", c.lenient_match);

  toml::table probs;
  for (const auto& [id, p] : c.injection_probability) probs.insert(id, p);
  t.insert("injection_probability", std::move(probs));

  toml::table reqs;
  toml::array enabled;
  for (const auto& id : c.enabled_requirements) enabled.push_back(id);
  reqs.insert("enabled", std::move(enabled));
  t.insert("requirements", std::move(reqs));

  toml::table stutter;
  stutter.insert("n_min", static_cast<std::int64_t>(c.stutter.n_min));
  stutter.insert("n_max", static_cast<std::int64_t>(c.stutter.n_max));
  stutter.insert("weights", real_array(c.stutter.weights));
  stutter.insert("gap", static_cast<std::int64_t>(c.stutter.gap));
  stutter.insert("normalize_by_length", c.stutter.normalize_by_length);
  t.insert("stutter", std::move(stutter));

  t.insert("model", source_table(c.model));
  t.insert("generator", source_table(c.generator));

  toml::table scorers;
  if (c.scorers.toxicity) scorers.insert("toxicity", *c.scorers.toxicity);
  if (c.scorers.nsp) scorers.insert("nsp", *c.scorers.nsp);
  if (c.scorers.qa) scorers.insert("qa", *c.scorers.qa);
  scorers.insert("timeout_ms", static_cast<std::int64_t>(c.scorers.timeout.count()));
  scorers.insert("max_retries", static_cast<std::int64_t>(c.scorers.max_retries));
  t.insert("scorers", std::move(scorers));

  toml::table data;
  if (c.data.controlled_test_data) data.insert("controlled_test_data", c.data.controlled_test_data->generic_string());
  if (c.data.synonyms) data.insert("synonyms", c.data.synonyms->generic_string());
  if (c.data.toxicity_lexicon) data.insert("toxicity_lexicon", c.data.toxicity_lexicon->generic_string());
  t.insert("data", std::move(data));

  std::ostringstream out;
  out << t << '\n';
  return out.str();
}

}  // namespace convqa
