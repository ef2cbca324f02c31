#pragma once

#include <string>
#include <string_view>

#include "convqa/core/config.hpp"
#include "convqa/core/types.hpp"

namespace convqa::testing {

inline StubSpec stub(StubKind kind, std::uint64_t seed = 0) {
  StubSpec s;
  s.kind = kind;
  s.seed = seed;
  return s;
}

inline Turn turn(std::size_t index, Speaker speaker, std::string text) {
  Turn t;
  t.index = index;
  t.speaker = speaker;
  t.text = std::move(text);
  return t;
}

// Alternating tester/model dialog from the given texts.
inline Dialog dialog_of(std::initializer_list<std::string> texts, std::string id = "d") {
  Dialog d;
  d.dialog_id = std::move(id);
  d.model_id = "m";
  for (const auto& t : texts) {
    d.turns.push_back(turn(d.turns.size(), d.turns.size() % 2 ? Speaker::model : Speaker::tester, t));
  }
  return d;
}

// Stub-only campaign config. `top` holds top-level keys, `tables` extra TOML
// tables appended at the end.
inline CampaignConfig offline_config(std::string_view model_stub, std::string_view top = "",
                                     std::string_view tables = "") {
  std::string toml(top);
  toml += "\n[model]\nmodel_id = \"under-test\"\n[model.stub]\n";
  toml += model_stub;
  toml += "\n[generator]\nmodel_id = \"scripted-corpus\"\n[generator.stub]\nkind = \"scripted\"\nseed = 3\n";
  toml += "[scorers]\ntoxicity = \"stub:lexicon\"\nnsp = \"stub:overlap\"\nqa = \"stub:overlap\"\n";
  toml += tables;
  return validate_config(toml);
}

}  // namespace convqa::testing
