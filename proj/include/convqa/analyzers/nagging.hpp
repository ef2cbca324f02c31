#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/types.hpp"

namespace convqa::analyzers {

struct NagResult {
  std::size_t nag_count = 0;
  bool nagging = false;
  // Turn index of every reply holding at least one nag.
  std::vector<std::size_t> offending_turns;
  // Nags per model reply, in reply order.
  std::vector<std::size_t> per_reply;
};

// Sentences of `reply` whose terminator run contains '?', lowercased with
// whitespace collapsed.
std::vector<std::string> question_sentences(std::string_view reply);

// An occurrence of a question already asked in an earlier model reply of the
// same dialog is one nag.
NagResult count_nags(const Dialog& dialog);

}  // namespace convqa::analyzers
