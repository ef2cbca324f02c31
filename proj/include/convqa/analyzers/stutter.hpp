#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/config.hpp"

namespace convqa::analyzers {

struct StutterResult {
  double score = 0.0;
  // counts[k] is c_n for n = n_min + k.
  std::vector<std::size_t> counts;
  std::size_t tokens = 0;
};

// c_n counts positions i whose n-gram re-occurs at some j with
// i+n <= j <= i+n+gap and j+n <= T. score = sum w_n c_n, divided by T when
// normalize_by_length.
StutterResult stutter_score(std::span<const std::string> tokens, const StutterConfig& cfg);
StutterResult stutter_score(std::string_view reply, const StutterConfig& cfg);

// Batch scoring; the OpenMP version and the serial reference return identical
// results.
std::vector<StutterResult> stutter_scores(std::span<const std::string> replies, const StutterConfig& cfg);
std::vector<StutterResult> stutter_scores_serial(std::span<const std::string> replies,
                                                 const StutterConfig& cfg);

}  // namespace convqa::analyzers
