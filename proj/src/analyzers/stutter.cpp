#include "convqa/analyzers/stutter.hpp"

#include <algorithm>

#include "convqa/core/text.hpp"

namespace convqa::analyzers {
namespace {

bool same_gram(std::span<const std::string> t, std::size_t a, std::size_t b, std::size_t n) {
  return std::equal(t.begin() + static_cast<std::ptrdiff_t>(a), t.begin() + static_cast<std::ptrdiff_t>(a + n),
                    t.begin() + static_cast<std::ptrdiff_t>(b));
}

}  // namespace

StutterResult stutter_score(std::span<const std::string> tokens, const StutterConfig& cfg) {
  StutterResult r;
  r.tokens = tokens.size();
  const auto n_min = static_cast<std::size_t>(cfg.n_min);
  const auto n_max = static_cast<std::size_t>(cfg.n_max);
  const auto gap = static_cast<std::size_t>(cfg.gap);
  const std::size_t t = tokens.size();
  r.counts.assign(n_max - n_min + 1, 0);
  for (std::size_t n = n_min; n <= n_max; ++n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i + 2 * n <= t; ++i) {
      for (std::size_t j = i + n; j <= i + n + gap && j + n <= t; ++j) {
        if (same_gram(tokens, i, j, n)) {
          ++c;
          break;
        }
      }
    }
    r.counts[n - n_min] = c;
    r.score += cfg.weights[n - n_min] * static_cast<double>(c);
  }
  if (cfg.normalize_by_length && t > 0) r.score /= static_cast<double>(t);
  return r;
}

StutterResult stutter_score(std::string_view reply, const StutterConfig& cfg) {
  const auto tokens = tokenize(reply);
  return stutter_score(std::span<const std::string>(tokens), cfg);
}

std::vector<StutterResult> stutter_scores(std::span<const std::string> replies, const StutterConfig& cfg) {
  std::vector<StutterResult> out(replies.size());
  const auto n = static_cast<std::ptrdiff_t>(replies.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = stutter_score(std::string_view(replies[static_cast<std::size_t>(i)]), cfg);
  }
  return out;
}

std::vector<StutterResult> stutter_scores_serial(std::span<const std::string> replies,
                                                 const StutterConfig& cfg) {
  std::vector<StutterResult> out;
  out.reserve(replies.size());
  for (const auto& r : replies) out.push_back(stutter_score(std::string_view(r), cfg));
  return out;
}

}  // namespace convqa::analyzers
