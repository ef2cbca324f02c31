#include "convqa/injection/noise.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "convqa/core/text.hpp"

namespace convqa::injection {
namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<TypoEdit> plan_typos(std::string_view text, double f_char, Rng& rng) {
  std::vector<TypoEdit> edits(text.size());
  if (f_char <= 0.0) return edits;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_alpha(text[i])) continue;
    if (!(rng.uniform01() < f_char)) continue;
    auto& e = edits[i];
    switch (rng.below(4)) {
      case 0:
        e.op = TypoOp::substitute;
        e.letter = static_cast<char>('a' + rng.below(26));
        break;
      case 1:
        e.op = TypoOp::remove;
        break;
      case 2:
        e.op = TypoOp::duplicate;
        break;
      default:
        e.op = TypoOp::transpose;
        ++i;
        break;
    }
  }
  return edits;
}

std::string apply_typos(std::string_view text, std::span<const TypoEdit> edits) {
  std::string out;
  out.reserve(text.size() + 8);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const TypoEdit e = i < edits.size() ? edits[i] : TypoEdit{};
    switch (e.op) {
      case TypoOp::none:
        out.push_back(text[i]);
        break;
      case TypoOp::substitute:
        out.push_back(e.letter);
        break;
      case TypoOp::remove:
        break;
      case TypoOp::duplicate:
        out.push_back(text[i]);
        out.push_back(text[i]);
        break;
      case TypoOp::transpose:
        if (i + 1 < text.size()) {
          out.push_back(text[i + 1]);
          out.push_back(text[i]);
          ++i;
        } else {
          out.push_back(text[i]);
        }
        break;
    }
  }
  return out;
}

std::string inject_typos(std::string_view text, double f_char, Rng& rng) {
  const auto edits = plan_typos(text, f_char, rng);
  return apply_typos(text, edits);
}

std::string swap_words(std::string_view text, double f_word, Rng& rng) {
  auto words = split_words(text);
  const std::size_t w = words.size();
  if (w < 2 || f_word <= 0.0) return std::string(text);
  auto k = static_cast<std::size_t>(std::ceil(f_word * static_cast<double>(w - 1)));
  k = std::min(k, w / 2);
  // Non-overlapping pair starts p_1 < ... < p_k correspond one-to-one to
  // k-subsets {c_i = p_i - i} of {0, ..., w-k-1}.
  const std::size_t n = w - k;
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(chosen.begin(), chosen.end());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t p = chosen[i] + i;
    std::swap(words[p], words[p + 1]);
  }
  return join_words(words);
}

std::string drop_words(std::string_view text, double f_word, Rng& rng) {
  const auto words = split_words(text);
  if (words.empty() || f_word <= 0.0) return std::string(text);
  std::vector<std::string> kept;
  for (const auto& word : words) {
    if (!rng.bernoulli(f_word)) kept.push_back(word);
  }
  if (kept.size() == words.size()) return std::string(text);
  if (kept.empty()) kept.push_back(words[rng.below(words.size())]);
  return join_words(kept);
}

std::string replace_synonyms(std::string_view text, double f_word, const SynonymLexicon& lexicon,
                             Rng& rng) {
  if (lexicon.empty()) throw EmptyLexicon();
  auto words = split_words(text);
  if (f_word <= 0.0) return std::string(text);
  bool changed = false;
  for (auto& word : words) {
    std::size_t b = 0;
    std::size_t e = word.size();
    while (b < e && is_punct(word[b])) ++b;
    while (e > b && is_punct(word[e - 1])) --e;
    if (b == e) continue;
    const std::string core = word.substr(b, e - b);
    const auto it = lexicon.entries.find(to_lower(core));
    if (it == lexicon.entries.end()) continue;
    if (!rng.bernoulli(f_word)) continue;
    std::string syn = it->second[rng.below(it->second.size())];
    if (std::isupper(static_cast<unsigned char>(core[0])) && !syn.empty()) {
      syn[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(syn[0])));
    }
    word = word.substr(0, b) + syn + word.substr(e);
    changed = true;
  }
  return changed ? join_words(words) : std::string(text);
}

std::string apply_noise(std::string_view text, const NoiseSpec& spec, const SynonymLexicon& lexicon) {
  Rng rng(spec.rng_stream);
  switch (spec.kind) {
    case NoiseKind::typo:
      return inject_typos(text, spec.fraction, rng);
    case NoiseKind::word_swap:
      return swap_words(text, spec.fraction, rng);
    case NoiseKind::word_drop:
      return drop_words(text, spec.fraction, rng);
    case NoiseKind::synonym:
      return replace_synonyms(text, spec.fraction, lexicon, rng);
  }
  return std::string(text);
}

}  // namespace convqa::injection
