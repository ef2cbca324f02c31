#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "convqa/core/rng.hpp"
#include "convqa/core/types.hpp"
#include "convqa/injection/test_data.hpp"

// Perturbations for the U3-U6 robustness tests. Every operator is the
// identity at fraction 0 and a pure function of (text, fraction, rng state).
namespace convqa::injection {

class EmptyLexicon : public std::runtime_error {
 public:
  EmptyLexicon() : std::runtime_error("synonym noise requires a non-empty lexicon") {}
};

enum class TypoOp { none, substitute, remove, duplicate, transpose };

struct TypoEdit {
  TypoOp op = TypoOp::none;
  // Replacement letter for substitute.
  char letter = 0;
};

// One edit per byte of `text`. Draw order: for each alphabetic byte one
// uniform01 draw; on a hit, one below(4) for the operation and, for
// substitute, one below(26) for the letter. A transpose consumes the next
// byte, which then gets no draw of its own.
std::vector<TypoEdit> plan_typos(std::string_view text, double f_char, Rng& rng);
std::string apply_typos(std::string_view text, std::span<const TypoEdit> edits);
std::string inject_typos(std::string_view text, double f_char, Rng& rng);

// Swaps k = ceil(f*(W-1)) non-overlapping adjacent word pairs, k capped at
// floor(W/2), choosing uniformly among all such pair sets.
std::string swap_words(std::string_view text, double f_word, Rng& rng);
// Drops each word with probability f; one word always survives.
std::string drop_words(std::string_view text, double f_word, Rng& rng);
// Replaces lexicon words with probability f by a uniformly chosen synonym.
// Surrounding punctuation and a leading capital are kept.
std::string replace_synonyms(std::string_view text, double f_word, const SynonymLexicon& lexicon,
                             Rng& rng);

// Dispatches on spec.kind with an Rng seeded from spec.rng_stream.
std::string apply_noise(std::string_view text, const NoiseSpec& spec, const SynonymLexicon& lexicon);

}  // namespace convqa::injection
