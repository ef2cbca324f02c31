#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Text normalization shared by every analyzer and stub.
namespace convqa {

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

// Lowercase and collapse whitespace runs to single spaces.
std::string normalize_space_lower(std::string_view text);

// Lowercase, split on whitespace, strip leading/trailing punctuation from each
// token; tokens that were punctuation only are dropped.
std::vector<std::string> tokenize(std::string_view text);

// Whitespace-separated words with punctuation left intact.
std::vector<std::string> split_words(std::string_view text);
std::string join_words(std::span<const std::string> words);

// Splits after each run of '.', '!' or '?'. Chunks are trimmed and include
// their terminator run; a trailing unterminated chunk is kept.
std::vector<std::string> split_sentences(std::string_view text);

// True iff `needle` occurs as a contiguous run inside `haystack`. An empty
// needle never matches.
bool contains_sequence(std::span<const std::string> haystack, std::span<const std::string> needle);

bool is_stopword(std::string_view token);

// Crude suffix stripping: "studied" -> "study", "sports" -> "sport".
std::string stem(std::string_view token);

// Tokens minus stopwords, stemmed. Used for overlap heuristics only.
std::vector<std::string> content_tokens(std::string_view text);

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

}  // namespace convqa
