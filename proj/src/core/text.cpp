#include "convqa/core/text.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>

namespace convqa {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

constexpr std::string_view kStopwords[] = {
    "a",     "about", "am",    "an",    "and",   "are",   "as",    "at",    "be",
    "been",  "but",   "by",    "can",   "could", "did",   "do",    "does",  "for",
    "from",  "had",   "has",   "have",  "he",    "her",   "him",   "his",   "how",
    "i",     "i'm",   "if",    "in",    "is",    "it",    "it's",  "its",   "me",
    "my",    "no",    "not",   "now",   "of",    "on",    "or",    "our",   "she",
    "so",    "that",  "the",   "their", "them",  "then",  "there", "they",  "this",
    "to",    "us",    "was",   "we",    "were",  "what",  "when",  "where", "which",
    "who",   "why",   "will",  "with",  "would", "yes",   "you",   "your",  "you're",
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string normalize_space_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (const auto& word : split_words(text)) {
    std::size_t b = 0;
    std::size_t e = word.size();
    while (b < e && is_punct(word[b])) ++b;
    while (e > b && is_punct(word[e - 1])) --e;
    if (e > b) tokens.push_back(to_lower(std::string_view(word).substr(b, e - b)));
  }
  return tokens;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    while (i < text.size() && is_terminator(text[i])) ++i;
    std::string chunk = trim(text.substr(start, i - start));
    if (!chunk.empty()) sentences.push_back(std::move(chunk));
    start = i;
  }
  std::string tail = trim(text.substr(start));
  if (!tail.empty()) sentences.push_back(std::move(tail));
  return sentences;
}

bool contains_sequence(std::span<const std::string> haystack,
                       std::span<const std::string> needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

bool is_stopword(std::string_view token) {
  return std::find(std::begin(kStopwords), std::end(kStopwords), token) != std::end(kStopwords);
}

std::string stem(std::string_view token) {
  std::string t(token);
  if (ends_with(t, "'s")) t.resize(t.size() - 2);
  if (t.size() > 4 && (ends_with(t, "ies") || ends_with(t, "ied"))) {
    t.resize(t.size() - 3);
    t.push_back('y');
  } else if (t.size() > 5 && ends_with(t, "ing")) {
    t.resize(t.size() - 3);
  } else if (t.size() > 4 && ends_with(t, "ed")) {
    t.resize(t.size() - 2);
  } else if (t.size() > 3 && ends_with(t, "s") && !ends_with(t, "ss")) {
    t.resize(t.size() - 1);
  }
  return t;
}

std::vector<std::string> content_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& tok : tokenize(text)) {
    if (tok.size() < 2 || is_stopword(tok)) continue;
    out.push_back(stem(tok));
  }
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

}  // namespace convqa
