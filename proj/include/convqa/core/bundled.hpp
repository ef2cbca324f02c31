#pragma once

#include <string_view>

// Default resources compiled in from data/.
namespace convqa::bundled {

std::string_view controlled_test_data_json();
// "word<TAB>syn1,syn2,..." lines.
std::string_view synonyms_tsv();
// "phrase<TAB>category" lines.
std::string_view toxicity_lexicon_tsv();
// One interview question per line.
std::string_view interview_corpus_txt();

}  // namespace convqa::bundled
