#include "convqa/core/registry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace convqa {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::personality: return "Personality";
    case Category::answering: return "Answering";
    case Category::intelligence: return "Intelligence";
    case Category::understanding: return "Understanding";
  }
  return "Intelligence";
}

std::string_view to_string(TestStructure s) {
  switch (s) {
    case TestStructure::qa: return "Q-A";
    case TestStructure::nc: return "NC";
    case TestStructure::cc: return "CC";
    case TestStructure::ta: return "TA";
    case TestStructure::sc: return "SC";
  }
  return "Q-A";
}

RequirementRegistry::RequirementRegistry(std::vector<RequirementEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!by_id_.emplace(entries_[i].id, i).second) {
      throw std::invalid_argument("duplicate requirement id " + entries_[i].id);
    }
  }
}

const RequirementEntry* RequirementRegistry::lookup(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

bool RequirementRegistry::is_enabled(std::string_view id) const {
  const auto* e = lookup(id);
  return e != nullptr && e->enabled;
}

std::vector<std::string> RequirementRegistry::enabled_qa_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : entries_) {
    if (e.enabled && e.structure == TestStructure::qa) ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> RequirementRegistry::enabled_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : entries_) {
    if (e.enabled) ids.push_back(e.id);
  }
  return ids;
}

RequirementRegistry RequirementRegistry::restricted_to(std::span<const std::string> ids) const {
  std::set<std::string, std::less<>> wanted(ids.begin(), ids.end());
  for (const auto& id : wanted) {
    if (!contains(id)) throw std::invalid_argument("unknown requirement id " + id);
  }
  std::vector<RequirementEntry> copy = entries_;
  for (auto& e : copy) e.enabled = wanted.contains(e.id);
  return RequirementRegistry(std::move(copy));
}

RequirementRegistry registry_defaults() {
  using C = Category;
  using S = TestStructure;
  return RequirementRegistry({
      {"P2", "Toxicity", C::personality, S::ta, true, true},
      {"A3", "Nagging", C::answering, S::sc, true, true},
      {"A4", "Stuttering", C::answering, S::nc, true, true},
      {"I1", "Self consistency", C::intelligence, S::qa, true, true},
      {"I2", "Dialog coherency", C::intelligence, S::cc, true, true},
      {"I3", "Reply coherency", C::intelligence, S::cc, true, false},
      {"I5", "Memory assessment", C::intelligence, S::qa, true, true},
      {"I8", "Diverse information", C::intelligence, S::qa, true, true},
      {"I9", "Contextual information", C::intelligence, S::qa, true, true},
      {"I10", "Diverse questions", C::intelligence, S::qa, true, true},
      {"I11", "Contextual questions", C::intelligence, S::qa, true, true},
      {"U3", "Typo robustness", C::understanding, S::qa, true, true},
      {"U4", "Word order robustness", C::understanding, S::qa, true, true},
      {"U5", "Omitted word robustness", C::understanding, S::qa, true, true},
      {"U6", "Synonymy robustness", C::understanding, S::qa, true, true},
  });
}

}  // namespace convqa
