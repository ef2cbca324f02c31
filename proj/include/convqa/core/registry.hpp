#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace convqa {

enum class Category { personality, answering, intelligence, understanding };
enum class TestStructure { qa, nc, cc, ta, sc };

std::string_view to_string(Category c);
std::string_view to_string(TestStructure s);

struct RequirementEntry {
  std::string id;
  std::string name;
  Category category = Category::intelligence;
  TestStructure structure = TestStructure::qa;
  bool enabled = true;
  // False for metrics that failed human validation (I3).
  bool validated = true;
};

class RequirementRegistry {
 public:
  RequirementRegistry() = default;
  explicit RequirementRegistry(std::vector<RequirementEntry> entries);

  const RequirementEntry* lookup(std::string_view id) const;
  bool contains(std::string_view id) const { return lookup(id) != nullptr; }
  bool is_enabled(std::string_view id) const;

  // Entries in declaration order (P2, A3, A4, I1, ...).
  std::span<const RequirementEntry> entries() const { return entries_; }

  // Enabled Q-A requirement ids in lexicographic order.
  std::vector<std::string> enabled_qa_ids() const;
  std::vector<std::string> enabled_ids() const;

  // Copy with `enabled` set exactly for the listed ids. Unknown ids throw
  // std::invalid_argument.
  RequirementRegistry restricted_to(std::span<const std::string> ids) const;

 private:
  std::vector<RequirementEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

RequirementRegistry registry_defaults();

}  // namespace convqa
