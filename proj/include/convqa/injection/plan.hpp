#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convqa/core/config.hpp"
#include "convqa/core/registry.hpp"
#include "convqa/core/rng.hpp"
#include "convqa/core/types.hpp"
#include "convqa/injection/test_data.hpp"

namespace convqa::injection {

class MissingVariant : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TestInstance {
  std::string test_instance_id;
  std::string requirement_id;
  std::string payload_id;
  std::size_t provide_slot = 0;
  std::size_t request_slot = 0;
  std::optional<NoiseSpec> noise;

  bool operator==(const TestInstance&) const = default;
};

struct SlotAction {
  std::size_t slot_index = 0;
  // Index into DialogPlan::test_instances; empty means the generator speaks.
  std::optional<std::size_t> instance;
  Phase phase = Phase::provide_info;

  bool operator==(const SlotAction&) const = default;
};

struct DialogPlan {
  std::vector<SlotAction> slots;
  std::vector<TestInstance> test_instances;
  // Drawn instances that could not be placed ("plan_overflow") or had no
  // payload ("no_payload").
  std::vector<SkippedInstance> dropped;

  bool operator==(const DialogPlan&) const = default;
};

// Enabled Q-A tests are visited in lexicographic id order. Each draws
// Bernoulli(p) from its own stream and, if included, takes the earliest slot s
// with s and s+x+1 both free and s+x+1 < prompts_per_dialog.
DialogPlan plan_dialog(const CampaignConfig& config, const RequirementRegistry& registry,
                       const ControlledTestData& data, std::uint64_t dialog_seed);

// Noise kind for U3-U6, empty for every other requirement.
std::optional<NoiseKind> noise_kind_for(std::string_view requirement_id);

// Seed of the variant-choice stream for one instance and phase.
std::uint64_t variant_seed(std::uint64_t dialog_seed, const TestInstance& instance, Phase phase);

struct RealizedPrompt {
  std::string text;
  InjectionTag tag;
};

// Picks a variant uniformly with `rng`; request prompts of noisy instances are
// perturbed with instance.noise.
RealizedPrompt realize_prompt(const TestInstance& instance, Phase phase, const QaItem& item, Rng& rng,
                              const SynonymLexicon& synonyms);

}  // namespace convqa::injection
