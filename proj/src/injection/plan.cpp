#include "convqa/injection/plan.hpp"

#include "convqa/injection/noise.hpp"

namespace convqa::injection {

std::optional<NoiseKind> noise_kind_for(std::string_view requirement_id) {
  if (requirement_id == "U3") return NoiseKind::typo;
  if (requirement_id == "U4") return NoiseKind::word_swap;
  if (requirement_id == "U5") return NoiseKind::word_drop;
  if (requirement_id == "U6") return NoiseKind::synonym;
  return std::nullopt;
}

DialogPlan plan_dialog(const CampaignConfig& config, const RequirementRegistry& registry,
                       const ControlledTestData& data, std::uint64_t dialog_seed) {
  const auto slots = static_cast<std::size_t>(config.prompts_per_dialog);
  const auto gap = static_cast<std::size_t>(config.qa_gap);
  DialogPlan plan;
  std::vector<bool> taken(slots, false);

  for (const auto& id : registry.enabled_qa_ids()) {
    Rng include(derive_seed(dialog_seed, "include:" + id));
    if (!include.bernoulli(config.probability_for(id))) continue;
    const std::string instance_id = id + "#1";

    const auto items = data.items_for(id);
    if (items.empty()) {
      plan.dropped.push_back({instance_id, id, "no_payload"});
      continue;
    }
    Rng pick(derive_seed(dialog_seed, "payload:" + id));
    const QaItem& item = *items[pick.below(items.size())];

    std::optional<std::size_t> start;
    for (std::size_t s = 0; s + gap + 1 < slots; ++s) {
      if (!taken[s] && !taken[s + gap + 1]) {
        start = s;
        break;
      }
    }
    if (!start) {
      plan.dropped.push_back({instance_id, id, "plan_overflow"});
      continue;
    }
    TestInstance inst{instance_id, id, item.payload_id, *start, *start + gap + 1, std::nullopt};
    if (const auto kind = noise_kind_for(id)) {
      const double fraction = *kind == NoiseKind::typo ? config.f_char : config.f_word;
      inst.noise = NoiseSpec{*kind, fraction, derive_seed(dialog_seed, "noise:" + instance_id)};
    }
    taken[inst.provide_slot] = true;
    taken[inst.request_slot] = true;
    plan.test_instances.push_back(std::move(inst));
  }

  plan.slots.resize(slots);
  for (std::size_t s = 0; s < slots; ++s) plan.slots[s].slot_index = s;
  for (std::size_t k = 0; k < plan.test_instances.size(); ++k) {
    const auto& inst = plan.test_instances[k];
    plan.slots[inst.provide_slot].instance = k;
    plan.slots[inst.provide_slot].phase = Phase::provide_info;
    plan.slots[inst.request_slot].instance = k;
    plan.slots[inst.request_slot].phase = Phase::request_info;
  }
  return plan;
}

std::uint64_t variant_seed(std::uint64_t dialog_seed, const TestInstance& instance, Phase phase) {
  return derive_seed(dialog_seed,
                     "variant:" + instance.test_instance_id + ":" + std::string(to_string(phase)));
}

RealizedPrompt realize_prompt(const TestInstance& instance, Phase phase, const QaItem& item, Rng& rng,
                              const SynonymLexicon& synonyms) {
  const std::vector<std::string>* variants = nullptr;
  const bool needs_context = (phase == Phase::provide_info && instance.requirement_id == "I9") ||
                             (phase == Phase::request_info && instance.requirement_id == "I11");
  if (needs_context) {
    if (!item.context_variants) {
      throw MissingVariant("item " + item.payload_id + " lacks context variants for " +
                           instance.requirement_id);
    }
    variants = phase == Phase::provide_info ? &item.context_variants->info : &item.context_variants->request;
  } else {
    variants = phase == Phase::provide_info ? &item.info_prompts : &item.request_prompts;
  }
  if (variants->empty()) throw MissingVariant("item " + item.payload_id + " has no variants");

  RealizedPrompt out;
  out.text = (*variants)[rng.below(variants->size())];
  out.tag = InjectionTag{instance.test_instance_id, instance.requirement_id, phase, item.payload_id,
                         std::nullopt};
  if (phase == Phase::request_info && instance.noise) {
    out.text = apply_noise(out.text, *instance.noise, synonyms);
    out.tag.noise_applied = instance.noise;
  }
  return out;
}

}  // namespace convqa::injection
