#include "convqa/campaign/campaign.hpp"

#include <cstdio>
#include <map>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "convqa/core/json_io.hpp"
#include "convqa/core/rng.hpp"
#include "convqa/gateway/chat.hpp"
#include "convqa/injection/plan.hpp"

namespace convqa::campaign {
namespace {

void push_turn(std::vector<Turn>& turns, Speaker speaker, std::string text, std::optional<InjectionTag> tag = {}) {
  Turn t;
  t.index = turns.size();
  t.speaker = speaker;
  t.text = std::move(text);
  t.injection = std::move(tag);
  turns.push_back(std::move(t));
}

}  // namespace

int resolve_workers(int workers) {
  if (workers > 0) return workers;
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}

CampaignInputs load_inputs(const CampaignConfig& config) {
  CampaignInputs in;
  in.config = config;
  in.registry = registry_defaults().restricted_to(config.enabled_requirements);
  in.data = config.data.controlled_test_data
                ? injection::parse_test_data(read_file(*config.data.controlled_test_data))
                : injection::bundled_test_data();
  in.synonyms = config.data.synonyms ? injection::parse_synonyms(read_file(*config.data.synonyms))
                                     : injection::bundled_synonyms();
  in.toxicity_lexicon = config.data.toxicity_lexicon
                            ? analyzers::parse_toxicity_lexicon(read_file(*config.data.toxicity_lexicon))
                            : analyzers::bundled_toxicity_lexicon();
  return in;
}

std::string dialog_id_for(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "dialog-%05zu", index);
  return buf;
}

std::uint64_t dialog_seed_for(std::uint64_t campaign_seed, std::size_t index) {
  return derive_seed(campaign_seed, static_cast<std::uint64_t>(index));
}

Dialog generate_dialog(const CampaignInputs& in, std::size_t index) {
  const auto& cfg = in.config;
  Dialog d;
  d.dialog_id = dialog_id_for(index);
  d.seed = dialog_seed_for(cfg.campaign_seed, index);
  d.model_id = cfg.model.model_id;
  const auto plan = injection::plan_dialog(cfg, in.registry, in.data, d.seed);
  d.skipped = plan.dropped;
  const auto generator = gateway::reseeded_for_dialog(cfg.generator, d.seed);

  try {
    for (const auto& slot : plan.slots) {
      if (slot.instance) {
        const auto& inst = plan.test_instances[*slot.instance];
        const auto* item = in.data.find(inst.payload_id);
        Rng rng(injection::variant_seed(d.seed, inst, slot.phase));
        auto prompt = injection::realize_prompt(inst, slot.phase, *item, rng, in.synonyms);
        push_turn(d.turns, Speaker::tester, std::move(prompt.text), std::move(prompt.tag));
      } else {
        push_turn(d.turns, Speaker::tester, gateway::generator_prompt(d.dialog_id, d.turns, generator));
      }
      push_turn(d.turns, Speaker::model, gateway::next_reply(d.dialog_id, d.turns, cfg.model));
    }
  } catch (const gateway::ModelUnavailable& e) {
    d.error = std::string("model unavailable: ") + e.what();
  } catch (const gateway::ProtocolError& e) {
    d.error = std::string("protocol error: ") + e.what();
  }
  if (d.error && !d.turns.empty() && d.turns.back().speaker == Speaker::tester) d.turns.pop_back();
  return d;
}

std::vector<Dialog> run_campaign(const CampaignInputs& in, int workers,
                                 const std::function<void(const Dialog&)>& sink) {
  const auto n = static_cast<std::size_t>(in.config.n_dialogs);
  std::vector<Dialog> out(n);
  std::vector<bool> done(n, false);
  std::size_t flushed = 0;
  std::mutex mu;
  const int threads = resolve_workers(workers);
  (void)threads;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto k = static_cast<std::size_t>(i);
    Dialog d = generate_dialog(in, k);
    std::lock_guard lock(mu);
    out[k] = std::move(d);
    done[k] = true;
    while (flushed < n && done[flushed]) {
      if (sink) sink(out[flushed]);
      ++flushed;
    }
  }
  return out;
}

std::vector<Dialog> run_campaign_serial(const CampaignInputs& in) {
  std::vector<Dialog> out;
  for (std::size_t k = 0; k < static_cast<std::size_t>(in.config.n_dialogs); ++k) {
    out.push_back(generate_dialog(in, k));
  }
  return out;
}

analyzers::AnalysisContext make_analysis_context(const CampaignInputs& in) {
  analyzers::AnalysisContext ctx;
  ctx.config = &in.config;
  ctx.registry = &in.registry;
  ctx.data = &in.data;
  ctx.scorers = analyzers::make_scorers(in.config.scorers, in.toxicity_lexicon);
  return ctx;
}

std::vector<Verdict> analyze(std::span<const Dialog> dialogs, const analyzers::AnalysisContext& ctx, int workers) {
  std::vector<std::vector<Verdict>> per(dialogs.size());
  const int threads = resolve_workers(workers);
  (void)threads;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dialogs.size()); ++i) {
    per[static_cast<std::size_t>(i)] = analyzers::analyze_dialog(dialogs[static_cast<std::size_t>(i)], ctx);
  }
  std::vector<Verdict> out;
  for (auto& v : per) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  sort_canonical(out);
  return out;
}

std::vector<Verdict> analyze_serial(std::span<const Dialog> dialogs, const analyzers::AnalysisContext& ctx) {
  std::vector<Verdict> out;
  for (const auto& d : dialogs) {
    auto v = analyzers::analyze_dialog(d, ctx);
    out.insert(out.end(), v.begin(), v.end());
  }
  sort_canonical(out);
  return out;
}

}  // namespace convqa::campaign
