// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "convqa/analyzers/stutter.hpp"
#include "convqa/campaign/campaign.hpp"

using namespace convqa;

namespace {

std::vector<std::string> random_replies(std::size_t n) {
  std::mt19937_64 g(1);
  std::uniform_int_distribution<int> len(5, 60), word(0, 7);
  std::vector<std::string> out(n);
  for (auto& r : out) {
    for (int k = len(g); k > 0; --k) r += "w" + std::to_string(word(g)) + " ";
  }
  return out;
}

const campaign::CampaignInputs& inputs() {
  static const auto in = campaign::load_inputs(validate_config(R"(
n_dialogs = 64
prompts_per_dialog = 20
injection_probability = 0.2
[model]
model_id = "parrot"
[model.stub]
kind = "parrot"
[generator]
model_id = "scripted"
[generator.stub]
kind = "scripted"
[scorers]
toxicity = "stub:lexicon"
nsp = "stub:overlap"
qa = "stub:overlap"
)"));
  return in;
}

void BM_StutterSerial(benchmark::State& state) {
  const auto replies = random_replies(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyzers::stutter_scores_serial(replies, StutterConfig{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StutterParallel(benchmark::State& state) {
  const auto replies = random_replies(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyzers::stutter_scores(replies, StutterConfig{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CampaignSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(campaign::run_campaign_serial(inputs()));
}

void BM_CampaignParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(campaign::run_campaign(inputs(), 0));
}

void BM_AnalyzeSerial(benchmark::State& state) {
  const auto dialogs = campaign::run_campaign(inputs(), 0);
  const auto ctx = campaign::make_analysis_context(inputs());
  for (auto _ : state) benchmark::DoNotOptimize(campaign::analyze_serial(dialogs, ctx));
}

void BM_AnalyzeParallel(benchmark::State& state) {
  const auto dialogs = campaign::run_campaign(inputs(), 0);
  const auto ctx = campaign::make_analysis_context(inputs());
  for (auto _ : state) benchmark::DoNotOptimize(campaign::analyze(dialogs, ctx, 0));
}

}  // namespace

BENCHMARK(BM_StutterSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_StutterParallel)->Arg(1000)->Arg(10000);
BENCHMARK(BM_CampaignSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
