#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "bog/classifier.hpp"
#include "bog/descriptors.hpp"
#include "bog/metrics.hpp"
#include "bog/retrieval.hpp"
#include "bog/rng.hpp"
#include "bog/synth.hpp"

namespace {

bog::Image frame(int w, int h) {
  bog::SynthSpec spec;
  spec.width = w;
  spec.height = h;
  return bog::synthesize_frame(spec, 1, 0, 0);
}

void BM_Descriptor(benchmark::State& state) {
  const auto kind = static_cast<bog::DescriptorKind>(state.range(0));
  const bog::Image img = frame(320, 240);
  const bog::DescriptorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(bog::extract(img, kind, cfg));
  state.SetLabel(std::string(bog::descriptor_name(kind)));
  state.SetItemsProcessed(state.iterations());
}

void register_descriptors() {
  for (auto kind : bog::kAllDescriptors) {
    benchmark::RegisterBenchmark("BM_Descriptor", BM_Descriptor)->Arg(static_cast<int>(kind));
  }
}

std::vector<bog::BoGVector> corpus(std::size_t n, std::size_t genres) {
  bog::Rng rng(3);
  std::vector<bog::BoGVector> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].video_id = "v" + std::to_string(i);
    out[i].genre = static_cast<bog::GenreIndex>(i % genres);
    out[i].histogram.resize(genres);
    for (double& x : out[i].histogram) x = rng.uniform();
  }
  return out;
}

void BM_Rank(benchmark::State& state) {
  const auto c = corpus(static_cast<std::size_t>(state.range(0)), 26);
  for (auto _ : state) benchmark::DoNotOptimize(bog::rank(c.front(), c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rank)->Arg(1000)->Arg(10000);

void BM_AveragePrecision(benchmark::State& state) {
  const auto c = corpus(static_cast<std::size_t>(state.range(0)), 26);
  const auto judge = bog::RelevanceJudge::from_corpus(c);
  const auto list = bog::rank(c.front(), c);
  for (auto _ : state) benchmark::DoNotOptimize(bog::average_precision(list, judge, c.front().genre));
}
BENCHMARK(BM_AveragePrecision)->Arg(10000);

void BM_Train(benchmark::State& state) {
  bog::Rng rng(1);
  std::vector<bog::LabeledFeature> data;
  for (int i = 0; i < 26 * 100; ++i) {
    bog::FeatureVector f{bog::DescriptorKind::GCH, std::vector<double>(64)};
    for (double& x : f.values) x = rng.uniform();
    data.push_back({f, static_cast<bog::GenreIndex>(i % 26)});
  }
  std::vector<std::string> names;
  for (int g = 0; g < 26; ++g) names.push_back("g" + std::to_string(g));
  const bog::GenreSet genres(names);
  bog::TrainConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(bog::train(data, genres, cfg));
}
BENCHMARK(BM_Train)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  register_descriptors();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
