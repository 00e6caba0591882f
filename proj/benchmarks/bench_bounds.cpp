#include <benchmark/benchmark.h>

#include "lrb/catalog.hpp"
#include "lrb/samplers.hpp"
#include "lrb/verifier.hpp"

namespace {

void BM_evaluate_closed_form(benchmark::State& state) {
  lrb::DistributionSpec spec{"normal", {{"mu", 0.0}, {"sigma", 1.0}}};
  lrb::TailQuery q{lrb::Direction::lower_mean, -0.5, 4};
  for (auto _ : state)
    benchmark::DoNotOptimize(lrb::evaluate_bound("normal_lower", spec, q));
}
BENCHMARK(BM_evaluate_closed_form);

void BM_evaluate_implicit(benchmark::State& state) {
  lrb::DistributionSpec spec{"logarithmic", {{"q", 0.5}}};
  lrb::TailQuery q{lrb::Direction::lower_mean, 1.2, 3};
  for (auto _ : state)
    benchmark::DoNotOptimize(lrb::evaluate_bound("logarithmic_lower", spec, q));
}
BENCHMARK(BM_evaluate_implicit);

void BM_sample_lattice(benchmark::State& state) {
  lrb::DistributionSpec spec{"borel", {{"theta", 0.5}}};
  lrb::Sampler s(spec);
  lrb::RngStream rng(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.draw(rng));
}
BENCHMARK(BM_sample_lattice);

void BM_sample_gamma(benchmark::State& state) {
  lrb::RngStream rng(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.gamma(2.5));
}
BENCHMARK(BM_sample_gamma);

void BM_check_dominance_small(benchmark::State& state) {
  lrb::DistributionSpec spec{"uniform", {}};
  lrb::TailQuery q{lrb::Direction::upper_mean, 0.7, 5};
  lrb::MonteCarloConfig cfg{1000, 42, 0.9999, 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(lrb::check_dominance("uniform_upper", spec, q, cfg));
}
BENCHMARK(BM_check_dominance_small);

}  // namespace

BENCHMARK_MAIN();
