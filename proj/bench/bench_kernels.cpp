// Serial reference kernels against their OpenMP counterparts. Run with
// OMP_NUM_THREADS set to compare scaling; both sides return identical data.

#include <benchmark/benchmark.h>

#include "fqlab/kernels.hpp"
#include "fqlab/rng.hpp"

namespace {

using namespace fqlab;
namespace k = fqlab::kernels;

std::vector<Element> random_nonzero(const Field& f, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Element> v;
  for (auto i : rng.sample(f.q() - 1, n)) v.push_back(static_cast<Element>(i) + 1);
  return v;
}

// Field order in range(0), set size in range(1).
template <bool Parallel>
void BM_PairImage(benchmark::State& state) {
  const auto f = build_field(2, static_cast<unsigned>(state.range(0)));
  const auto a = random_nonzero(*f, state.range(1), 1);
  const auto b = random_nonzero(*f, state.range(1), 2);
  for (auto _ : state) {
    auto m = Parallel ? k::parallel::pair_image(*f, a, b, k::PairOp::Prod)
                      : k::serial::pair_image(*f, a, b, k::PairOp::Prod);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

template <bool Parallel>
void BM_SumCounts(benchmark::State& state) {
  const auto f = build_field(3, static_cast<unsigned>(state.range(0)));
  const auto a = random_nonzero(*f, state.range(1), 3);
  for (auto _ : state) {
    auto c = Parallel ? k::parallel::sum_counts(*f, a, a) : k::serial::sum_counts(*f, a, a);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

template <bool Parallel>
void BM_RatioCounts(benchmark::State& state) {
  const auto f = build_field(3, static_cast<unsigned>(state.range(0)));
  const auto a = random_nonzero(*f, state.range(1), 4);
  for (auto _ : state) {
    auto c = Parallel ? k::parallel::ratio_counts(*f, a, a) : k::serial::ratio_counts(*f, a, a);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

// The quotient set costs |X|^4 serially, so sizes stay small.
template <bool Parallel>
void BM_QuotientSet(benchmark::State& state) {
  const auto f = build_field(2, static_cast<unsigned>(state.range(0)));
  const auto x = random_nonzero(*f, state.range(1), 5);
  for (auto _ : state) {
    auto m = Parallel ? k::parallel::quotient_set(*f, x) : k::serial::quotient_set(*f, x);
    benchmark::DoNotOptimize(m);
  }
}

// Prime p in range(0), subset size in range(1).
template <bool Parallel>
void BM_MinShiftedProduct(benchmark::State& state) {
  const auto f = build_field(static_cast<std::uint32_t>(state.range(0)), 1);
  std::vector<Element> universe(f->q());
  for (Element i = 0; i < f->q(); ++i) universe[i] = i;
  const auto kk = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    auto r = Parallel ? k::parallel::min_shifted_product(*f, universe, kk, 1, 100)
                      : k::serial::min_shifted_product(*f, universe, kk, 1, 100);
    benchmark::DoNotOptimize(r);
  }
}

void Sizes(benchmark::internal::Benchmark* b) { b->Args({10, 64})->Args({14, 256})->Args({16, 1024}); }
void SizesQ(benchmark::internal::Benchmark* b) { b->Args({6, 40})->Args({8, 60})->Args({10, 90}); }
void SizesTernary(benchmark::internal::Benchmark* b) { b->Args({6, 64})->Args({8, 512})->Args({10, 2048}); }
void SizesEnum(benchmark::internal::Benchmark* b) { b->Args({13, 4})->Args({17, 5})->Args({23, 5}); }

}  // namespace

BENCHMARK(BM_PairImage<false>)->Name("pair_image/serial")->Apply(Sizes);
BENCHMARK(BM_PairImage<true>)->Name("pair_image/parallel")->Apply(Sizes);
BENCHMARK(BM_SumCounts<false>)->Name("sum_counts/serial")->Apply(SizesTernary);
BENCHMARK(BM_SumCounts<true>)->Name("sum_counts/parallel")->Apply(SizesTernary);
BENCHMARK(BM_RatioCounts<false>)->Name("ratio_counts/serial")->Apply(SizesTernary);
BENCHMARK(BM_RatioCounts<true>)->Name("ratio_counts/parallel")->Apply(SizesTernary);
BENCHMARK(BM_QuotientSet<false>)->Name("quotient_set/serial")->Apply(SizesQ);
BENCHMARK(BM_QuotientSet<true>)->Name("quotient_set/parallel")->Apply(SizesQ);
BENCHMARK(BM_MinShiftedProduct<false>)->Name("min_shifted_product/serial")->Apply(SizesEnum);
BENCHMARK(BM_MinShiftedProduct<true>)->Name("min_shifted_product/parallel")->Apply(SizesEnum);

BENCHMARK_MAIN();
