#include <benchmark/benchmark.h>

#include "bmt/field.hpp"
#include "bmt/groebner.hpp"
#include "bmt/model_matrices.hpp"
#include "bmt/toric.hpp"
#include "bmt/tree.hpp"

namespace {

// positive-dimensional binomial basis: the raw star-tree ideal
void BM_BuchbergerHypersimplex(benchmark::State& state) {
  const bmt::Fp64 f(bmt::kPrimeA);
  std::vector<bmt::Poly<bmt::Fp64>> gens;
  for (const auto& b : bmt::hypersimplex_generators(static_cast<int>(state.range(0))))
    gens.push_back(b.poly(f));
  for (auto _ : state) {
    auto gb = bmt::buchberger(gens, f);
    benchmark::DoNotOptimize(gb.g.size());
  }
}
BENCHMARK(BM_BuchbergerHypersimplex)->DenseRange(3, 5);

void BM_IntegerKernel(benchmark::State& state) {
  const auto b = bmt::path_matrix(bmt::star_tree(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto k = bmt::integer_kernel(b);
    benchmark::DoNotOptimize(k.size());
  }
}
BENCHMARK(BM_IntegerKernel)->DenseRange(3, 6);

void BM_RankRref(benchmark::State& state) {
  const bmt::RationalField f;
  const auto a = bmt::design_matrix(bmt::star_tree(5)).over(f);
  for (auto _ : state) {
    auto r = bmt::rank_rref(a, f);
    benchmark::DoNotOptimize(r.rank);
  }
}
BENCHMARK(BM_RankRref);

}  // namespace
