#include <benchmark/benchmark.h>

#include "bmt/rmld.hpp"
#include "bmt/toric.hpp"
#include "bmt/tree.hpp"

namespace {

void BM_CertifyExampleTree(benchmark::State& state) {
  const auto t = bmt::parse_newick("(1,2,(3,4,5));");
  bmt::CertifyOptions opt;
  for (auto _ : state) {
    auto rep = bmt::rmld_certify(t, opt);
    benchmark::DoNotOptimize(rep.certified_degree);
  }
}
BENCHMARK(BM_CertifyExampleTree);

void BM_CertifyStar(benchmark::State& state) {
  const auto t = bmt::star_tree(static_cast<int>(state.range(0)));
  bmt::CertifyOptions opt;
  for (auto _ : state) {
    auto rep = bmt::rmld_certify(t, opt);
    benchmark::DoNotOptimize(rep.certified_degree);
  }
}
BENCHMARK(BM_CertifyStar)->DenseRange(3, 6);

void BM_TfpKernelCheck(benchmark::State& state) {
  const bmt::TfpGluing g(bmt::star_tree(3), 3, 3);
  for (auto _ : state) {
    auto rep = bmt::tfp_kernel_check(g);
    benchmark::DoNotOptimize(rep.kernels_equal);
  }
}
BENCHMARK(BM_TfpKernelCheck);

}  // namespace
