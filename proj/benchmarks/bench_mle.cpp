#include <benchmark/benchmark.h>

#include <random>

#include "bmt/mle.hpp"
#include "bmt/tree.hpp"

namespace {

Eigen::MatrixXd spd(int n, std::mt19937_64& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return g * g.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

void BM_NewtonFit(benchmark::State& state) {
  const auto t = bmt::parse_newick("(1,2,(3,4,5));");
  std::mt19937_64 rng(1);
  const auto s = bmt::SampleCovariance::from(spd(5, rng));
  for (auto _ : state) {
    auto fit = bmt::newton_fit(t, s);
    benchmark::DoNotOptimize(fit.objective);
  }
}
BENCHMARK(BM_NewtonFit);

void BM_Gradient(benchmark::State& state) {
  const auto t = bmt::parse_newick("(1,2,(3,4,5));");
  std::mt19937_64 rng(2);
  const auto s = bmt::SampleCovariance::from(spd(5, rng));
  std::vector<double> params(t.vertex_count() - 1, 0.0);
  for (int v = 1; v < t.vertex_count(); ++v)
    params[v - 1] = t.is_leaf(v) ? 2.0 : 0.5;
  for (auto _ : state) {
    auto [value, grad] = bmt::rloglik_and_grad(t, params, s);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_Gradient);

}  // namespace
