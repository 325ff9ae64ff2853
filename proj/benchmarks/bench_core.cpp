#include <benchmark/benchmark.h>

#include "envalg/free_algebra.hpp"
#include "envalg/functionals.hpp"
#include "envalg/gns.hpp"
#include "envalg/group_integration.hpp"
#include "envalg/lie_structure.hpp"

namespace {

using namespace envalg;

void BM_BchExpProduct(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const FreeSeries x = FreeSeries::letter(2, n, 0), y = FreeSeries::letter(2, n, 1);
  for (auto _ : state) {
    FreeSeries z = log(multiply(exp(x), exp(y)));
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_BchExpProduct)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_PbwReduce(benchmark::State& state) {
  const LieAlgebra g = LieAlgebra::so3();
  const std::vector<unsigned> word{2, 1, 0, 2, 1, 0, 2, 1};
  for (auto _ : state) {
    // fresh algebra each time would measure the cache fill; this measures steady state
    benchmark::DoNotOptimize(g.reduce(word));
  }
}
BENCHMARK(BM_PbwReduce);

void BM_RecursionSpinHalf(benchmark::State& state) {
  const FunctionalTable lambda = functional_from_rep(MatrixRep::su2_spin(1), 5);
  for (auto _ : state) benchmark::DoNotOptimize(recursion_check(lambda, 4));
}
BENCHMARK(BM_RecursionSpinHalf)->Unit(benchmark::kMillisecond);

void BM_MomentMatrixPsd(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const FunctionalTable lambda = functional_from_rep(MatrixRep::su2_spin(2), 2 * d);
  for (auto _ : state) {
    MomentMatrix m = moment_matrix(lambda, d);
    benchmark::DoNotOptimize(psd_check(m.matrix));
  }
}
BENCHMARK(BM_MomentMatrixPsd)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_MatrixExp(benchmark::State& state) {
  const MatrixRep rep = random_skew_rep(static_cast<unsigned>(state.range(0)), 7);
  const Eigen::MatrixXcd a = rep.generators()[0];
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(a));
}
BENCHMARK(BM_MatrixExp)->RangeMultiplier(2)->Range(2, 16);

void BM_ExtensionGaussian(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const FunctionalTable lambda = gaussian_functional(2 * d);
  GVector t(1);
  t[0] = Scalar(Rational(1, 2));
  for (auto _ : state) {
    GnsModel m = gns_build(lambda, d);
    benchmark::DoNotOptimize(truncated_gns_coefficient(m, t));
  }
}
BENCHMARK(BM_ExtensionGaussian)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
