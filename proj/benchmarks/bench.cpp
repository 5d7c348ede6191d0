#include <benchmark/benchmark.h>

#include "msf/poisson.hpp"

namespace {

const msf::CutProjectScheme& scheme() {
  static auto s = msf::CutProjectScheme::canonical(std::sqrt(2.0), std::sqrt(3.0));
  return s;
}

void BM_BumpFt(benchmark::State& state) {
  msf::BumpSpec spec{msf::Window(1.0), 0.5, 2, 40};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(msf::bump_ft(spec, t));
    t += 0.01;
    if (t > 50.0) t = 0.0;
  }
}
BENCHMARK(BM_BumpFt);

void BM_BuildPatch(benchmark::State& state) {
  const double R = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto patch = msf::build_model_set(scheme(), msf::Window(1.0), 0.0, 0.0, R);
    benchmark::DoNotOptimize(patch.points.size());
  }
}
BENCHMARK(BM_BuildPatch)->Arg(50)->Arg(500);

void BM_BracketEval(benchmark::State& state) {
  msf::BumpSpec spec{msf::Window(1.0), 0.5, 2, 40};
  auto table = std::make_shared<const msf::SlimDualTable>(
      msf::slim_dual_table(scheme(), spec, 200.0));
  auto f = msf::FourierFunction::unit_gaussian();
  msf::BracketFunction bracket(f, f, table);
  double t = -100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket(t));
    t += 0.37;
    if (t > 100.0) t = -100.0;
  }
}
BENCHMARK(BM_BracketEval);

void BM_InnerProduct(benchmark::State& state) {
  auto f = msf::FourierFunction::unit_gaussian();
  auto g = msf::FourierFunction::gaussian(1.0, 0.7).translated(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(msf::inner_product(f, g));
  }
}
BENCHMARK(BM_InnerProduct);

}  // namespace

BENCHMARK_MAIN();
