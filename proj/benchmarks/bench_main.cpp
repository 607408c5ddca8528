#include "arskit/classify.hpp"
#include "arskit/geodesy.hpp"
#include "arskit/tables.hpp"

#include <benchmark/benchmark.h>

using namespace arskit;

namespace {

ARSSpec row_spec(std::string_view label) {
  const ExactMat D = nonsub_derivation(*find_nonsub_row(label));
  return ARSSpec::create(GroupTag::heis3, D,
                         {ExactMat::column({Surd(1), Surd(0), Surd(0)}), ExactMat::column({Surd(0), Surd(1), Surd(0)})});
}

void BM_Norm(benchmark::State& state) {
  const auto s = row_spec("1.i.1");
  Vec V(3);
  V << 0.3, -0.7, 1.1;
  const TangentVector tv{GroupPoint::make(GroupTag::heis3, {0.4, -0.2, 0.9}), V};
  for (auto _ : state) benchmark::DoNotOptimize(ars_norm(s, tv));
}
BENCHMARK(BM_Norm);

void BM_Geodesic(benchmark::State& state) {
  const auto s = row_spec("1.i.1");
  Vec l(3);
  l << 1, 0.5, -0.5;
  const CotangentState start{GroupPoint::make(GroupTag::heis3, {0.3, -0.2, 0.5}), l};
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_shoot(s, start, 1.0, steps));
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_Geodesic)->Arg(100)->Arg(1000);

void BM_Components(benchmark::State& state) {
  const auto s = row_spec("1.ii.2");
  const Box box = Box::cube(3, -3, 3);
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_components(s, box, res));
}
BENCHMARK(BM_Components)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Tangency(benchmark::State& state) {
  const auto s = row_spec("1.i.1");
  for (auto _ : state) benchmark::DoNotOptimize(tangency_points(s));
}
BENCHMARK(BM_Tangency);

void BM_ClassifyAff2(benchmark::State& state) {
  const auto s = ARSSpec::create(GroupTag::aff2, derivation_space(LieAlgebraModel::get(GroupTag::aff2)).make({Surd(1), Surd(1)}),
                                 {ExactMat::column({Surd(2), Surd(3)})});
  for (auto _ : state) benchmark::DoNotOptimize(classify(s));
}
BENCHMARK(BM_ClassifyAff2);

void BM_ClassifyNonsubIsometry(benchmark::State& state) {
  const auto s = row_spec("1.i.1");
  for (auto _ : state) benchmark::DoNotOptimize(heis_nonsub_isometry_class(s));
}
BENCHMARK(BM_ClassifyNonsubIsometry);

}  // namespace

BENCHMARK_MAIN();
