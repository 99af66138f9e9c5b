// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "jt/fourier.hpp"
#include "jt/grid.hpp"
#include "jt/kernels.hpp"
#include "jt/propagator.hpp"
#include "jt/twa.hpp"

namespace {

const jt::ModelParams kParams{0.02, 0.01};

jt::SpinorField packet(std::size_t n) {
  const jt::Grid2D grid(n, 25.0);
  auto field = jt::make_gaussian(grid, {10.0, 0.0}, 1.0);
  jt::potential_step(field, kParams, 30.0);  // populate both channels
  return field;
}

template <auto Kernel>
void BM_LocalUnitary(benchmark::State& state) {
  auto field = packet(static_cast<std::size_t>(state.range(0)));
  jt::kernels::LocalUnitary u;
  jt::kernels::serial::build_local_unitary(field.grid, kParams, 0.1, u);
  for (auto _ : state) {
    Kernel(field.c1, field.c2, u);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(field.grid.size()));
}

template <auto Kernel>
void BM_MultiplyPhase(benchmark::State& state) {
  auto field = packet(static_cast<std::size_t>(state.range(0)));
  jt::ComplexArray phase(field.grid.size());
  jt::kernels::serial::build_kinetic_phase(field.grid, kParams.omega, 0.1, 1.0, phase);
  for (auto _ : state) {
    Kernel(field.c1, field.c2, phase);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(field.grid.size()));
}

template <auto Kernel>
void BM_PositionMoments(benchmark::State& state) {
  const auto field = packet(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(field.grid, field.c1, field.c2));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(field.grid.size()));
}

void BM_Fourier(benchmark::State& state) {
  auto field = packet(static_cast<std::size_t>(state.range(0)));
  const auto& ft = jt::fourier(field.grid.n());
  for (auto _ : state) {
    ft.forward(field.c1);
    ft.inverse(field.c1);
  }
}

void BM_StrangStep(benchmark::State& state) {
  auto field = packet(static_cast<std::size_t>(state.range(0)));
  const jt::SplitOperator op(field.grid, kParams, 0.1);
  for (auto _ : state) op.advance(field, 1);
}

void BM_EnsembleSerial(benchmark::State& state) {
  jt::EnsembleSpec spec;
  spec.n_traj = 2048;
  spec.t_final = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jt::reference::run_ensemble_serial(spec, kParams));
  }
}

void BM_EnsembleParallel(benchmark::State& state) {
  jt::EnsembleSpec spec;
  spec.n_traj = 2048;
  spec.t_final = 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(jt::run_ensemble(spec, kParams));
}

}  // namespace

BENCHMARK(BM_LocalUnitary<jt::kernels::serial::apply_local_unitary>)->Arg(128)->Arg(256);
BENCHMARK(BM_LocalUnitary<jt::kernels::parallel::apply_local_unitary>)->Arg(128)->Arg(256);
BENCHMARK(BM_MultiplyPhase<jt::kernels::serial::multiply_phase>)->Arg(128)->Arg(256);
BENCHMARK(BM_MultiplyPhase<jt::kernels::parallel::multiply_phase>)->Arg(128)->Arg(256);
BENCHMARK(BM_PositionMoments<jt::kernels::serial::position_moments>)->Arg(256);
BENCHMARK(BM_PositionMoments<jt::kernels::parallel::position_moments>)->Arg(256);
BENCHMARK(BM_Fourier)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StrangStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
