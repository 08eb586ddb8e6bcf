// Threaded operator kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "macproj/linalg.hpp"
#include "macproj/operators.hpp"

using namespace macproj;

namespace {

GridPtr grid_of(int n) {
  return make_grid(MacGrid::build({graded_coords(n, 1.0, 0.3), graded_coords(n, 1.0, 0.0), graded_coords(n, 1.0, 0.2)}));
}

VelocityField random_velocity(const GridPtr& g) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VelocityField v(g);
  for (double& x : v.values()) x = u(rng);
  v.zero_exterior();
  return v;
}

PressureField random_pressure(const GridPtr& g) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PressureField p(g);
  for (double& x : p.values()) x = u(rng);
  return p;
}

template <VelocityField (*Op)(const PressureField&)>
void BM_grad(benchmark::State& state) {
  const GridPtr g = grid_of(static_cast<int>(state.range(0)));
  const PressureField p = random_pressure(g);
  for (auto _ : state) benchmark::DoNotOptimize(Op(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->num_faces()));
}

template <PressureField (*Op)(const VelocityField&)>
void BM_div(benchmark::State& state) {
  const GridPtr g = grid_of(static_cast<int>(state.range(0)));
  const VelocityField u = random_velocity(g);
  for (auto _ : state) benchmark::DoNotOptimize(Op(u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->num_cells()));
}

template <VelocityField (*Op)(const VelocityField&)>
void BM_laplace(benchmark::State& state) {
  const GridPtr g = grid_of(static_cast<int>(state.range(0)));
  const VelocityField u = random_velocity(g);
  for (auto _ : state) benchmark::DoNotOptimize(Op(u));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->num_faces()));
}

template <VelocityField (*Op)(const VelocityField&, const VelocityField&)>
void BM_convect(benchmark::State& state) {
  const GridPtr g = grid_of(static_cast<int>(state.range(0)));
  const VelocityField a = random_velocity(g), w = random_velocity(g);
  for (auto _ : state) benchmark::DoNotOptimize(Op(a, w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g->num_faces()));
}

template <bool Threaded>
void BM_multiply(benchmark::State& state) {
  const GridPtr g = grid_of(static_cast<int>(state.range(0)));
  const OperatorWorkspace ops(g);
  const CsrMatrix& a = ops.stiffness();
  const VelocityField x = random_velocity(g);
  std::vector<double> y(a.rows);
  for (auto _ : state) {
    if constexpr (Threaded) {
      a.multiply(x.values(), y);
    } else {
      ref::multiply(a, x.values(), y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nnz()));
}

}  // namespace

BENCHMARK(BM_grad<grad_N>)->Name("grad/omp")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_grad<ref::grad_N>)->Name("grad/serial")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_div<div_N>)->Name("div/omp")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_div<ref::div_N>)->Name("div/serial")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_laplace<laplace_N>)->Name("laplace/omp")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_laplace<ref::laplace_N>)->Name("laplace/serial")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_convect<convect_N>)->Name("convect/omp")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_convect<ref::convect_N>)->Name("convect/serial")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_multiply<true>)->Name("csr_multiply/omp")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_multiply<false>)->Name("csr_multiply/serial")->UseRealTime()->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
