#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "freeplate/bounds.hpp"
#include "freeplate/domain.hpp"
#include "freeplate/eigensolver.hpp"
#include "freeplate/numerics.hpp"
#include "freeplate/ritz.hpp"

namespace {

using namespace freeplate;

void AssembleSquare(benchmark::State& state) {
  const DomainSpec domain = DomainSpec::rectangle(1.0, 1.0);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    RitzSystem sys = assemble(domain, degree);
    benchmark::DoNotOptimize(sys.mass.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(AssembleSquare)->Arg(8)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void AssembleDisk(benchmark::State& state) {
  const DomainSpec domain = DomainSpec::disk(1.0);
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    RitzSystem sys = assemble(domain, degree);
    benchmark::DoNotOptimize(sys.mass.data());
  }
}
BENCHMARK(AssembleDisk)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

SymMatrix laplacian_like(int n) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = (i == j) ? 2.0 + 0.01 * i : 1.0 / (1.0 + std::abs(i - j));
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

void JacobiEigensymm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymMatrix a = laplacian_like(n);
  for (auto _ : state) {
    JacobiResult r = jacobi_eigensymm(a);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(JacobiEigensymm)->RangeMultiplier(2)->Range(32, 256)->Complexity()
    ->Unit(benchmark::kMillisecond);

void GeneralizedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymMatrix k = laplacian_like(n);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = (i == j) ? 1.0 : 0.2 / (1.0 + (i - j) * (i - j));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  for (auto _ : state) {
    EigResult r = solve_generalized(k, m);
    benchmark::DoNotOptimize(r.values.data());
  }
}
BENCHMARK(GeneralizedSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void MembraneSpectrumSquare(benchmark::State& state) {
  const DomainSpec domain = DomainSpec::rectangle(1.0, 1.0);
  for (auto _ : state) {
    Spectrum s = compute_spectrum(domain, Operator::Membrane, 0.0, 6, 1e-6);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(MembraneSpectrumSquare)->Unit(benchmark::kMillisecond);

void PlateEigBoundNumeric(benchmark::State& state) {
  const BoundInput in(2, 1.0, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PlateEigBound b = plate_eig_bound_numeric(in);
    benchmark::DoNotOptimize(b.value);
  }
}
BENCHMARK(PlateEigBoundNumeric)->Arg(1)->Arg(10)->Arg(100);

void BoundsTable(benchmark::State& state) {
  for (auto _ : state) {
    auto rows = bounds_table(2, 1.0, 1.0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK(BoundsTable)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BesselEval(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0.0;
    for (int m = 0; m <= 10; ++m)
      for (double x = 0.5; x < 40.0; x += 0.5) acc += bessel_j(m, x).value;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BesselEval)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
