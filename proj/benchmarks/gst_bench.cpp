// Microbenchmarks for the hot paths: kernel evaluation, basis rows,
// quadrature generation, Gram assembly with its eigenrange, the Krylov
// solver, contour reconstruction, and weak-limit verification.

#include <benchmark/benchmark.h>

#include <cmath>

#include "gst/frame.hpp"
#include "gst/hermite.hpp"
#include "gst/reconstruct.hpp"
#include "gst/stft.hpp"
#include "gst/trajectory.hpp"
#include "gst/weak_limit.hpp"

using namespace gst;

namespace {

void BM_KernelPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PhasePoint z{1.3, -0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stft_kernel(n, n / 2, z));
  }
}
BENCHMARK(BM_KernelPoint)->Arg(4)->Arg(16)->Arg(64);

void BM_BasisRow(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  HermiteExpansion g = HermiteExpansion::basis(0);
  std::vector<cdouble> row;
  PhasePoint z{0.4, 1.1};
  for (auto _ : state) {
    stft_basis_row(g, z, N, row);
    benchmark::DoNotOptimize(row.data());
  }
}
BENCHMARK(BM_BasisRow)->Arg(8)->Arg(32);

void BM_Quadrature(benchmark::State& state) {
  Trajectory t = make_circles(0.5, 16);
  for (auto _ : state) {
    QuadratureSet q = quadrature(t, 0.02);
    benchmark::DoNotOptimize(q.nodes.data());
  }
}
BENCHMARK(BM_Quadrature);

void BM_GramBounds(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  HermiteExpansion g = HermiteExpansion::basis(0);
  QuadratureSet quad = quadrature(make_circles(0.5, 16), 0.05);
  for (auto _ : state) {
    FrameReport r = gram_frame_bounds(g, quad, N, "circles");
    benchmark::DoNotOptimize(r.A_N);
  }
}
BENCHMARK(BM_GramBounds)->Arg(4)->Arg(8)->Arg(12);

void BM_CgReconstruct(benchmark::State& state) {
  HermiteExpansion g = HermiteExpansion::basis(0);
  HermiteExpansion f = random_expansion(8, 77);
  SampledField samples =
      sample_field(f, g, quadrature(make_circles(0.5, 16), 0.02));
  for (auto _ : state) {
    ReconstructionResult r = cg_reconstruct(samples, g, 8, 1e-8);
    benchmark::DoNotOptimize(r.residual);
  }
}
BENCHMARK(BM_CgReconstruct);

void BM_CircleReconstruct(benchmark::State& state) {
  HermiteExpansion g = HermiteExpansion::basis(0) + HermiteExpansion::basis(1);
  HermiteExpansion f = random_expansion(6, 99);
  PhasePoint z{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stft_circle_reconstruct(f, g, {4.0, 5.0}, z, 256));
  }
}
BENCHMARK(BM_CircleReconstruct);

void BM_WeakLimit(benchmark::State& state) {
  Trajectory t = make_circles(1.0, 40);
  TranslateSequence seq = TranslateSequence::escape(1.0, 0.0, 0.0);
  for (auto _ : state) {
    WeakLimitReport r = verify_limit(t, seq, {4, 8, 16, 32});
    benchmark::DoNotOptimize(r.final_value);
  }
}
BENCHMARK(BM_WeakLimit);

}  // namespace

BENCHMARK_MAIN();
