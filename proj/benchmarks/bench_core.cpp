// possem - stability certificates for positive linear systems
// Copyright 2026 The possem Authors
// Licensed under the Apache License, Version 2.0

#include <benchmark/benchmark.h>

#include "possem/certificates.hpp"
#include "possem/collatz_wielandt.hpp"
#include "possem/gallery.hpp"
#include "possem/log_formula.hpp"
#include "possem/lyapunov.hpp"
#include "possem/spectral.hpp"

namespace {

using namespace possem;

Mat stable_metzler(int d, std::uint64_t seed) {
  Mat A = metzler_random(d, 0.5, 0.0, seed);
  double s = eigen_report(A).s_A;
  return A + (-0.5 - s) * Mat::Identity(d, d);
}

void BM_Expm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = metzler_random(d, 0.5, 0.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm(A, 1.0));
  }
}
BENCHMARK(BM_Expm)->Arg(8)->Arg(32)->Arg(128);

void BM_EigenReport(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = metzler_random(d, 0.5, 0.0, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigen_report(A));
  }
}
BENCHMARK(BM_EigenReport)->Arg(8)->Arg(32)->Arg(128);

void BM_PerronPair(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = stable_metzler(d, 11);
  Cone K = Cone::Orthant(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(perron_pair(A, K));
  }
}
BENCHMARK(BM_PerronPair)->Arg(8)->Arg(32)->Arg(128);

void BM_EtaSupExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = stable_metzler(d, 13);
  Cone K = Cone::Orthant(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniform_small_gain_eta(A, K, NormChoice::kSup));
  }
}
BENCHMARK(BM_EtaSupExact)->Arg(8)->Arg(20)->Arg(40);

void BM_AssembleCertificate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = stable_metzler(d, 17);
  Cone K = Cone::Orthant(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_certificate(A, K, NormChoice::kSup, 1));
  }
}
BENCHMARK(BM_AssembleCertificate)->Arg(6)->Arg(12)->Arg(20);

void BM_LyapunovSolve(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = stable_metzler(d, 19);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov_solve(A));
  }
}
// d = 80 exercises the Schur route (the Kronecker system stops at 64).
BENCHMARK(BM_LyapunovSolve)->Arg(8)->Arg(24)->Arg(80);

void BM_CwOptimize(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = metzler_random_irreducible(d, 0.4, 0.0, 23);
  Cone K = Cone::Orthant(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cw_optimize(A, K, 1));
  }
}
BENCHMARK(BM_CwOptimize)->Arg(8)->Arg(32);

void BM_OrbitTrace(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Mat A = stable_metzler(d, 29);
  Vec u = Vec::Ones(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_trace(A, u, u, 50.0, 64));
  }
}
BENCHMARK(BM_OrbitTrace)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
