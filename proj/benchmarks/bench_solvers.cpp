#include <random>

#include <benchmark/benchmark.h>

#include "onmf/onmf.hpp"

namespace {

// Sparse term-document-like matrix with ~2% density.
onmf::DataMatrix sparse_data(onmf::Index m, onmf::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<onmf::Triplet> t;
  for (onmf::Index j = 0; j < n; ++j) {
    for (onmf::Index i = 0; i < m; ++i) {
      if (u(rng) < 0.02) t.emplace_back(i, j, 1.0 + 4.0 * u(rng));
    }
  }
  return onmf::normalize_columns(onmf::DataMatrix::from_triplets(m, n, t));
}

void BM_Solve(benchmark::State& state, onmf::SolverKind kind) {
  const onmf::DataMatrix A = sparse_data(state.range(0), state.range(0) / 2, 1);
  onmf::SolverConfig c;
  c.solver = kind;
  c.rank = static_cast<int>(state.range(1));
  c.max_iter = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(onmf::solve(A, c));
  }
  state.SetItemsProcessed(state.iterations() * c.max_iter);
}

void BM_Objective(benchmark::State& state) {
  const onmf::DataMatrix A = sparse_data(state.range(0), state.range(0) / 2, 2);
  onmf::SolverConfig c;
  c.rank = 10;
  const onmf::FactorSet F = onmf::init_factors(A.rows(), A.cols(), c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(onmf::objective(A, F, onmf::ObjectiveKind::ortho_u(0.1)));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Solve, ls, onmf::SolverKind::LS)->Args({1000, 10})->Args({4000, 20});
BENCHMARK_CAPTURE(BM_Solve, mu_u, onmf::SolverKind::MuU)->Args({1000, 10})->Args({4000, 20});
BENCHMARK_CAPTURE(BM_Solve, au_u, onmf::SolverKind::AuU)->Args({1000, 10})->Args({4000, 20});
BENCHMARK_CAPTURE(BM_Solve, au_b, onmf::SolverKind::AuB)->Args({1000, 10})->Args({4000, 20});
BENCHMARK(BM_Objective)->Arg(1000)->Arg(4000);

BENCHMARK_MAIN();
