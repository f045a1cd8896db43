#include "onmf/init.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "onmf/errors.hpp"

namespace onmf {

namespace {

// 1 - u with u uniform on the 2^-53 grid in [0, 1); never returns 0.
double draw_open_closed(std::mt19937_64& rng) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return 1.0 - static_cast<double>(rng() >> 11) * kScale;
}

Matrix draw_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix X(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      X(i, j) = draw_open_closed(rng);
    }
  }
  return X;
}

}  // namespace

FactorSet init_factors(Index rows, Index cols, const SolverConfig& config) {
  if (rows < 1 || cols < 1 || config.rank < 1 ||
      config.rank > std::min(rows, cols)) {
    std::ostringstream os;
    os << "cannot initialize rank " << config.rank << " factors for a " << rows
       << "x" << cols << " matrix";
    throw ConfigError(os.str());
  }
  std::mt19937_64 rng(config.seed);
  const Index K = config.rank;
  FactorSet F;
  F.B = draw_matrix(rows, K, rng);
  F.C = draw_matrix(K, cols, rng);
  if (is_bi_orthogonal(config.solver)) {
    F.S = draw_matrix(K, K, rng);
  }
  return F;
}

}  // namespace onmf
