#pragma once

#include "onmf/config.hpp"
#include "onmf/matrix.hpp"

namespace onmf {

/// Draws B (rows x K), C (K x cols) and, for bi-orthogonal solvers, S (K x K)
/// i.i.d. uniform on (0, 1] from a 64-bit Mersenne Twister seeded with
/// `config.seed`. Entries are generated row-major, B first, then C, then S.
///
/// Throws ConfigError if the rank is not in [1, min(rows, cols)].
FactorSet init_factors(Index rows, Index cols, const SolverConfig& config);

}  // namespace onmf
