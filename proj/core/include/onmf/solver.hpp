#pragma once

#include "onmf/config.hpp"
#include "onmf/matrix.hpp"
#include "onmf/solvers_au.hpp"
#include "onmf/solvers_mu.hpp"

namespace onmf {

/// One outer iteration of config.solver.
StepOutcome step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);

/// Full run of config.solver from seeded initial factors.
RunResult solve(const DataMatrix& A, const SolverConfig& config);
RunResult solve(const DataMatrix& A, const SolverConfig& config, FactorSet initial);

}  // namespace onmf
