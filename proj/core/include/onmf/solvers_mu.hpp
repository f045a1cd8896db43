#pragma once

#include <array>

#include "onmf/config.hpp"
#include "onmf/matrix.hpp"
#include "onmf/trace.hpp"

namespace onmf {

/// Result of one outer iteration of any solver.
struct StepOutcome {
  FactorSet factors;
  double objective = 0.0;  ///< objective_for(config) at `factors`
  bool increased = false;  ///< objective rose versus the input factors
  /// Extra damping attempts per factor (B, C, S); zero for MU solvers.
  std::array<int, 3> inner_iters{};
};

struct RunResult {
  FactorSet factors;
  IterationTrace trace;
};

// Multiplicative steps. Within a step B is updated from the old C, then C
// from the new B, then (tri-factor solvers) S from the new B and new C.
// Every denominator gets + config.delta; delta = 0 is accepted here so the
// fixed-point identities can be checked exactly, but run_mu requires > 0.

/// Lee-Seung: b *= (A C^T) / (B C C^T + d), c *= (B^T A) / (B^T B C + d).
StepOutcome ls_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);
/// Ding uni-orthogonal: C denominator is B^T A C^T C + d.
StepOutcome ding_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);
/// Ding bi-orthogonal (three rules). Throws ConfigError without S.
StepOutcome ding_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);
/// Penalized uni-orthogonal MU.
StepOutcome mu_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);
/// Penalized bi-orthogonal MU. Throws ConfigError without S.
StepOutcome mu_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);

/// Applies one multiplicative step of config.solver without evaluating the
/// objective. Throws ConfigError for additive solvers.
FactorSet mu_update(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);

/// C-update of the penalized uni-orthogonal MU rule with B already updated:
/// C (.) (B^T A + alpha C) / (B^T B C + alpha C C^T C + delta).
Matrix mu_u_update_C(const DataMatrix& A, const Matrix& B, const Matrix& C,
                     double alpha, double delta);

/// Seeds factors with init_factors and runs config.max_iter MU steps.
RunResult run_mu(const DataMatrix& A, const SolverConfig& config);
/// Same, from caller-supplied initial factors.
RunResult run_mu(const DataMatrix& A, const SolverConfig& config, FactorSet initial);

}  // namespace onmf
