#pragma once

#include "onmf/config.hpp"
#include "onmf/matrix.hpp"
#include "onmf/objectives.hpp"
#include "onmf/solvers_mu.hpp"

namespace onmf {

// Additive-update solvers with zero-locking escape.
//
// Each factor X moves by X - Xbar (.) grad / (denom(Xbar) + d), where Xbar
// lifts entries with a negative gradient to at least sigma. For the damped
// factors, d starts at config.delta and is multiplied by config.step until
// the objective does not increase; each attempt restarts from the same
// pre-step factor. AU-U damps only C (its B step uses the fixed
// config.delta); AU-B damps B, C and S in turn.

/// Xbar_ij = X_ij if grad_ij >= 0, else max(X_ij, sigma).
Matrix escape(const Matrix& X, const Matrix& grad, double sigma);

/// Damping used on the given 0-based attempt: config.delta * step^attempt.
double damping_for_attempt(const SolverConfig& config, int attempt);

/// Accepted result of one damped inner loop.
struct DampedUpdate {
  Matrix factor;
  double delta = 0.0;    ///< damping of the accepted attempt
  int attempts = 0;      ///< >= 1
  double objective = 0.0;
};

/// AU-U B-step with the fixed damping config.delta.
Matrix au_u_b_update(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);

/// AU-U C-candidate for one damping value, with F.B already updated:
/// C - Cbar (.) grad_C / (B^T B Cbar + alpha Cbar Cbar^T Cbar + delta_c).
Matrix au_u_c_candidate(const DataMatrix& A, const FactorSet& F, double alpha,
                        double sigma, double delta_c);

/// Damped AU-U C-step (F.B already updated). Throws DampingFailure after
/// config.max_inner_iter rejected attempts.
DampedUpdate au_u_c_update(const DataMatrix& A, const FactorSet& F,
                           const SolverConfig& config);

/// AU-B candidate for one factor and damping value, evaluated at the
/// current F (for C pass the updated B, for S the updated B and C).
Matrix au_b_candidate(const DataMatrix& A, const FactorSet& F, const SolverConfig& config,
                      Factor which, double delta);

/// One outer AU-U iteration: B-step then damped C-step.
StepOutcome au_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);
/// One outer AU-B iteration: damped B, then C, then S. Throws ConfigError
/// without S and DampingFailure from any sub-loop.
StepOutcome au_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config);

/// Seeds factors with init_factors and runs config.max_iter AU iterations.
RunResult run_au(const DataMatrix& A, const SolverConfig& config);
/// Same, from caller-supplied nonnegative initial factors.
RunResult run_au(const DataMatrix& A, const SolverConfig& config, FactorSet initial);

}  // namespace onmf
