#include "onmf/solver.hpp"

namespace onmf {

StepOutcome step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  switch (config.solver) {
    case SolverKind::LS:
      return ls_step(A, F, config);
    case SolverKind::DingU:
      return ding_u_step(A, F, config);
    case SolverKind::DingB:
      return ding_b_step(A, F, config);
    case SolverKind::MuU:
      return mu_u_step(A, F, config);
    case SolverKind::MuB:
      return mu_b_step(A, F, config);
    case SolverKind::AuU:
      return au_u_step(A, F, config);
    case SolverKind::AuB:
      return au_b_step(A, F, config);
  }
  return {};
}

RunResult solve(const DataMatrix& A, const SolverConfig& config) {
  return is_additive(config.solver) ? run_au(A, config) : run_mu(A, config);
}

RunResult solve(const DataMatrix& A, const SolverConfig& config, FactorSet initial) {
  return is_additive(config.solver) ? run_au(A, config, std::move(initial))
                                    : run_mu(A, config, std::move(initial));
}

}  // namespace onmf
