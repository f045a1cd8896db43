#include "onmf/solvers_mu.hpp"

#include <chrono>
#include <string>

#include "onmf/errors.hpp"
#include "onmf/init.hpp"
#include "onmf/normalize.hpp"
#include "onmf/objectives.hpp"

namespace onmf {

namespace {

using detail::a_times_ct;
using detail::wt_times_a;

// X (.) numer / (denom + delta)
Matrix scale(const Matrix& X, const Matrix& numer, const Matrix& denom, double delta) {
  return (X.array() * numer.array() / (denom.array() + delta)).matrix();
}

Matrix ls_update_B(const DataMatrix& A, const Matrix& B, const Matrix& C, double delta) {
  return scale(B, a_times_ct(A, C), B * (C * C.transpose()), delta);
}

const Matrix& require_S(const FactorSet& F, SolverKind kind) {
  if (!F.S) {
    throw ConfigError(std::string(to_string(kind)) + " requires the S factor");
  }
  return *F.S;
}

FactorSet ls_update(const DataMatrix& A, const FactorSet& F, double delta) {
  FactorSet out;
  out.B = ls_update_B(A, F.B, F.C, delta);
  out.C = scale(F.C, wt_times_a(A, out.B), (out.B.transpose() * out.B) * F.C, delta);
  return out;
}

FactorSet ding_u_update(const DataMatrix& A, const FactorSet& F, double delta) {
  FactorSet out;
  out.B = ls_update_B(A, F.B, F.C, delta);
  out.C = scale(F.C, wt_times_a(A, out.B),
                (out.B.transpose() * a_times_ct(A, F.C)) * F.C, delta);
  return out;
}

FactorSet ding_b_update(const DataMatrix& A, const FactorSet& F, double delta) {
  const Matrix& S = require_S(F, SolverKind::DingB);
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  FactorSet out;

  const Matrix ACtSt = a_times_ct(A, C) * S.transpose();
  out.B = scale(B, ACtSt, B * (B.transpose() * ACtSt), delta);

  out.C = scale(C, S.transpose() * wt_times_a(A, out.B),
                (S.transpose() * out.B.transpose() * a_times_ct(A, C)) * C, delta);

  const Matrix BtACt = out.B.transpose() * a_times_ct(A, out.C);
  out.S = scale(S, BtACt, (out.B.transpose() * out.B) * S * (out.C * out.C.transpose()),
                delta);
  return out;
}

FactorSet mu_u_update(const DataMatrix& A, const FactorSet& F, double alpha, double delta) {
  FactorSet out;
  out.B = ls_update_B(A, F.B, F.C, delta);
  out.C = mu_u_update_C(A, out.B, F.C, alpha, delta);
  return out;
}

FactorSet mu_b_update(const DataMatrix& A, const FactorSet& F, double alpha, double beta,
                      double delta) {
  const Matrix& S = require_S(F, SolverKind::MuB);
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  FactorSet out;

  Matrix numer = a_times_ct(A, C) * S.transpose();
  Matrix denom = B * (S * (C * C.transpose()) * S.transpose());
  if (beta != 0.0) {
    numer += beta * B;
    denom += beta * (B * (B.transpose() * B));
  }
  out.B = scale(B, numer, denom, delta);

  const Matrix BS = out.B * S;
  numer = wt_times_a(A, BS);
  denom = (BS.transpose() * BS) * C;
  if (alpha != 0.0) {
    numer += alpha * C;
    denom += alpha * ((C * C.transpose()) * C);
  }
  out.C = scale(C, numer, denom, delta);

  out.S = scale(S, out.B.transpose() * a_times_ct(A, out.C),
                (out.B.transpose() * out.B) * S * (out.C * out.C.transpose()), delta);
  return out;
}

StepOutcome finish_step(const DataMatrix& A, const FactorSet& before, FactorSet after,
                        const SolverConfig& config) {
  const ObjectiveKind kind = objective_for(config);
  StepOutcome out;
  const double previous = objective(A, before, kind);
  out.factors = std::move(after);
  out.objective = objective(A, out.factors, kind);
  out.increased = objective_increased(previous, out.objective);
  return out;
}

SolverConfig with_solver(const SolverConfig& config, SolverKind kind) {
  SolverConfig c = config;
  c.solver = kind;
  return c;
}

}  // namespace

Matrix mu_u_update_C(const DataMatrix& A, const Matrix& B, const Matrix& C, double alpha,
                     double delta) {
  Matrix numer = wt_times_a(A, B);
  Matrix denom = (B.transpose() * B) * C;
  if (alpha != 0.0) {
    numer += alpha * C;
    denom += alpha * ((C * C.transpose()) * C);
  }
  return scale(C, numer, denom, delta);
}

FactorSet mu_update(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  switch (config.solver) {
    case SolverKind::LS:
      return ls_update(A, F, config.delta);
    case SolverKind::DingU:
      return ding_u_update(A, F, config.delta);
    case SolverKind::DingB:
      return ding_b_update(A, F, config.delta);
    case SolverKind::MuU:
      return mu_u_update(A, F, config.alpha, config.delta);
    case SolverKind::MuB:
      return mu_b_update(A, F, config.alpha, config.beta, config.delta);
    case SolverKind::AuU:
    case SolverKind::AuB:
      break;
  }
  throw ConfigError(std::string(to_string(config.solver)) +
                    " is not a multiplicative solver");
}

StepOutcome ls_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const SolverConfig c = with_solver(config, SolverKind::LS);
  return finish_step(A, F, mu_update(A, F, c), c);
}

StepOutcome ding_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const SolverConfig c = with_solver(config, SolverKind::DingU);
  return finish_step(A, F, mu_update(A, F, c), c);
}

StepOutcome ding_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const SolverConfig c = with_solver(config, SolverKind::DingB);
  return finish_step(A, F, mu_update(A, F, c), c);
}

StepOutcome mu_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const SolverConfig c = with_solver(config, SolverKind::MuU);
  return finish_step(A, F, mu_update(A, F, c), c);
}

StepOutcome mu_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const SolverConfig c = with_solver(config, SolverKind::MuB);
  return finish_step(A, F, mu_update(A, F, c), c);
}

RunResult run_mu(const DataMatrix& A, const SolverConfig& config) {
  config.validate(A.rows(), A.cols());
  return run_mu(A, config, init_factors(A.rows(), A.cols(), config));
}

RunResult run_mu(const DataMatrix& A, const SolverConfig& config, FactorSet initial) {
  config.validate(A.rows(), A.cols());
  if (is_additive(config.solver)) {
    throw ConfigError(std::string(to_string(config.solver)) +
                      " is not a multiplicative solver");
  }
  const ObjectiveKind kind = objective_for(config);
  check_factor_shapes(A, initial, kind.tri_factor());

  const auto started = std::chrono::steady_clock::now();
  RunResult result;
  result.factors = std::move(initial);

  auto record = [&](int iter, double value, bool violation) {
    TraceEntry entry;
    entry.iter = iter;
    entry.objective = value;
    entry.violation = violation;
    if (config.kkt_tolerance) {
      entry.kkt_residual = kkt_report(A, result.factors, kind, *config.kkt_tolerance).combined;
    }
    result.trace.entries.push_back(entry);
  };

  double current = objective(A, result.factors, kind);
  record(0, current, false);
  for (int k = 1; k <= config.max_iter; ++k) {
    result.factors = mu_update(A, result.factors, config);
    if (config.normalize_B) {
      result.factors = normalize_B_unit_columns(result.factors);
    }
    const double next = objective(A, result.factors, kind);
    record(k, next, objective_increased(current, next));
    current = next;
  }
  result.trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace onmf
