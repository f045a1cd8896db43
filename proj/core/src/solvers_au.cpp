#include "onmf/solvers_au.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "onmf/errors.hpp"
#include "onmf/init.hpp"

namespace onmf {

namespace {

using detail::a_times_ct;
using detail::wt_times_a;

// Everything an additive step needs except the damping value.
struct Direction {
  Matrix X;
  Matrix bar;
  Matrix grad;
  Matrix denom;

  Matrix candidate(double delta) const {
    Matrix out = (X.array() - bar.array() * grad.array() / (denom.array() + delta)).matrix();
    // Exact arithmetic keeps this >= 0; clip round-off below zero.
    return out.cwiseMax(0.0);
  }
};

Direction au_u_b_direction(const DataMatrix& A, const FactorSet& F, double sigma) {
  const Matrix CCt = F.C * F.C.transpose();
  Direction d;
  d.X = F.B;
  d.grad = F.B * CCt - a_times_ct(A, F.C);
  d.bar = escape(F.B, d.grad, sigma);
  d.denom = d.bar * CCt;
  return d;
}

Direction au_u_c_direction(const DataMatrix& A, const FactorSet& F, double alpha,
                           double sigma) {
  const Matrix& C = F.C;
  const Matrix BtB = F.B.transpose() * F.B;
  Direction d;
  d.X = C;
  d.grad = BtB * C - wt_times_a(A, F.B);
  if (alpha != 0.0) {
    d.grad += alpha * ((C * C.transpose()) * C - C);
  }
  d.bar = escape(C, d.grad, sigma);
  d.denom = BtB * d.bar;
  if (alpha != 0.0) {
    d.denom += alpha * ((d.bar * d.bar.transpose()) * d.bar);
  }
  return d;
}

const Matrix& require_S(const FactorSet& F) {
  if (!F.S) {
    throw ConfigError("au-b requires the S factor");
  }
  return *F.S;
}

Direction au_b_direction(const DataMatrix& A, const FactorSet& F,
                         const SolverConfig& config, Factor which) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  const Matrix& S = require_S(F);
  Direction d;
  switch (which) {
    case Factor::B: {
      const Matrix middle = S * (C * C.transpose()) * S.transpose();
      d.X = B;
      d.grad = B * middle - a_times_ct(A, C) * S.transpose();
      if (config.beta != 0.0) {
        d.grad += config.beta * (B * (B.transpose() * B) - B);
      }
      d.bar = escape(B, d.grad, config.sigma);
      d.denom = d.bar * middle;
      if (config.beta != 0.0) {
        d.denom += config.beta * (d.bar * (d.bar.transpose() * d.bar));
      }
      break;
    }
    case Factor::C: {
      const Matrix BS = B * S;
      const Matrix gram = BS.transpose() * BS;
      d.X = C;
      d.grad = gram * C - wt_times_a(A, BS);
      if (config.alpha != 0.0) {
        d.grad += config.alpha * ((C * C.transpose()) * C - C);
      }
      d.bar = escape(C, d.grad, config.sigma);
      d.denom = gram * d.bar;
      if (config.alpha != 0.0) {
        d.denom += config.alpha * ((d.bar * d.bar.transpose()) * d.bar);
      }
      break;
    }
    case Factor::S: {
      const Matrix BtB = B.transpose() * B;
      const Matrix CCt = C * C.transpose();
      d.X = S;
      d.grad = BtB * S * CCt - B.transpose() * a_times_ct(A, C);
      d.bar = escape(S, d.grad, config.sigma);
      d.denom = BtB * d.bar * CCt;
      break;
    }
  }
  return d;
}

template <class Evaluate>
DampedUpdate damped_search(const Direction& dir, const SolverConfig& config,
                           double reference, char name, Evaluate&& evaluate) {
  double delta = config.delta;
  double value = reference;
  for (int attempt = 0; attempt < config.max_inner_iter; ++attempt) {
    delta = damping_for_attempt(config, attempt);
    Matrix candidate = dir.candidate(delta);
    value = evaluate(candidate);
    if (!objective_increased(reference, value)) {
      return {std::move(candidate), delta, attempt + 1, value};
    }
  }
  throw DampingFailure(name, delta, value, reference);
}

StepOutcome au_u_advance(const DataMatrix& A, const FactorSet& F,
                         const SolverConfig& config, double previous) {
  const ObjectiveKind kind = ObjectiveKind::ortho_u(config.alpha);
  FactorSet next;
  next.B = au_u_b_update(A, F, config);
  next.C = F.C;
  const double reference = objective(A, next, kind);

  const Direction dir = au_u_c_direction(A, next, config.alpha, config.sigma);
  FactorSet trial = next;
  DampedUpdate c = damped_search(dir, config, reference, 'C', [&](const Matrix& X) {
    trial.C = X;
    return objective(A, trial, kind);
  });

  StepOutcome out;
  next.C = std::move(c.factor);
  out.factors = std::move(next);
  out.objective = c.objective;
  out.increased = objective_increased(previous, out.objective);
  out.inner_iters = {0, c.attempts - 1, 0};
  return out;
}

StepOutcome au_b_advance(const DataMatrix& A, const FactorSet& F,
                         const SolverConfig& config, double previous) {
  require_S(F);
  const ObjectiveKind kind = ObjectiveKind::ortho_b(config.alpha, config.beta);
  FactorSet current = F;
  FactorSet trial = F;
  double reference = previous;
  StepOutcome out;

  constexpr Factor kOrder[] = {Factor::B, Factor::C, Factor::S};
  for (std::size_t i = 0; i < 3; ++i) {
    const Factor which = kOrder[i];
    const Direction dir = au_b_direction(A, current, config, which);
    auto slot = [which](FactorSet& fs) -> Matrix& {
      return which == Factor::B ? fs.B : which == Factor::C ? fs.C : *fs.S;
    };
    trial = current;
    DampedUpdate u = damped_search(dir, config, reference, factor_name(which),
                                   [&](const Matrix& X) {
                                     slot(trial) = X;
                                     return objective(A, trial, kind);
                                   });
    slot(current) = std::move(u.factor);
    reference = u.objective;
    out.inner_iters[i] = u.attempts - 1;
  }
  out.factors = std::move(current);
  out.objective = reference;
  out.increased = objective_increased(previous, out.objective);
  return out;
}

}  // namespace

Matrix escape(const Matrix& X, const Matrix& grad, double sigma) {
  if (X.rows() != grad.rows() || X.cols() != grad.cols()) {
    throw ShapeError("escape: factor and gradient shapes differ");
  }
  Matrix bar = X;
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      if (grad(i, j) < 0.0) {
        bar(i, j) = std::max(X(i, j), sigma);
      }
    }
  }
  return bar;
}

double damping_for_attempt(const SolverConfig& config, int attempt) {
  return config.delta * std::pow(config.step, attempt);
}

Matrix au_u_b_update(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  check_factor_shapes(A, F, false);
  return au_u_b_direction(A, F, config.sigma).candidate(config.delta);
}

Matrix au_u_c_candidate(const DataMatrix& A, const FactorSet& F, double alpha,
                        double sigma, double delta_c) {
  check_factor_shapes(A, F, false);
  return au_u_c_direction(A, F, alpha, sigma).candidate(delta_c);
}

DampedUpdate au_u_c_update(const DataMatrix& A, const FactorSet& F,
                           const SolverConfig& config) {
  check_factor_shapes(A, F, false);
  const ObjectiveKind kind = ObjectiveKind::ortho_u(config.alpha);
  const double reference = objective(A, F, kind);
  const Direction dir = au_u_c_direction(A, F, config.alpha, config.sigma);
  FactorSet trial = F;
  return damped_search(dir, config, reference, 'C', [&](const Matrix& X) {
    trial.C = X;
    return objective(A, trial, kind);
  });
}

Matrix au_b_candidate(const DataMatrix& A, const FactorSet& F, const SolverConfig& config,
                      Factor which, double delta) {
  check_factor_shapes(A, F, true);
  return au_b_direction(A, F, config, which).candidate(delta);
}

StepOutcome au_u_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  const double previous = objective(A, F, ObjectiveKind::ortho_u(config.alpha));
  return au_u_advance(A, F, config, previous);
}

StepOutcome au_b_step(const DataMatrix& A, const FactorSet& F, const SolverConfig& config) {
  require_S(F);
  const double previous =
      objective(A, F, ObjectiveKind::ortho_b(config.alpha, config.beta));
  return au_b_advance(A, F, config, previous);
}

RunResult run_au(const DataMatrix& A, const SolverConfig& config) {
  config.validate(A.rows(), A.cols());
  return run_au(A, config, init_factors(A.rows(), A.cols(), config));
}

RunResult run_au(const DataMatrix& A, const SolverConfig& config, FactorSet initial) {
  config.validate(A.rows(), A.cols());
  if (!is_additive(config.solver)) {
    throw ConfigError(std::string(to_string(config.solver)) +
                      " is not an additive solver");
  }
  const ObjectiveKind kind = objective_for(config);
  check_factor_shapes(A, initial, kind.tri_factor());
  if (!(min_entry(initial) >= 0.0)) {
    throw DomainError("additive solvers need nonnegative initial factors");
  }

  const auto started = std::chrono::steady_clock::now();
  RunResult result;
  result.factors = std::move(initial);

  auto record = [&](TraceEntry entry) {
    if (config.kkt_tolerance) {
      entry.kkt_residual = kkt_report(A, result.factors, kind, *config.kkt_tolerance).combined;
    }
    result.trace.entries.push_back(entry);
  };

  double current = objective(A, result.factors, kind);
  record(TraceEntry{0, current, {}, false, {}});
  for (int k = 1; k <= config.max_iter; ++k) {
    StepOutcome step = config.solver == SolverKind::AuU
                           ? au_u_advance(A, result.factors, config, current)
                           : au_b_advance(A, result.factors, config, current);
    result.factors = std::move(step.factors);
    current = step.objective;
    record(TraceEntry{k, current, step.inner_iters, step.increased, {}});
  }
  result.trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace onmf
