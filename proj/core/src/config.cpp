#include "onmf/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "onmf/errors.hpp"

namespace onmf {

namespace {

constexpr std::array<std::pair<SolverKind, std::string_view>, 7> kSolverNames{{
    {SolverKind::LS, "ls"},
    {SolverKind::DingU, "d-u"},
    {SolverKind::DingB, "d-b"},
    {SolverKind::MuU, "mu-u"},
    {SolverKind::AuU, "au-u"},
    {SolverKind::MuB, "mu-b"},
    {SolverKind::AuB, "au-b"},
}};

}  // namespace

std::string_view to_string(SolverKind kind) {
  for (const auto& [k, name] : kSolverNames) {
    if (k == kind) {
      return name;
    }
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view name) {
  for (const auto& [k, n] : kSolverNames) {
    if (n == name) {
      return k;
    }
  }
  throw ConfigError("unknown solver '" + std::string(name) +
                    "' (expected ls, d-u, d-b, mu-u, au-u, mu-b or au-b)");
}

bool is_bi_orthogonal(SolverKind kind) {
  return kind == SolverKind::DingB || kind == SolverKind::MuB ||
         kind == SolverKind::AuB;
}

bool is_additive(SolverKind kind) {
  return kind == SolverKind::AuU || kind == SolverKind::AuB;
}

bool uses_alpha(SolverKind kind) {
  return kind == SolverKind::MuU || kind == SolverKind::AuU ||
         kind == SolverKind::MuB || kind == SolverKind::AuB;
}

bool uses_beta(SolverKind kind) {
  return kind == SolverKind::MuB || kind == SolverKind::AuB;
}

void SolverConfig::validate(Index rows, Index cols) const {
  std::ostringstream os;
  if (rows < 1 || cols < 1) {
    os << "data matrix must be nonempty, got " << rows << "x" << cols;
  } else if (rank < 1 || rank > std::min(rows, cols)) {
    os << "rank " << rank << " must lie in [1, " << std::min(rows, cols) << "]";
  } else if (!(std::isfinite(delta) && delta > 0.0)) {
    os << "delta must be positive, got " << delta;
  } else if (!(std::isfinite(sigma) && sigma > 0.0)) {
    os << "sigma must be positive, got " << sigma;
  } else if (!(std::isfinite(step) && step > 1.0)) {
    os << "step must exceed 1, got " << step;
  } else if (!(std::isfinite(alpha) && alpha >= 0.0)) {
    os << "alpha must be nonnegative, got " << alpha;
  } else if (!(std::isfinite(beta) && beta >= 0.0)) {
    os << "beta must be nonnegative, got " << beta;
  } else if (max_iter < 0) {
    os << "max_iter must be nonnegative, got " << max_iter;
  } else if (max_inner_iter < 1) {
    os << "max_inner_iter must be at least 1, got " << max_inner_iter;
  } else if (normalize_B && solver != SolverKind::LS) {
    os << "column normalization of B changes the objective of "
       << to_string(solver) << "; it is only available for ls";
  } else if (kkt_tolerance && !(*kkt_tolerance >= 0.0)) {
    os << "kkt tolerance must be nonnegative";
  }
  const std::string message = os.str();
  if (!message.empty()) {
    throw ConfigError(message);
  }
}

}  // namespace onmf
