#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "onmf/matrix.hpp"

namespace onmf {

/// The seven factorization algorithms.
enum class SolverKind {
  LS,     ///< Lee-Seung multiplicative updates for the standard objective
  DingU,  ///< Ding uni-orthogonal multiplicative updates
  DingB,  ///< Ding bi-orthogonal multiplicative updates
  MuU,    ///< multiplicative updates, penalized uni-orthogonal objective
  AuU,    ///< damped additive updates, penalized uni-orthogonal objective
  MuB,    ///< multiplicative updates, penalized bi-orthogonal objective
  AuB,    ///< damped additive updates, penalized bi-orthogonal objective
};

/// CLI spelling: "ls", "d-u", "d-b", "mu-u", "au-u", "mu-b", "au-b".
std::string_view to_string(SolverKind kind);
/// Inverse of to_string; throws ConfigError on an unknown name.
SolverKind parse_solver_kind(std::string_view name);

bool is_bi_orthogonal(SolverKind kind);
bool is_additive(SolverKind kind);
bool uses_alpha(SolverKind kind);
bool uses_beta(SolverKind kind);

struct SolverConfig {
  int rank = 1;
  double alpha = 0.1;  ///< orthogonality weight on the rows of C
  double beta = 1.0;   ///< orthogonality weight on the columns of B
  double delta = 1e-8; ///< denominator stabilizer, also the initial damping
  double sigma = 1e-8; ///< zero-locking escape floor
  double step = 10.0;  ///< damping growth factor
  int max_iter = 20;
  int max_inner_iter = 60;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::LS;
  bool normalize_B = false;  ///< LS only
  /// When set, each trace entry also carries the combined KKT residual
  /// computed with this tolerance.
  std::optional<double> kkt_tolerance;

  /// Throws ConfigError when the configuration cannot drive a run on an
  /// M x N matrix.
  void validate(Index rows, Index cols) const;
};

}  // namespace onmf
