#pragma once

#include <optional>

#include "onmf/config.hpp"
#include "onmf/matrix.hpp"

namespace onmf {

/// Which objective a factor set is measured against.
///
///   Standard  1/2 |A - BC|^2
///   OrthoU    1/2 |A - BC|^2 + alpha/2 |CC^T - I|^2
///   OrthoB    1/2 |A - BSC|^2 + alpha/2 |CC^T - I|^2 + beta/2 |B^T B - I|^2
///   DingU     1/2 |A - BC|^2 + 1/2 tr(L_C (CC^T - I))
///   DingB     1/2 |A - BSC|^2 + 1/2 tr(L_C (CC^T - I)) + 1/2 tr(L_B (B^T B - I))
///
/// The Ding multipliers L_B, L_C are the closed forms evaluated at the
/// current factors (see ding_lambda_B / ding_lambda_C), so the Ding
/// objectives are functions of the factors alone and may be negative.
struct ObjectiveKind {
  enum class Form { Standard, DingU, DingB, OrthoU, OrthoB };

  Form form = Form::Standard;
  double alpha = 0.0;
  double beta = 0.0;

  static ObjectiveKind standard() { return {Form::Standard, 0.0, 0.0}; }
  static ObjectiveKind ding_u() { return {Form::DingU, 0.0, 0.0}; }
  static ObjectiveKind ding_b() { return {Form::DingB, 0.0, 0.0}; }
  static ObjectiveKind ortho_u(double alpha) { return {Form::OrthoU, alpha, 0.0}; }
  static ObjectiveKind ortho_b(double alpha, double beta) {
    return {Form::OrthoB, alpha, beta};
  }

  bool tri_factor() const noexcept {
    return form == Form::DingB || form == Form::OrthoB;
  }
};

/// The objective each solver monotonically tracks (or, for MU/Ding, is
/// measured by).
ObjectiveKind objective_for(const SolverConfig& config);

enum class Factor { B, C, S };

char factor_name(Factor f);

/// Throws ShapeError on mismatched dimensions or S presence.
double objective(const DataMatrix& A, const FactorSet& F, const ObjectiveKind& kind);

/// Exact gradient of `objective` with respect to one factor. For the Ding
/// kinds the derivative includes the dependence of L_B, L_C on the factors.
/// Throws ConfigError when S is requested for a two-factor kind.
Matrix gradient(const DataMatrix& A, const FactorSet& F, const ObjectiveKind& kind,
                Factor wrt);

/// L_C = B^T A C^T - B^T B (two factors) or S^T B^T A C^T - S^T B^T B S.
Matrix ding_lambda_C(const DataMatrix& A, const FactorSet& F);
/// L_B = B^T A C^T S^T - S C C^T S^T. Requires S.
Matrix ding_lambda_B(const DataMatrix& A, const FactorSet& F);

struct FactorKkt {
  double min_entry = 0.0;
  /// Smallest gradient entry over the active set (entries treated as zero);
  /// +inf when the active set is empty.
  double min_active_gradient = 0.0;
  /// max |grad (.) X| over all entries.
  double complementarity = 0.0;

  /// Largest violated-direction magnitude.
  double residual() const;
};

struct KktReport {
  FactorKkt B;
  FactorKkt C;
  std::optional<FactorKkt> S;
  /// max of per-factor residuals, reported as 0 when it does not exceed tol.
  double combined = 0.0;
};

/// An entry x of factor X is active when x <= tol * (1 + max(X)).
KktReport kkt_report(const DataMatrix& A, const FactorSet& F,
                     const ObjectiveKind& kind, double tol);

/// Internal products shared with the solvers.
namespace detail {

/// A C^T (M x K).
Matrix a_times_ct(const DataMatrix& A, const Matrix& C);
/// W^T A (K x N).
Matrix wt_times_a(const DataMatrix& A, const Matrix& W);
/// 1/2 |A - W C|^2, accumulated column by column in index order.
double half_residual_sq(const DataMatrix& A, const Matrix& W, const Matrix& C);
/// |X - I|^2 for square X.
double identity_gap_sq(const Matrix& X);

}  // namespace detail

}  // namespace onmf
