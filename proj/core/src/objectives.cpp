#include "onmf/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "onmf/errors.hpp"

namespace onmf {

namespace detail {

Matrix a_times_ct(const DataMatrix& A, const Matrix& C) {
  return A.sparse() * C.transpose();
}

Matrix wt_times_a(const DataMatrix& A, const Matrix& W) {
  Matrix at_w = A.sparse().transpose() * W;
  return at_w.transpose();
}

double half_residual_sq(const DataMatrix& A, const Matrix& W, const Matrix& C) {
  constexpr Index kBlock = 256;
  const SparseMatrix& values = A.sparse();
  double total = 0.0;
  for (Index start = 0; start < values.cols(); start += kBlock) {
    const Index width = std::min(kBlock, values.cols() - start);
    Matrix residual = -(W * C.middleCols(start, width));
    for (Index j = 0; j < width; ++j) {
      for (SparseMatrix::InnerIterator it(values, start + j); it; ++it) {
        residual(it.row(), j) += it.value();
      }
    }
    total += sum_squares(residual);
  }
  return 0.5 * total;
}

double identity_gap_sq(const Matrix& X) {
  Matrix gap = X;
  gap.diagonal().array() -= 1.0;
  return sum_squares(gap);
}

}  // namespace detail

namespace {

using detail::a_times_ct;
using detail::half_residual_sq;
using detail::identity_gap_sq;
using detail::wt_times_a;

Matrix gram_minus_identity(const Matrix& X) {
  Matrix G = X;
  G.diagonal().array() -= 1.0;
  return G;
}

// tr(L G), summed in index order.
double trace_product(const Matrix& L, const Matrix& G) {
  double total = 0.0;
  for (Index i = 0; i < L.rows(); ++i) {
    for (Index j = 0; j < L.cols(); ++j) {
      total += L(i, j) * G(j, i);
    }
  }
  return total;
}

void check_shapes(const DataMatrix& A, const FactorSet& F, const ObjectiveKind& kind) {
  check_factor_shapes(A, F, kind.tri_factor());
}

Matrix gradient_standard(const DataMatrix& A, const FactorSet& F, Factor wrt) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  if (wrt == Factor::B) {
    return B * (C * C.transpose()) - a_times_ct(A, C);
  }
  return (B.transpose() * B) * C - wt_times_a(A, B);
}

Matrix gradient_ortho_u(const DataMatrix& A, const FactorSet& F, double alpha,
                        Factor wrt) {
  Matrix g = gradient_standard(A, F, wrt);
  if (wrt == Factor::C && alpha != 0.0) {
    const Matrix& C = F.C;
    g += 2.0 * alpha * ((C * C.transpose()) * C - C);
  }
  return g;
}

Matrix gradient_ortho_b(const DataMatrix& A, const FactorSet& F, double alpha,
                        double beta, Factor wrt) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  const Matrix& S = *F.S;
  switch (wrt) {
    case Factor::B: {
      const Matrix middle = S * (C * C.transpose()) * S.transpose();
      Matrix g = B * middle - a_times_ct(A, C) * S.transpose();
      if (beta != 0.0) {
        g += 2.0 * beta * (B * (B.transpose() * B) - B);
      }
      return g;
    }
    case Factor::C: {
      const Matrix BS = B * S;
      Matrix g = (BS.transpose() * BS) * C - wt_times_a(A, BS);
      if (alpha != 0.0) {
        g += 2.0 * alpha * ((C * C.transpose()) * C - C);
      }
      return g;
    }
    case Factor::S:
      return (B.transpose() * B) * S * (C * C.transpose()) -
             B.transpose() * a_times_ct(A, C);
  }
  return {};
}

Matrix gradient_ding_u(const DataMatrix& A, const FactorSet& F, Factor wrt) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  const Matrix G = gram_minus_identity(C * C.transpose());
  const Matrix fit = gradient_standard(A, F, wrt);
  if (wrt == Factor::B) {
    return fit + 0.5 * a_times_ct(A, C) * G - B * G;
  }
  const Matrix L = ding_lambda_C(A, F);
  return fit + 0.5 * ((L + L.transpose()) * C + G * wt_times_a(A, B));
}

Matrix gradient_ding_b(const DataMatrix& A, const FactorSet& F, Factor wrt) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  const Matrix& S = *F.S;
  const Matrix G_C = gram_minus_identity(C * C.transpose());
  const Matrix G_B = gram_minus_identity(B.transpose() * B);
  const Matrix fit = gradient_ortho_b(A, F, 0.0, 0.0, wrt);
  switch (wrt) {
    case Factor::B: {
      const Matrix ACt = a_times_ct(A, C);
      const Matrix L_B = ding_lambda_B(A, F);
      return fit + 0.5 * ACt * G_C * S.transpose() - B * S * G_C * S.transpose() +
             0.5 * ACt * S.transpose() * G_B + 0.5 * B * (L_B + L_B.transpose());
    }
    case Factor::C: {
      const Matrix BtA = wt_times_a(A, B);
      const Matrix L_C = ding_lambda_C(A, F);
      return fit + 0.5 * G_C * S.transpose() * BtA +
             0.5 * (L_C + L_C.transpose()) * C +
             0.5 * S.transpose() * G_B * BtA - S.transpose() * G_B * S * C;
    }
    case Factor::S: {
      const Matrix BtACt = B.transpose() * a_times_ct(A, C);
      return fit + 0.5 * BtACt * G_C - (B.transpose() * B) * S * G_C +
             0.5 * G_B * BtACt - G_B * S * (C * C.transpose());
    }
  }
  return {};
}

FactorKkt factor_kkt(const Matrix& X, const Matrix& grad, double tol) {
  FactorKkt out;
  out.min_entry = X.minCoeff();
  out.min_active_gradient = std::numeric_limits<double>::infinity();
  out.complementarity = 0.0;
  const double threshold = tol * (1.0 + X.maxCoeff());
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      if (X(i, j) <= threshold) {
        out.min_active_gradient = std::min(out.min_active_gradient, grad(i, j));
      }
      out.complementarity = std::max(out.complementarity, std::abs(grad(i, j) * X(i, j)));
    }
  }
  return out;
}

}  // namespace

ObjectiveKind objective_for(const SolverConfig& config) {
  switch (config.solver) {
    case SolverKind::LS:
      return ObjectiveKind::standard();
    case SolverKind::DingU:
      return ObjectiveKind::ding_u();
    case SolverKind::DingB:
      return ObjectiveKind::ding_b();
    case SolverKind::MuU:
    case SolverKind::AuU:
      return ObjectiveKind::ortho_u(config.alpha);
    case SolverKind::MuB:
    case SolverKind::AuB:
      return ObjectiveKind::ortho_b(config.alpha, config.beta);
  }
  return ObjectiveKind::standard();
}

char factor_name(Factor f) {
  switch (f) {
    case Factor::B:
      return 'B';
    case Factor::C:
      return 'C';
    case Factor::S:
      return 'S';
  }
  return '?';
}

Matrix ding_lambda_C(const DataMatrix& A, const FactorSet& F) {
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  if (!F.S) {
    return B.transpose() * a_times_ct(A, C) - B.transpose() * B;
  }
  const Matrix BS = B * *F.S;
  return BS.transpose() * a_times_ct(A, C) - BS.transpose() * BS;
}

Matrix ding_lambda_B(const DataMatrix& A, const FactorSet& F) {
  if (!F.S) {
    throw ConfigError("L_B is defined only for tri-factorizations");
  }
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  const Matrix& S = *F.S;
  return B.transpose() * a_times_ct(A, C) * S.transpose() -
         S * (C * C.transpose()) * S.transpose();
}

double objective(const DataMatrix& A, const FactorSet& F, const ObjectiveKind& kind) {
  check_shapes(A, F, kind);
  const Matrix& B = F.B;
  const Matrix& C = F.C;
  switch (kind.form) {
    case ObjectiveKind::Form::Standard:
      return half_residual_sq(A, B, C);
    case ObjectiveKind::Form::OrthoU: {
      double j = half_residual_sq(A, B, C);
      if (kind.alpha != 0.0) {
        j += 0.5 * kind.alpha * identity_gap_sq(C * C.transpose());
      }
      return j;
    }
    case ObjectiveKind::Form::OrthoB: {
      double j = half_residual_sq(A, B * *F.S, C);
      if (kind.alpha != 0.0) {
        j += 0.5 * kind.alpha * identity_gap_sq(C * C.transpose());
      }
      if (kind.beta != 0.0) {
        j += 0.5 * kind.beta * identity_gap_sq(B.transpose() * B);
      }
      return j;
    }
    case ObjectiveKind::Form::DingU: {
      const Matrix G = gram_minus_identity(C * C.transpose());
      return half_residual_sq(A, B, C) + 0.5 * trace_product(ding_lambda_C(A, F), G);
    }
    case ObjectiveKind::Form::DingB: {
      const Matrix G_C = gram_minus_identity(C * C.transpose());
      const Matrix G_B = gram_minus_identity(B.transpose() * B);
      return half_residual_sq(A, B * *F.S, C) +
             0.5 * trace_product(ding_lambda_C(A, F), G_C) +
             0.5 * trace_product(ding_lambda_B(A, F), G_B);
    }
  }
  return 0.0;
}

Matrix gradient(const DataMatrix& A, const FactorSet& F, const ObjectiveKind& kind,
                Factor wrt) {
  if (wrt == Factor::S && !kind.tri_factor()) {
    throw ConfigError("gradient with respect to S requested for a two-factor objective");
  }
  check_shapes(A, F, kind);
  switch (kind.form) {
    case ObjectiveKind::Form::Standard:
      return gradient_standard(A, F, wrt);
    case ObjectiveKind::Form::OrthoU:
      return gradient_ortho_u(A, F, kind.alpha, wrt);
    case ObjectiveKind::Form::OrthoB:
      return gradient_ortho_b(A, F, kind.alpha, kind.beta, wrt);
    case ObjectiveKind::Form::DingU:
      return gradient_ding_u(A, F, wrt);
    case ObjectiveKind::Form::DingB:
      return gradient_ding_b(A, F, wrt);
  }
  return {};
}

double FactorKkt::residual() const {
  double r = std::max(0.0, -min_entry);
  if (std::isfinite(min_active_gradient)) {
    r = std::max(r, -min_active_gradient);
  }
  return std::max(r, complementarity);
}

KktReport kkt_report(const DataMatrix& A, const FactorSet& F,
                     const ObjectiveKind& kind, double tol) {
  check_shapes(A, F, kind);
  KktReport report;
  report.B = factor_kkt(F.B, gradient(A, F, kind, Factor::B), tol);
  report.C = factor_kkt(F.C, gradient(A, F, kind, Factor::C), tol);
  double worst = std::max(report.B.residual(), report.C.residual());
  if (kind.tri_factor()) {
    report.S = factor_kkt(*F.S, gradient(A, F, kind, Factor::S), tol);
    worst = std::max(worst, report.S->residual());
  }
  report.combined = worst > tol ? worst : 0.0;
  return report;
}

}  // namespace onmf
