#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "onmf/onmf.hpp"

using namespace onmf;

namespace {

DataMatrix scalar_data(double a) {
  return DataMatrix::from_dense(Matrix::Constant(1, 1, a));
}

FactorSet scalars(double b, double c) {
  return {Matrix::Constant(1, 1, b), Matrix::Constant(1, 1, c), std::nullopt};
}

struct Instance {
  DataMatrix A;
  FactorSet F;
};

Instance random_instance(std::mt19937_64& rng, bool tri) {
  std::uniform_int_distribution<int> m(2, 6), n(2, 8), k(1, 3);
  const int M = m(rng), N = n(rng);
  const int K = std::min({k(rng), M, N});
  Instance out{DataMatrix::from_dense(oracle::random_matrix(M, N, rng)), {}};
  out.F.B = oracle::random_matrix(M, K, rng);
  out.F.C = oracle::random_matrix(K, N, rng);
  if (tri) {
    out.F.S = oracle::random_matrix(K, K, rng);
  }
  return out;
}

std::vector<ObjectiveKind> all_kinds(double alpha, double beta) {
  return {ObjectiveKind::standard(), ObjectiveKind::ding_u(), ObjectiveKind::ding_b(),
          ObjectiveKind::ortho_u(alpha), ObjectiveKind::ortho_b(alpha, beta)};
}

}  // namespace

TEST(Objective, IdentityFactorizationIsZero) {
  const DataMatrix A = DataMatrix::from_dense(Matrix::Identity(2, 2));
  const FactorSet F{Matrix::Identity(2, 2), Matrix::Identity(2, 2), std::nullopt};
  EXPECT_EQ(objective(A, F, ObjectiveKind::standard()), 0.0);
  EXPECT_EQ(objective(A, F, ObjectiveKind::ortho_u(5.0)), 0.0);
}

TEST(Objective, AllOnesExample) {
  const DataMatrix A = DataMatrix::from_dense(Matrix::Ones(2, 2));
  FactorSet F{Matrix::Ones(2, 1), Matrix::Constant(1, 2, 0.5), std::nullopt};
  EXPECT_DOUBLE_EQ(objective(A, F, ObjectiveKind::standard()), 0.5);
  EXPECT_DOUBLE_EQ(oracle::objective(A, F, ObjectiveKind::standard()), 0.5);
}

TEST(Objective, MatchesLoopOracleForEveryKind) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    for (const ObjectiveKind& kind : all_kinds(0.7, 2.0)) {
      const Instance in = random_instance(rng, kind.tri_factor());
      const double ours = objective(in.A, in.F, kind);
      const double ref = oracle::objective(in.A, in.F, kind);
      EXPECT_NEAR(ours, ref, 1e-11 * (1.0 + std::abs(ref)));
    }
  }
}

TEST(Objective, OrthoUWithZeroAlphaIsStandard) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const Instance in = random_instance(rng, false);
    EXPECT_EQ(objective(in.A, in.F, ObjectiveKind::ortho_u(0.0)),
              objective(in.A, in.F, ObjectiveKind::standard()));
  }
}

TEST(Objective, PenalizedKindsAreNonnegative) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Instance u = random_instance(rng, false);
    EXPECT_GE(objective(u.A, u.F, ObjectiveKind::standard()), 0.0);
    EXPECT_GE(objective(u.A, u.F, ObjectiveKind::ortho_u(3.0)), 0.0);
    const Instance b = random_instance(rng, true);
    EXPECT_GE(objective(b.A, b.F, ObjectiveKind::ortho_b(3.0, 0.5)), 0.0);
  }
}

TEST(Objective, ShapeMismatchThrows) {
  const DataMatrix A = DataMatrix::from_dense(Matrix::Ones(2, 3));
  FactorSet F{Matrix::Ones(2, 1), Matrix::Ones(1, 2), std::nullopt};
  EXPECT_THROW(objective(A, F, ObjectiveKind::standard()), ShapeError);
  F.C = Matrix::Ones(1, 3);
  EXPECT_THROW(objective(A, F, ObjectiveKind::ortho_b(1, 1)), ShapeError);
}

TEST(Gradient, ScalarStandard) {
  const Matrix g = gradient(scalar_data(2), scalars(1, 1), ObjectiveKind::standard(), Factor::B);
  EXPECT_EQ(g(0, 0), -1.0);
}

TEST(Gradient, ExactFactorizationHasZeroStandardGradient) {
  std::mt19937_64 rng(14);
  FactorSet F{oracle::random_matrix(4, 2, rng), oracle::random_matrix(2, 5, rng), std::nullopt};
  const DataMatrix A = DataMatrix::from_dense(F.B * F.C);
  EXPECT_LE(gradient(A, F, ObjectiveKind::standard(), Factor::B).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LE(gradient(A, F, ObjectiveKind::standard(), Factor::C).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Gradient, OrthoUMatchesFiniteDifferences) {
  std::mt19937_64 rng(15);
  const DataMatrix A = DataMatrix::from_dense(oracle::random_matrix(3, 4, rng));
  FactorSet F{oracle::random_matrix(3, 2, rng), oracle::random_matrix(2, 4, rng), std::nullopt};
  const ObjectiveKind kind = ObjectiveKind::ortho_u(0.7);
  const Matrix fd = oracle::fd_gradient(A, F, kind, Factor::C, 1e-6);
  EXPECT_LE(oracle::relative_error(gradient(A, F, kind, Factor::C), fd), 1e-5);
}

TEST(Gradient, EveryKindAndFactorMatchesFiniteDifferences) {
  std::mt19937_64 rng(16);
  const double weights[] = {0.0, 0.1, 1.0, 10.0};
  for (int t = 0; t < 20; ++t) {
    const double alpha = weights[t % 4];
    const double beta = weights[(t / 4) % 4];
    for (const ObjectiveKind& kind : all_kinds(alpha, beta)) {
      const Instance in = random_instance(rng, kind.tri_factor());
      std::vector<Factor> factors{Factor::B, Factor::C};
      if (kind.tri_factor()) factors.push_back(Factor::S);
      for (Factor f : factors) {
        const Matrix fd = oracle::fd_gradient(in.A, in.F, kind, f, 1e-6);
        EXPECT_LE(oracle::relative_error(gradient(in.A, in.F, kind, f), fd), 1e-5)
            << "form " << static_cast<int>(kind.form) << " factor " << factor_name(f);
      }
    }
  }
}

TEST(Gradient, SOnTwoFactorKindIsConfigError) {
  EXPECT_THROW(gradient(scalar_data(1), scalars(1, 1), ObjectiveKind::standard(), Factor::S),
               ConfigError);
}

TEST(DingLambda, ClosedForms) {
  std::mt19937_64 rng(17);
  const Matrix a = oracle::random_matrix(4, 5, rng);
  const DataMatrix A = DataMatrix::from_dense(a);
  FactorSet F{oracle::random_matrix(4, 2, rng), oracle::random_matrix(2, 5, rng), std::nullopt};
  const Matrix expect_u = F.B.transpose() * a * F.C.transpose() - F.B.transpose() * F.B;
  EXPECT_LE((ding_lambda_C(A, F) - expect_u).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(ding_lambda_B(A, F), ConfigError);
  F.S = oracle::random_matrix(2, 2, rng);
  const Matrix& S = *F.S;
  const Matrix expect_b = F.B.transpose() * a * F.C.transpose() * S.transpose() -
                          S * F.C * F.C.transpose() * S.transpose();
  EXPECT_LE((ding_lambda_B(A, F) - expect_b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kkt, ExactFactorizationIsStationary) {
  std::mt19937_64 rng(18);
  FactorSet F{oracle::random_matrix(4, 2, rng), oracle::random_matrix(2, 5, rng), std::nullopt};
  const DataMatrix A = DataMatrix::from_dense(F.B * F.C);
  const KktReport r = kkt_report(A, F, ObjectiveKind::standard(), 1e-9);
  EXPECT_EQ(r.combined, 0.0);
  EXPECT_FALSE(r.S.has_value());
}

TEST(Kkt, ScalarComplementarity) {
  const KktReport r = kkt_report(scalar_data(2), scalars(1, 1), ObjectiveKind::standard(), 1e-9);
  EXPECT_DOUBLE_EQ(r.B.complementarity, 1.0);
  EXPECT_GT(r.B.min_entry, 0.0);
  EXPECT_TRUE(std::isinf(r.B.min_active_gradient));
  EXPECT_DOUBLE_EQ(r.combined, 1.0);
}

TEST(Kkt, ActiveEntryWithNegativeGradientIsReported) {
  // b = 0 while the gradient pulls it up: not a KKT point.
  const KktReport r = kkt_report(scalar_data(2), scalars(0, 1), ObjectiveKind::standard(), 1e-9);
  EXPECT_DOUBLE_EQ(r.B.min_active_gradient, -2.0);
  EXPECT_DOUBLE_EQ(r.B.residual(), 2.0);
  EXPECT_GE(r.combined, 2.0);
}

TEST(Kkt, LsIterationsReduceResidual) {
  std::mt19937_64 rng(19);
  const DataMatrix A = DataMatrix::from_dense(oracle::random_matrix(8, 10, rng));
  SolverConfig c;
  c.rank = 3;
  c.seed = 4;
  c.max_iter = 200;
  const FactorSet start = init_factors(8, 10, c);
  const RunResult r = solve(A, c, start);
  const double before = kkt_report(A, start, ObjectiveKind::standard(), 1e-9).combined;
  const double after = kkt_report(A, r.factors, ObjectiveKind::standard(), 1e-9).combined;
  EXPECT_LT(after, before);
}
