#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace onmf {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;
using Triplet = Eigen::Triplet<double>;

/// Nonnegative M x N data matrix, stored column-compressed.
///
/// Every stored value is finite and >= 0; construction rejects anything
/// else with DomainError. Immutable after construction.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(SparseMatrix values);

  static DataMatrix from_dense(const Matrix& dense);
  /// Duplicate (row, col) entries are summed.
  static DataMatrix from_triplets(Index rows, Index cols,
                                  const std::vector<Triplet>& triplets);

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  Index nonzeros() const noexcept { return values_.nonZeros(); }

  const SparseMatrix& sparse() const noexcept { return values_; }
  Matrix to_dense() const { return Matrix(values_); }

 private:
  SparseMatrix values_;
};

/// Factor matrices of A ~ B C (or A ~ B S C for tri-factorization).
struct FactorSet {
  Matrix B;                ///< M x K
  Matrix C;                ///< K x N
  std::optional<Matrix> S; ///< K x K, present only for bi-orthogonal runs

  Index rank() const noexcept { return B.cols(); }
  bool has_S() const noexcept { return S.has_value(); }
};

/// Throws ShapeError unless F factors A (with S iff `expect_S`).
void check_factor_shapes(const DataMatrix& A, const FactorSet& F, bool expect_S);

/// Smallest entry over B, C and S.
double min_entry(const FactorSet& F);

/// Sum of squared entries, accumulated in column-major index order.
double sum_squares(const Matrix& X);

}  // namespace onmf
