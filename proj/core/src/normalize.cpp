#include "onmf/normalize.hpp"

#include <cmath>
#include <string>

#include "onmf/errors.hpp"

namespace onmf {

DataMatrix normalize_columns(const DataMatrix& A) {
  const SparseMatrix& values = A.sparse();

  // (A^T A e)_n = a_n . (A e), with A e the vector of row sums.
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(values.rows());
  for (Index col = 0; col < values.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(values, col); it; ++it) {
      row_sums[it.row()] += it.value();
    }
  }

  SparseMatrix scaled = values;
  for (Index col = 0; col < scaled.outerSize(); ++col) {
    double weight = 0.0;
    for (SparseMatrix::InnerIterator it(scaled, col); it; ++it) {
      weight += it.value() * row_sums[it.row()];
    }
    if (!(weight > 0.0)) {
      throw DegenerateInputError("column " + std::to_string(col) +
                                 " has zero weight (A^T A e)_n; cannot normalize");
    }
    const double factor = 1.0 / std::sqrt(weight);
    for (SparseMatrix::InnerIterator it(scaled, col); it; ++it) {
      it.valueRef() *= factor;
    }
  }
  return DataMatrix(std::move(scaled));
}

FactorSet normalize_B_unit_columns(const FactorSet& F) {
  FactorSet out = F;
  for (Index r = 0; r < out.B.cols(); ++r) {
    const double norm = std::sqrt(sum_squares(out.B.col(r)));
    if (!(norm > 0.0)) {
      throw DegenerateInputError("column " + std::to_string(r) +
                                 " of B is zero; cannot normalize");
    }
    out.B.col(r) /= norm;
    out.C.row(r) *= norm;
  }
  return out;
}

}  // namespace onmf
