#include "onmf/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onmf/errors.hpp"

namespace onmf {

namespace {

void validate_values(const SparseMatrix& values) {
  for (Index col = 0; col < values.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(values, col); it; ++it) {
      const double v = it.value();
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "data matrix entry (" << it.row() << ", " << it.col()
           << ") = " << v << " is not a finite nonnegative value";
        throw DomainError(os.str());
      }
    }
  }
}

std::string shape_of(const Matrix& X) {
  std::ostringstream os;
  os << X.rows() << "x" << X.cols();
  return os.str();
}

}  // namespace

DataMatrix::DataMatrix(SparseMatrix values) : values_(std::move(values)) {
  values_.makeCompressed();
  validate_values(values_);
}

DataMatrix DataMatrix::from_dense(const Matrix& dense) {
  for (Index j = 0; j < dense.cols(); ++j) {
    for (Index i = 0; i < dense.rows(); ++i) {
      const double v = dense(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << "data matrix entry (" << i << ", " << j << ") = " << v
           << " is not a finite nonnegative value";
        throw DomainError(os.str());
      }
    }
  }
  return DataMatrix(SparseMatrix(dense.sparseView()));
}

DataMatrix DataMatrix::from_triplets(Index rows, Index cols,
                                     const std::vector<Triplet>& triplets) {
  SparseMatrix values(rows, cols);
  values.setFromTriplets(triplets.begin(), triplets.end());
  return DataMatrix(std::move(values));
}

void check_factor_shapes(const DataMatrix& A, const FactorSet& F, bool expect_S) {
  const Index K = F.B.cols();
  std::ostringstream os;
  if (F.B.rows() != A.rows()) {
    os << "B is " << shape_of(F.B) << " but A has " << A.rows() << " rows";
  } else if (F.C.cols() != A.cols()) {
    os << "C is " << shape_of(F.C) << " but A has " << A.cols() << " columns";
  } else if (F.C.rows() != K) {
    os << "C has " << F.C.rows() << " rows but B has " << K << " columns";
  } else if (expect_S && !F.S) {
    os << "tri-factorization requires S";
  } else if (!expect_S && F.S) {
    os << "S given for a two-factor objective";
  } else if (F.S && (F.S->rows() != K || F.S->cols() != K)) {
    os << "S is " << shape_of(*F.S) << " but rank is " << K;
  }
  const std::string message = os.str();
  if (!message.empty()) {
    throw ShapeError(message);
  }
}

double min_entry(const FactorSet& F) {
  double m = std::min(F.B.minCoeff(), F.C.minCoeff());
  if (F.S) {
    m = std::min(m, F.S->minCoeff());
  }
  return m;
}

double sum_squares(const Matrix& X) {
  double total = 0.0;
  const double* data = X.data();
  const Index n = X.size();
  for (Index i = 0; i < n; ++i) {
    total += data[i] * data[i];
  }
  return total;
}

}  // namespace onmf
