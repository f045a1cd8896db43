#pragma once

#include "onmf/matrix.hpp"

namespace onmf {

/// A <- A D^{-1/2} with D = diag(A^T A e), the usual weighting for
/// term-document matrices. Throws DegenerateInputError naming the first
/// column whose weight (A^T A e)_n is zero.
DataMatrix normalize_columns(const DataMatrix& A);

/// Scales every column of B to unit Euclidean length and multiplies the
/// matching row of C by the old length, so B C is preserved.
/// Throws DegenerateInputError on a zero column of B.
FactorSet normalize_B_unit_columns(const FactorSet& F);

}  // namespace onmf
