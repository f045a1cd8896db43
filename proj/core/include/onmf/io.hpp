#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onmf/clustering.hpp"
#include "onmf/matrix.hpp"
#include "onmf/trace.hpp"

namespace onmf {

/// Class labels densified to 0..names.size()-1 in first-appearance order.
struct LabelSet {
  std::vector<int> indices;
  std::vector<std::string> names;
};

struct LabeledDataset {
  DataMatrix matrix;
  std::optional<LabelSet> doc_labels;   ///< one per column
  std::optional<LabelSet> word_labels;  ///< one per row

  /// Throws ShapeError when a label vector does not match its dimension.
  void validate() const;
};

/// Reads a MatrixMarket file (coordinate or array; real, integer or pattern;
/// general or symmetric). Coordinate duplicates are summed. Throws IoError
/// when the file cannot be opened, ParseError on malformed text and
/// DomainError on negative or non-finite values.
DataMatrix read_matrix_market(const std::filesystem::path& path);
DataMatrix read_matrix_market(std::istream& in, const std::string& source);

/// Dense reader for factor files; accepts any finite real values.
Matrix read_dense_matrix(const std::filesystem::path& path);
Matrix read_dense_matrix(std::istream& in, const std::string& source);

/// MatrixMarket array format, column-major, 17 significant digits.
void write_dense_matrix(const Matrix& X, const std::filesystem::path& path);
void write_dense_matrix(const Matrix& X, std::ostream& out);

/// One token per line. A trailing newline or trailing blank lines are
/// accepted; a blank line followed by more labels is a ParseError. Throws
/// DegenerateInputError when the file holds no labels.
LabelSet read_labels(const std::filesystem::path& path);
LabelSet read_labels(std::istream& in, const std::string& source);

/// Header "iter,objective,inner_iters,violation"; objectives use 17
/// significant digits. Throws DegenerateInputError on an empty trace.
void write_trace_csv(const IterationTrace& trace, const std::filesystem::path& path);
void write_trace_csv(const IterationTrace& trace, std::ostream& out);

/// One parsed row of a trace CSV; inner_iters is the per-iteration total.
struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  int inner_iters = 0;
  bool violation = false;
};

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);
std::vector<TraceRow> read_trace_csv(std::istream& in, const std::string& source);

/// Writes dir/B.mtx, dir/C.mtx and, when present, dir/S.mtx. Creates dir.
void write_factors(const FactorSet& F, const std::filesystem::path& dir);

/// Reads the files written by write_factors; S is loaded if S.mtx exists.
FactorSet read_factors(const std::filesystem::path& dir);

/// Two-line CSV "mi,entropy,purity,fmeasure" followed by the values.
void write_scores_csv(const ClusteringScores& scores, const std::filesystem::path& path);

}  // namespace onmf
