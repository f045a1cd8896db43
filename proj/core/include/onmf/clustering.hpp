#pragma once

#include <span>
#include <vector>

#include "onmf/matrix.hpp"

namespace onmf {

/// Hard cluster labels in [0, clusters).
struct ClusterAssignment {
  std::vector<int> labels;
  int clusters = 0;
};

/// Document n goes to argmax_r C(r, n); ties resolve to the smallest r.
ClusterAssignment assign_from_C(const Matrix& C);

/// Word m goes to argmax_k B(m, k); ties resolve to the smallest k.
ClusterAssignment assign_words_from_B(const Matrix& B);

/// Cluster-by-class counts c_rs with their marginals.
class ContingencyTable {
 public:
  /// counts[r][s]; all rows must have equal length. Throws ShapeError on
  /// ragged input and DomainError on negative counts.
  explicit ContingencyTable(std::vector<std::vector<long>> counts);

  int clusters() const noexcept { return static_cast<int>(counts_.size()); }
  int classes() const noexcept { return classes_; }
  long count(int r, int s) const { return counts_[r][s]; }
  long cluster_size(int r) const { return cluster_sizes_[r]; }
  long class_size(int s) const { return class_sizes_[s]; }
  long total() const noexcept { return total_; }

 private:
  std::vector<std::vector<long>> counts_;
  std::vector<long> cluster_sizes_;
  std::vector<long> class_sizes_;
  int classes_ = 0;
  long total_ = 0;
};

/// Cross-tabulates predicted clusters against class indices. The table has
/// pred.clusters rows and max(truth) + 1 columns. Throws ShapeError when the
/// lengths differ and DomainError on out-of-range labels.
ContingencyTable contingency(const ClusterAssignment& pred, std::span<const int> truth);

/// sum p(r,s) log2(p(r,s) / (p(r) p(s))). Throws DegenerateInputError when
/// the table is empty.
double mutual_information(const ContingencyTable& table);

/// -(1 / (N log2 S)) sum c_rs log2(c_rs / c_r), in [0, 1]. Throws
/// DegenerateInputError when N = 0 or fewer than two classes.
double entropy(const ContingencyTable& table);

/// (1/N) sum_r max_s c_rs.
double purity(const ContingencyTable& table);

/// Mean over clusters of the F1 score of each cluster against its majority
/// class (ties to the smallest class index). Throws DegenerateInputError on
/// an empty table or an empty cluster.
double fmeasure(const ContingencyTable& table);

struct ClusteringScores {
  double mutual_information = 0.0;
  double entropy = 0.0;
  double purity = 0.0;
  double fmeasure = 0.0;
};

/// All four metrics; errors propagate from the individual functions.
ClusteringScores score(const ContingencyTable& table);

}  // namespace onmf
