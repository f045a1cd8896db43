#include "onmf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onmf/errors.hpp"

namespace onmf {

namespace {

void require_nonempty(const ContingencyTable& table, const char* metric) {
  if (table.total() <= 0) {
    throw DegenerateInputError(std::string(metric) + " of an empty contingency table");
  }
}

int majority_class(const ContingencyTable& table, int r) {
  int best = 0;
  for (int s = 1; s < table.classes(); ++s) {
    if (table.count(r, s) > table.count(r, best)) {
      best = s;
    }
  }
  return best;
}

}  // namespace

ClusterAssignment assign_from_C(const Matrix& C) {
  ClusterAssignment out;
  out.clusters = static_cast<int>(C.rows());
  out.labels.resize(static_cast<std::size_t>(C.cols()));
  for (Index n = 0; n < C.cols(); ++n) {
    Index best = 0;
    for (Index r = 1; r < C.rows(); ++r) {
      if (C(r, n) > C(best, n)) {
        best = r;
      }
    }
    out.labels[static_cast<std::size_t>(n)] = static_cast<int>(best);
  }
  return out;
}

ClusterAssignment assign_words_from_B(const Matrix& B) {
  return assign_from_C(B.transpose());
}

ContingencyTable::ContingencyTable(std::vector<std::vector<long>> counts)
    : counts_(std::move(counts)) {
  classes_ = counts_.empty() ? 0 : static_cast<int>(counts_.front().size());
  class_sizes_.assign(static_cast<std::size_t>(classes_), 0);
  cluster_sizes_.assign(counts_.size(), 0);
  for (std::size_t r = 0; r < counts_.size(); ++r) {
    if (static_cast<int>(counts_[r].size()) != classes_) {
      throw ShapeError("contingency table rows have different lengths");
    }
    for (int s = 0; s < classes_; ++s) {
      const long c = counts_[r][s];
      if (c < 0) {
        throw DomainError("contingency counts must be nonnegative");
      }
      cluster_sizes_[r] += c;
      class_sizes_[s] += c;
      total_ += c;
    }
  }
}

ContingencyTable contingency(const ClusterAssignment& pred, std::span<const int> truth) {
  if (pred.labels.size() != truth.size()) {
    std::ostringstream os;
    os << "got " << pred.labels.size() << " cluster labels but " << truth.size()
       << " class labels";
    throw ShapeError(os.str());
  }
  int classes = 0;
  for (int s : truth) {
    if (s < 0) {
      throw DomainError("class labels must be nonnegative");
    }
    classes = std::max(classes, s + 1);
  }
  std::vector<std::vector<long>> counts(static_cast<std::size_t>(pred.clusters),
                                        std::vector<long>(static_cast<std::size_t>(classes), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int r = pred.labels[i];
    if (r < 0 || r >= pred.clusters) {
      throw DomainError("cluster label out of range");
    }
    ++counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(truth[i])];
  }
  return ContingencyTable(std::move(counts));
}

double mutual_information(const ContingencyTable& table) {
  require_nonempty(table, "mutual information");
  const double N = static_cast<double>(table.total());
  double mi = 0.0;
  for (int r = 0; r < table.clusters(); ++r) {
    for (int s = 0; s < table.classes(); ++s) {
      const long c = table.count(r, s);
      if (c == 0) {
        continue;
      }
      const double p_rs = c / N;
      const double p_r = table.cluster_size(r) / N;
      const double p_s = table.class_size(s) / N;
      mi += p_rs * std::log2(p_rs / (p_r * p_s));
    }
  }
  return mi;
}

double entropy(const ContingencyTable& table) {
  require_nonempty(table, "entropy");
  if (table.classes() < 2) {
    throw DegenerateInputError("entropy needs at least two classes");
  }
  double sum = 0.0;
  for (int r = 0; r < table.clusters(); ++r) {
    for (int s = 0; s < table.classes(); ++s) {
      const long c = table.count(r, s);
      if (c == 0) {
        continue;
      }
      sum += c * std::log2(static_cast<double>(table.cluster_size(r)) / c);
    }
  }
  return sum / (table.total() * std::log2(static_cast<double>(table.classes())));
}

double purity(const ContingencyTable& table) {
  require_nonempty(table, "purity");
  long dominant = 0;
  for (int r = 0; r < table.clusters(); ++r) {
    long best = 0;
    for (int s = 0; s < table.classes(); ++s) {
      best = std::max(best, table.count(r, s));
    }
    dominant += best;
  }
  return static_cast<double>(dominant) / table.total();
}

double fmeasure(const ContingencyTable& table) {
  require_nonempty(table, "fmeasure");
  double sum = 0.0;
  for (int r = 0; r < table.clusters(); ++r) {
    if (table.cluster_size(r) == 0) {
      throw DegenerateInputError("fmeasure undefined: cluster " + std::to_string(r) +
                                 " is empty");
    }
    const int s = majority_class(table, r);
    const double hits = static_cast<double>(table.count(r, s));
    const double precision = hits / table.cluster_size(r);
    const double recall = hits / table.class_size(s);
    if (precision + recall > 0.0) {
      sum += 2.0 * precision * recall / (precision + recall);
    }
  }
  return sum / table.clusters();
}

ClusteringScores score(const ContingencyTable& table) {
  return {mutual_information(table), entropy(table), purity(table), fmeasure(table)};
}

}  // namespace onmf
