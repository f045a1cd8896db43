#include "onmf/trace.hpp"

#include <cmath>

namespace onmf {

bool objective_increased(double previous, double current) {
  return current > previous + kMonotonicitySlack * (1.0 + std::abs(previous));
}

int IterationTrace::violation_count() const {
  int count = 0;
  for (const auto& e : entries) {
    count += e.violation ? 1 : 0;
  }
  return count;
}

int IterationTrace::total_inner_iters() const {
  int total = 0;
  for (const auto& e : entries) {
    total += e.total_inner();
  }
  return total;
}

std::vector<double> IterationTrace::objectives() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    out.push_back(e.objective);
  }
  return out;
}

}  // namespace onmf
