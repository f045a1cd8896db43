#pragma once

#include <array>
#include <optional>
#include <vector>

namespace onmf {

/// Absolute-plus-relative slack used when deciding whether an objective
/// increased: J_new > J_prev + kMonotonicitySlack * (1 + |J_prev|).
inline constexpr double kMonotonicitySlack = 1e-12;

bool objective_increased(double previous, double current);

struct TraceEntry {
  int iter = 0;
  double objective = 0.0;
  /// Extra damping attempts per factor (B, C, S) beyond the first try.
  /// Always zero for multiplicative solvers.
  std::array<int, 3> inner_iters{};
  bool violation = false;
  std::optional<double> kkt_residual;

  int total_inner() const noexcept {
    return inner_iters[0] + inner_iters[1] + inner_iters[2];
  }
};

/// Per-iteration record of a solver run; entry 0 is the objective of the
/// initial factors.
struct IterationTrace {
  std::vector<TraceEntry> entries;
  double wall_seconds = 0.0;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  double initial_objective() const { return entries.front().objective; }
  double final_objective() const { return entries.back().objective; }
  int violation_count() const;
  int total_inner_iters() const;
  std::vector<double> objectives() const;
};

}  // namespace onmf
