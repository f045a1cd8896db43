#include "onmf/errors.hpp"

#include <sstream>

namespace onmf {

namespace {

std::string format_parse_error(const std::string& source, std::size_t line,
                               const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  return os.str();
}

std::string format_damping_failure(char factor, double last_delta,
                                   double candidate, double reference) {
  std::ostringstream os;
  os.precision(17);
  os << "damping failure on factor " << factor << ": objective " << candidate
     << " still exceeds " << reference << " at delta " << last_delta;
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line,
                       const std::string& what)
    : Error(format_parse_error(source, line, what)), line_(line) {}

DampingFailure::DampingFailure(char factor, double last_delta,
                               double candidate_objective,
                               double reference_objective)
    : Error(format_damping_failure(factor, last_delta, candidate_objective,
                                   reference_objective)),
      factor_(factor),
      last_delta_(last_delta),
      candidate_objective_(candidate_objective),
      reference_objective_(reference_objective) {}

}  // namespace onmf
