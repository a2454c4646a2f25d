#pragma once

#include <functional>
#include <limits>

namespace infoscale {

struct LineMinimum {
  double argmin = 0.0;
  double value = 0.0;
  bool at_boundary = false;  // the objective was still decreasing at the search limit
};

struct LineSearchOptions {
  double start = 1.0;
  double c_tolerance = 1e-10;   // absolute, scaled by max(1, c) for large arguments
  double upper_limit = std::numeric_limits<double>::infinity();  // open upper end of the domain
  double max_argument = 1e12;   // cap used when upper_limit is infinite
  double min_argument = 1e-300;
  int max_golden_iterations = 400;
};

/// Minimizes a quasi-convex objective over c in (0, upper_limit).
///
/// The minimum is bracketed by geometric expansion from `start` (factors 2 and
/// 1/2) until the objective rises on both sides, then refined by golden-section
/// search. Non-finite values at the start are retried at smaller c. Throws
/// DomainError when no finite value is found.
LineMinimum minimize_positive(const std::function<double(double)>& objective,
                              const LineSearchOptions& options = {});

}  // namespace infoscale
