#pragma once

#include <cstddef>
#include <functional>

namespace infoscale {

struct QuadratureOptions {
  double tolerance = 1e-10;  // absolute
  std::size_t max_intervals = 1'000'000;
};

/// Adaptive Simpson rule with Richardson correction. The tolerance is shared
/// among subintervals in proportion to their length. Throws NumericError when
/// the interval budget runs out.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options = {});

}  // namespace infoscale
