#include "infoscale/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "infoscale/errors.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluator {
  const std::function<double(double)>& f;
  LineMinimum best{0.0, kInf, false};

  double operator()(double c) {
    double v = f(c);
    if (std::isnan(v)) v = kInf;
    if (v < best.value) {
      best.argmin = c;
      best.value = v;
    }
    return v;
  }
};

}  // namespace

LineMinimum minimize_positive(const std::function<double(double)>& objective,
                              const LineSearchOptions& options) {
  const double cap = std::isfinite(options.upper_limit) ? options.upper_limit * (1.0 - 1e-9)
                                                        : options.max_argument;
  if (!(cap > 0.0)) throw DomainError("line search: empty positive domain");

  Evaluator eval{objective};
  double b = std::min(options.start, 0.5 * cap);
  double fb = eval(b);
  while (!std::isfinite(fb)) {
    b *= 0.5;
    if (b < options.min_argument) {
      throw DomainError("line search: objective is not finite for any tested c > 0");
    }
    fb = eval(b);
  }

  double a = 0.0;
  double d = std::min(2.0 * b, cap);
  double fd = eval(d);
  if (fd < fb) {
    // Still descending: walk up.
    do {
      a = b;
      b = d;
      fb = fd;
      if (b >= cap) return {b, fb, true};
      d = std::min(2.0 * b, cap);
      fd = eval(d);
    } while (fd < fb);
  } else {
    a = 0.5 * b;
    double fa = eval(a);
    while (fa < fb) {
      d = b;
      b = a;
      fb = fa;
      a = 0.5 * b;
      if (a < options.min_argument) return {b, fb, true};
      fa = eval(a);
    }
  }

  // Golden-section refinement on [a, d] around b.
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = d - ratio * (d - a);
  double x2 = a + ratio * (d - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < options.max_golden_iterations; ++it) {
    if (d - a <= options.c_tolerance * std::max(1.0, x1)) break;
    if (f1 <= f2) {
      d = x2;
      x2 = x1;
      f2 = f1;
      x1 = d - ratio * (d - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (d - a);
      f2 = eval(x2);
    }
  }
  return eval.best;
}

}  // namespace infoscale
