#include "infoscale/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "infoscale/errors.hpp"

namespace infoscale {

namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& options) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    return -adaptive_simpson(f, b, a, options);
  }
  const double length = b - a;
  const double eps = std::numeric_limits<double>::epsilon();

  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NumericError("quadrature: integrand is not finite at x = " + std::to_string(x));
    return v;
  };

  // Seed with a few panels so that symmetric integrands are not missed.
  constexpr int kSeeds = 8;
  std::vector<Panel> stack;
  std::vector<double> xs(2 * kSeeds + 1), fs(2 * kSeeds + 1);
  for (int i = 0; i <= 2 * kSeeds; ++i) {
    xs[i] = a + length * i / (2.0 * kSeeds);
    fs[i] = eval(xs[i]);
  }
  for (int i = 0; i < kSeeds; ++i) {
    const int j = 2 * i;
    stack.push_back({xs[j], xs[j + 1], xs[j + 2], fs[j], fs[j + 1], fs[j + 2],
                     simpson(xs[j], xs[j + 2], fs[j], fs[j + 1], fs[j + 2])});
  }

  double total = 0.0;
  double compensation = 0.0;
  std::size_t intervals = stack.size();
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double lm = 0.5 * (p.a + p.m);
    const double rm = 0.5 * (p.m + p.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
    const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
    const double diff = left + right - p.whole;
    const double local_tol = options.tolerance * (p.b - p.a) / length;
    const bool resolved = std::abs(diff) <= 15.0 * local_tol ||
                          std::abs(diff) <= 64.0 * eps * (std::abs(left) + std::abs(right)) ||
                          (p.b - p.a) <= 64.0 * eps * std::max(std::abs(p.a), std::abs(p.b));
    if (resolved) {
      // Kahan summation keeps the accumulated error below the tolerance.
      const double y = left + right + diff / 15.0 - compensation;
      const double t = total + y;
      compensation = (t - total) - y;
      total = t;
      continue;
    }
    if (++intervals > options.max_intervals) {
      throw NumericError("quadrature: interval budget exhausted before reaching the tolerance");
    }
    stack.push_back({p.a, lm, p.m, p.fa, flm, p.fm, left});
    stack.push_back({p.m, rm, p.b, p.fm, frm, p.fb, right});
  }
  return total;
}

}  // namespace infoscale
