#include "infoscale/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infoscale/errors.hpp"

namespace infoscale {

PerronResult perron_root(const Eigen::MatrixXd& a, const PerronOptions& options) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw DimensionError("perron root: matrix must be square and nonempty");
  if ((a.array() < 0.0).any() || !a.allFinite()) {
    throw ParameterError("perron root: entries must be finite and nonnegative");
  }

  double shift = 0.0;
  if ((a.diagonal().array() == 0.0).any()) shift = a.rowwise().sum().maxCoeff();
  Eigen::MatrixXd m = a;
  m.diagonal().array() += shift;

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double best_gap = std::numeric_limits<double>::infinity();
  int stalled = 0;
  PerronResult out;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd y = m * x;
    const Eigen::ArrayXd ratio = y.array() / x.array();
    const double lo = ratio.minCoeff();
    const double hi = ratio.maxCoeff();
    const double estimate = y.sum() / x.sum();
    const double total = y.sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw NumericError("perron root: iteration left the positive cone");
    }
    x = y / total;
    out.iterations = it;
    out.root = estimate - shift;
    const double gap = hi - lo;
    if (gap <= options.relative_tolerance * hi) break;
    // Rounding can keep the bracket above a very tight tolerance forever.
    if (gap < best_gap * (1.0 - 1e-3)) {
      best_gap = gap;
      stalled = 0;
    } else if (++stalled > 200) {
      if (gap <= 1e-10 * hi) break;
      throw NumericError("perron root: Collatz-Wielandt bracket stopped shrinking");
    }
    if (it == options.max_iterations) {
      if (gap <= 1e-8 * hi) break;
      throw NumericError("perron root: no convergence within the iteration limit");
    }
  }
  out.vector = x;
  return out;
}

}  // namespace infoscale
