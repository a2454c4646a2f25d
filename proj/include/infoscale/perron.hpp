#pragma once

#include <Eigen/Dense>

namespace infoscale {

struct PerronOptions {
  double relative_tolerance = 1e-13;
  int max_iterations = 100000;
};

struct PerronResult {
  double root = 0.0;
  Eigen::VectorXd vector;  // positive right eigenvector, unit 1-norm
  int iterations = 0;
};

/// Dominant eigenvalue of a nonnegative irreducible matrix by power iteration.
///
/// Convergence is judged by the Collatz-Wielandt bracket
/// min_i (Ax)_i / x_i <= rho <= max_i (Ax)_i / x_i. A diagonal shift is added
/// when some diagonal entry vanishes, which removes periodicity without
/// moving the eigenvectors.
PerronResult perron_root(const Eigen::MatrixXd& a, const PerronOptions& options = {});

}  // namespace infoscale
