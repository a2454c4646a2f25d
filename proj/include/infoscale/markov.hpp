#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "infoscale/divergences.hpp"
#include "infoscale/goal_oriented.hpp"

namespace infoscale {

/// Row-stochastic irreducible matrix on states {0, ..., n-1}.
class TransitionMatrix {
 public:
  static constexpr double kRowTolerance = 1e-12;

  /// Throws ParameterError for bad rows and StructureError for reducible chains.
  explicit TransitionMatrix(std::vector<std::vector<double>> rows, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  double operator()(std::size_t x, std::size_t y) const {
    return matrix_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  DiscreteDistribution row(std::size_t x) const;

  /// gcd of cycle lengths through the transition graph; 1 means aperiodic.
  int period() const;

 private:
  Eigen::MatrixXd matrix_;
  std::vector<std::string> labels_;
};

/// p(x, y) > 0 exactly when q(x, y) > 0.
bool mutually_continuous(const TransitionMatrix& q, const TransitionMatrix& p);

DiscreteDistribution stationary_distribution(const TransitionMatrix& p);

/// r(q||p) = sum_x mu_q(x) R(q(x, .) || p(x, .)).
double relative_entropy_rate(const TransitionMatrix& q, const TransitionMatrix& p);

/// (1 / (alpha - 1)) log rho(alpha) with rho the Perron root of q^alpha p^(1 - alpha).
double renyi_rate(const TransitionMatrix& q, const TransitionMatrix& p, double alpha);

/// log rho(2), the growth rate of log(1 + chi^2) along paths.
double chi2_rate(const TransitionMatrix& q, const TransitionMatrix& p);

/// Limit of the path Hellinger distance: sqrt(2) when p != q, else 0.
double hellinger_limit(const TransitionMatrix& q, const TransitionMatrix& p);

/// log of the Perron root of p(x, y) exp(c (g(y) - E_mu g)).
double lambda_pg(const TransitionMatrix& p, const Observable& g, double c);

/// Var_mu(g) + 2 sum_{k >= 1} Cov_mu(g(X_0), g(X_k)) via the fundamental matrix.
/// Throws StructureError for periodic chains.
double integrated_autocorrelation(const TransitionMatrix& p, const Observable& g);

struct RateBound {
  double rer = 0.0;
  double xi_plus_rate = 0.0;
  double xi_minus_rate = 0.0;
  double c_star_plus = 0.0;
  double c_star_minus = 0.0;
  double iact = 0.0;  // NaN for periodic chains
  double linearized_half_width = 0.0;
  std::function<double(double)> lambda_curve;
};

/// Bounds on E_{mu_q} g - E_{mu_p} g from the relative entropy rate.
RateBound xi_rate_bounds(const TransitionMatrix& q, const TransitionMatrix& p, const Observable& g);

struct CheapRateBounds {
  double rer = 0.0;
  double sup_row_re = 0.0;
  double sup_log_ratio = 0.0;
  GoalBound with_rer;
  GoalBound with_sup_row_re;
  GoalBound with_sup_log_ratio;
  double linearized_rer = 0.0;
  double linearized_sup_row_re = 0.0;
  double linearized_sup_log_ratio = 0.0;
};

/// Rate bounds with r replaced by the row-wise supremum of relative entropies
/// and by the supremum of |log q/p|.
CheapRateBounds cheap_rate_bounds(const TransitionMatrix& q, const TransitionMatrix& p,
                                  const Observable& g);

/// Exact path-space laws of (X_0, ..., X_N) under both chains.
struct PathMeasures {
  DiscreteDistribution q;
  DiscreteDistribution p;
  Observable additive;  // sum_{i=1..N} g(X_i)
  int steps = 0;
};

/// Enumerates all |S|^(N+1) paths; rejects more than 2e6 of them.
PathMeasures enumerate_paths(const TransitionMatrix& q, const TransitionMatrix& p,
                             const DiscreteDistribution& initial_q,
                             const DiscreteDistribution& initial_p, const Observable& g, int steps);

}  // namespace infoscale
