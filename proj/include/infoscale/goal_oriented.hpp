#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "infoscale/divergences.hpp"

namespace infoscale {

/// Centered cumulant generating function c -> log E_P exp(c (f - E_P f)).
///
/// Either empirical (a distribution and an observable, finite for every c) or
/// analytic (a caller-supplied re-entrant function valid on an open interval
/// around the origin).
class CgfSource {
 public:
  using Function = std::function<double(double)>;

  static CgfSource empirical(DiscreteDistribution p, Observable f);

  /// `lower` < 0 < `upper` bound the open domain; `variance`, when known,
  /// enables the degenerate short-circuit and the linearized half-width.
  static CgfSource analytic(Function centered_cgf, double lower, double upper,
                            std::optional<double> variance = {});
  /// Symmetric domain (-c0, c0); c0 = inf for bounded observables.
  static CgfSource symmetric(Function centered_cgf, double c0 = std::numeric_limits<double>::infinity(),
                             std::optional<double> variance = {}) {
    return analytic(std::move(centered_cgf), -c0, c0, variance);
  }

  /// Throws DomainError when c lies outside the open domain.
  double operator()(double c) const;

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

  /// Exact for empirical sources; given or estimated by central differences otherwise.
  double variance() const;

  /// True when the observable is a.s. constant (the CGF vanishes identically).
  bool degenerate() const;

 private:
  CgfSource() = default;

  Function fn_;
  double lower_ = -std::numeric_limits<double>::infinity();
  double upper_ = std::numeric_limits<double>::infinity();
  std::optional<double> variance_;
  bool degenerate_ = false;
};

/// Empirical centered CGF evaluated with max-exponent shifting.
double centered_cgf(const DiscreteDistribution& p, const Observable& f, double c);

/// Goal-oriented bounds xi_minus <= E_Q f - E_P f <= xi_plus.
///
/// c_star_* are the optimizing c; they are 0 when the infimum is the c -> 0
/// limit (zero relative entropy or a degenerate observable).
struct GoalBound {
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double c_star_plus = 0.0;
  double c_star_minus = 0.0;
  double linearized_half_width = 0.0;

  GoalBound scaled(double factor) const;
};

GoalBound xi_bounds(const CgfSource& source, double relative_entropy_value);

/// The objective c -> (cgf(c) + R) / c minimized for the upper bound.
double xi_plus_objective(const CgfSource& source, double relative_entropy_value, double c);

/// sqrt(Var) * sqrt(2 R).
double linearized_half_width(double var_p_f, double relative_entropy_value);

/// Per-site bounds for the sample mean of g under N-fold product measures.
/// The result does not depend on N: Xi(Q^N || P^N; N f_N) = N Xi(Q || P; g).
GoalBound xi_tensorized(const DiscreteDistribution& p, const DiscreteDistribution& q,
                        const Observable& g, int n);

/// Log-normalizer F with gradient, for P^theta with density exp(t . theta - F(theta)).
struct ExponentialFamily {
  using Vector = std::vector<double>;
  std::function<double(std::span<const double>)> log_normalizer;
  std::function<Vector(std::span<const double>)> gradient;
  std::size_t dimension = 1;
  /// Optional parameter-domain predicate; by default theta is admissible when F is finite.
  std::function<bool(std::span<const double>)> in_domain;

  bool admissible(std::span<const double> theta) const;
};

/// R(P^{theta'} || P^{theta}) = (theta' - theta) . grad F(theta') + F(theta) - F(theta').
double expfam_relative_entropy(const ExponentialFamily& family, std::span<const double> theta_prime,
                               std::span<const double> theta);

/// Bounds for the observable f = t . v between P^{theta'} (Q) and P^{theta} (P).
GoalBound expfam_xi_bounds(const ExponentialFamily& family, std::span<const double> theta_prime,
                           std::span<const double> theta, std::span<const double> direction);

}  // namespace infoscale
