#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace infoscale {

enum class Normalize { no, yes };

/// Probability vector on a finite support {0, ..., n-1}.
///
/// Weights must be nonnegative and sum to one within 1e-12 unless the caller
/// asks for renormalization explicitly.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit DiscreteDistribution(std::vector<double> weights, Normalize normalize = Normalize::no);

  static DiscreteDistribution uniform(std::size_t n);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<double> weights_;
};

/// Real-valued function on a finite support, aligned index-by-index with a distribution.
class Observable {
 public:
  explicit Observable(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double sup_norm() const;

 private:
  std::vector<double> values_;
};

/// True when Q_i > 0 implies P_i > 0 for every index.
bool absolutely_continuous(const DiscreteDistribution& q, const DiscreteDistribution& p);
bool mutually_continuous(const DiscreteDistribution& q, const DiscreteDistribution& p);

double expectation(const DiscreteDistribution& p, const Observable& f);
double variance(const DiscreteDistribution& p, const Observable& f);

/// Maximum minus minimum of f over the support of p; zero iff f is p-a.s. constant.
double essential_range(const DiscreteDistribution& p, const Observable& f);

enum class Extended { no, yes };

double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// R(Q||P) = sum Q log(Q/P). Throws DivergenceUndefinedError when Q is not
/// absolutely continuous w.r.t. P, unless `mode` is Extended::yes (then +inf).
double relative_entropy(const DiscreteDistribution& q, const DiscreteDistribution& p,
                        Extended mode = Extended::no);

/// Renyi divergence D_alpha(Q||P), alpha > 0, alpha != 1. Within 1e-6 of one
/// the relative entropy is returned.
double renyi_divergence(const DiscreteDistribution& q, const DiscreteDistribution& p, double alpha);

double chi_squared(const DiscreteDistribution& q, const DiscreteDistribution& p,
                   Extended mode = Extended::no);

double hellinger(const DiscreteDistribution& q, const DiscreteDistribution& p);

struct DivergenceReport {
  std::optional<double> tv;  // not available in closed form for product measures
  double hellinger = 0.0;
  double kl = 0.0;
  double renyi = 0.0;
  double renyi_alpha = 0.5;
  double chi2 = 0.0;
  double log1p_chi2 = 0.0;  // log(1 + chi2), finite even when chi2 overflows

  /// H^2 <= D_{1/2} <= R <= D_2 <= chi^2, with D_{1/2} and D_2 recovered from
  /// the Hellinger and chi-squared entries.
  bool chain_holds(double tol = 1e-10) const;
};

DivergenceReport divergence_report(const DiscreteDistribution& q, const DiscreteDistribution& p,
                                   double alpha = 0.5);

/// Half-widths B with |E_Q f - E_P f| <= B for each classical inequality.
struct ClassicalBounds {
  double ckp = 0.0;
  double pinsker = 0.0;  // generalized Pinsker with Renyi order `alpha`
  double scheffe = 0.0;
  double chapman_robbins = 0.0;
  double le_cam = 0.0;
  double hellinger_improved = 0.0;
  double alpha = 0.5;
};

/// `alpha` selects the Renyi order of the generalized Pinsker bound, 0 < alpha <= 1.
ClassicalBounds classical_qoi_bounds(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                     const Observable& f, std::optional<double> alpha = {});

/// Unshifted Hellinger bound sqrt(2) H sqrt(E_P f^2 + E_Q f^2).
double hellinger_unshifted_bound(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                 const Observable& f);

/// Divergences between the N-fold products Q^N and P^N from single-site values.
DivergenceReport iid_scaled_divergences(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                        int n, double alpha = 0.5);

}  // namespace infoscale
