#include "infoscale/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "infoscale/errors.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": support sizes differ (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

double log_sum_exp(std::span<const double> xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights, Normalize normalize)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ParameterError("distribution: empty support");
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ParameterError("distribution: weights must be finite and nonnegative");
    }
    total += w;
  }
  if (normalize == Normalize::yes) {
    if (total <= 0.0) throw ParameterError("distribution: weights sum to zero");
    for (double& w : weights_) w /= total;
  } else if (std::abs(total - 1.0) > kSumTolerance) {
    throw ParameterError("distribution: weights sum to " + std::to_string(total) +
                         ", expected 1 within 1e-12");
  }
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t n) {
  return DiscreteDistribution(std::vector<double>(n, 1.0), Normalize::yes);
}

Observable::Observable(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("observable: values must be finite");
  }
}

double Observable::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool absolutely_continuous(const DiscreteDistribution& q, const DiscreteDistribution& p) {
  require_same_size(q.size(), p.size(), "absolute continuity");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0 && p[i] == 0.0) return false;
  }
  return true;
}

bool mutually_continuous(const DiscreteDistribution& q, const DiscreteDistribution& p) {
  return absolutely_continuous(q, p) && absolutely_continuous(p, q);
}

double expectation(const DiscreteDistribution& p, const Observable& f) {
  require_same_size(p.size(), f.size(), "expectation");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * f[i];
  return s;
}

double variance(const DiscreteDistribution& p, const Observable& f) {
  const double mean = expectation(p, f);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = f[i] - mean;
    s += p[i] * d * d;
  }
  return s;
}

double essential_range(const DiscreteDistribution& p, const Observable& f) {
  require_same_size(p.size(), f.size(), "essential range");
  double lo = kInf;
  double hi = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      lo = std::min(lo, f[i]);
      hi = std::max(hi, f[i]);
    }
  }
  return hi - lo;
}

double total_variation(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_size(p.size(), q.size(), "total variation");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(q[i] - p[i]);
  return 0.5 * s;
}

double relative_entropy(const DiscreteDistribution& q, const DiscreteDistribution& p, Extended mode) {
  require_same_size(q.size(), p.size(), "relative entropy");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == 0.0) continue;
    if (p[i] == 0.0) {
      if (mode == Extended::yes) return kInf;
      throw DivergenceUndefinedError("relative entropy: Q is not absolutely continuous w.r.t. P");
    }
    s += q[i] * std::log(q[i] / p[i]);
  }
  // Rounding can leave a tiny negative sum when Q == P.
  return std::max(0.0, s);
}

double renyi_divergence(const DiscreteDistribution& q, const DiscreteDistribution& p, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw ParameterError("renyi divergence: order must be positive and different from 1");
  }
  require_same_size(q.size(), p.size(), "renyi divergence");
  if (std::abs(alpha - 1.0) < 1e-6) return relative_entropy(q, p);
  if (alpha > 1.0 && !absolutely_continuous(q, p)) {
    throw DivergenceUndefinedError("renyi divergence: Q is not absolutely continuous w.r.t. P");
  }
  std::vector<double> terms;
  terms.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0 && p[i] > 0.0) {
      terms.push_back(alpha * std::log(q[i]) + (1.0 - alpha) * std::log(p[i]));
    }
  }
  if (terms.empty()) {
    throw DivergenceUndefinedError("renyi divergence: Q and P have disjoint supports");
  }
  return std::max(0.0, log_sum_exp(terms) / (alpha - 1.0));
}

double chi_squared(const DiscreteDistribution& q, const DiscreteDistribution& p, Extended mode) {
  require_same_size(q.size(), p.size(), "chi-squared");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] == 0.0) continue;
      if (mode == Extended::yes) return kInf;
      throw DivergenceUndefinedError("chi-squared: Q is not absolutely continuous w.r.t. P");
    }
    const double d = q[i] - p[i];
    s += d * d / p[i];
  }
  return s;
}

double hellinger(const DiscreteDistribution& q, const DiscreteDistribution& p) {
  require_same_size(q.size(), p.size(), "hellinger");
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double d = std::sqrt(q[i]) - std::sqrt(p[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

bool DivergenceReport::chain_holds(double tol) const {
  const double h2 = hellinger * hellinger;
  const double d_half = -2.0 * std::log1p(-0.5 * h2);
  const double d_two = log1p_chi2;
  return h2 <= d_half + tol && d_half <= kl + tol && kl <= d_two + tol && d_two <= chi2 + tol;
}

DivergenceReport divergence_report(const DiscreteDistribution& q, const DiscreteDistribution& p,
                                   double alpha) {
  DivergenceReport r;
  r.tv = total_variation(p, q);
  r.hellinger = hellinger(q, p);
  r.kl = relative_entropy(q, p);
  r.renyi = renyi_divergence(q, p, alpha);
  r.renyi_alpha = alpha;
  r.chi2 = chi_squared(q, p);
  r.log1p_chi2 = std::log1p(r.chi2);
  return r;
}

ClassicalBounds classical_qoi_bounds(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                     const Observable& f, std::optional<double> alpha) {
  require_same_size(p.size(), q.size(), "classical bounds");
  require_same_size(p.size(), f.size(), "classical bounds");
  const double a = alpha.value_or(0.5);
  if (!(a > 0.0 && a <= 1.0)) {
    throw ParameterError("generalized Pinsker: order must lie in (0, 1]");
  }
  const double sup = f.sup_norm();
  const double kl = relative_entropy(q, p);
  const double d_alpha = a == 1.0 ? kl : renyi_divergence(q, p, a);
  const double chi2 = chi_squared(q, p);
  const double h = hellinger(q, p);
  const double var_p = variance(p, f);
  const double var_q = variance(q, f);
  const double gap = expectation(q, f) - expectation(p, f);

  ClassicalBounds b;
  b.alpha = a;
  b.ckp = sup * std::sqrt(2.0 * kl);
  b.pinsker = sup * std::sqrt(2.0 * d_alpha / a);
  b.scheffe = sup * (2.0 - std::exp(-kl));
  b.chapman_robbins = std::sqrt(var_p) * std::sqrt(chi2);
  b.le_cam = 2.0 * sup * h * std::sqrt(std::max(0.0, 1.0 - 0.25 * h * h));
  b.hellinger_improved = std::sqrt(2.0) * h * std::sqrt(var_p + var_q + 0.5 * gap * gap);
  return b;
}

double hellinger_unshifted_bound(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                 const Observable& f) {
  require_same_size(p.size(), f.size(), "hellinger bound");
  double second_p = 0.0;
  double second_q = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    second_p += p[i] * f[i] * f[i];
    second_q += q[i] * f[i] * f[i];
  }
  return std::sqrt(2.0) * hellinger(q, p) * std::sqrt(second_p + second_q);
}

DivergenceReport iid_scaled_divergences(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                        int n, double alpha) {
  if (n < 1) throw ParameterError("iid scaling: N must be at least 1");
  const double nn = static_cast<double>(n);
  const double h = hellinger(q, p);
  const double chi2 = chi_squared(q, p);

  DivergenceReport r;
  r.kl = nn * relative_entropy(q, p);
  r.renyi = nn * renyi_divergence(q, p, alpha);
  r.renyi_alpha = alpha;
  // (1 + chi2)^N - 1 in log domain; expm1 saturates to +inf on overflow.
  r.log1p_chi2 = nn * std::log1p(chi2);
  r.chi2 = std::expm1(r.log1p_chi2);
  // 2 - 2 (1 - H^2/2)^N = -2 expm1(N log1p(-H^2/2))
  const double affinity_log = nn * std::log1p(-0.5 * h * h);
  r.hellinger = std::sqrt(std::max(0.0, -2.0 * std::expm1(affinity_log)));
  if (n == 1) r.tv = total_variation(p, q);
  return r;
}

}  // namespace infoscale
