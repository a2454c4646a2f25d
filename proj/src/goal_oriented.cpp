#include "infoscale/goal_oriented.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infoscale/errors.hpp"
#include "infoscale/optimize.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// expm1(x) - x without cancellation for small |x|.
double expm1_minus_x(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x2 * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0 + x * (1.0 / 120.0))));
  }
  return std::expm1(x) - x;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> shifted(std::span<const double> theta, std::span<const double> v, double c) {
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
  return out;
}

// Largest extent c > 0 (capped at 1e12) with theta + c v admissible.
double feasible_extent(const ExponentialFamily& family, std::span<const double> theta,
                       std::span<const double> v) {
  auto ok = [&](double c) { return family.admissible(shifted(theta, v, c)); };
  double good = 0.0;
  double bad = kInf;
  double c = 1.0;
  if (ok(c)) {
    good = c;
    while (good < 1e12) {
      c = 2.0 * good;
      if (!ok(c)) {
        bad = c;
        break;
      }
      good = c;
    }
    if (!std::isfinite(bad)) return kInf;
  } else {
    bad = c;
    while (true) {
      c = 0.5 * bad;
      if (c < 1e-12) return 0.0;
      if (ok(c)) {
        good = c;
        break;
      }
      bad = c;
    }
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (good + bad);
    if (ok(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace

double centered_cgf(const DiscreteDistribution& p, const Observable& f, double c) {
  if (p.size() != f.size()) throw DimensionError("centered cgf: observable and distribution sizes differ");
  if (!std::isfinite(c)) throw DomainError("centered cgf: c must be finite");
  const double mean = expectation(p, f);
  double max_abs = 0.0;
  double max_exp = -kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double e = c * (f[i] - mean);
    max_abs = std::max(max_abs, std::abs(e));
    max_exp = std::max(max_exp, e);
  }
  if (max_abs <= 1.0) {
    // log1p form keeps relative accuracy of the O(c^2) value near the origin.
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0) s += p[i] * expm1_minus_x(c * (f[i] - mean));
    }
    return std::max(0.0, std::log1p(s));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::exp(c * (f[i] - mean) - max_exp);
  }
  return std::max(0.0, max_exp + std::log(s));
}

CgfSource CgfSource::empirical(DiscreteDistribution p, Observable f) {
  if (p.size() != f.size()) throw DimensionError("cgf source: observable and distribution sizes differ");
  CgfSource s;
  s.variance_ = infoscale::variance(p, f);
  s.degenerate_ = essential_range(p, f) == 0.0;
  s.fn_ = [p = std::move(p), f = std::move(f)](double c) { return centered_cgf(p, f, c); };
  return s;
}

CgfSource CgfSource::analytic(Function centered_cgf_fn, double lower, double upper,
                              std::optional<double> variance) {
  if (!(lower < 0.0 && upper > 0.0)) {
    throw DomainError("cgf source: domain must contain a neighbourhood of the origin");
  }
  if (variance && !(*variance >= 0.0)) throw ParameterError("cgf source: variance must be nonnegative");
  CgfSource s;
  s.fn_ = std::move(centered_cgf_fn);
  s.lower_ = lower;
  s.upper_ = upper;
  s.variance_ = variance;
  s.degenerate_ = variance && *variance == 0.0;
  return s;
}

double CgfSource::operator()(double c) const {
  if (!(c > lower_ && c < upper_)) {
    throw DomainError("cgf source: c = " + std::to_string(c) + " outside the domain (" +
                      std::to_string(lower_) + ", " + std::to_string(upper_) + ")");
  }
  return fn_(c);
}

double CgfSource::variance() const {
  if (variance_) return *variance_;
  const double h = 1e-4 * std::min({1.0, upper_, -lower_});
  return std::max(0.0, ((*this)(h) + (*this)(-h)) / (h * h));
}

bool CgfSource::degenerate() const { return degenerate_; }

GoalBound GoalBound::scaled(double factor) const {
  GoalBound b = *this;
  b.xi_plus *= factor;
  b.xi_minus *= factor;
  b.linearized_half_width *= factor;
  return b;
}

double linearized_half_width(double var_p_f, double relative_entropy_value) {
  if (var_p_f < 0.0 || relative_entropy_value < 0.0) {
    throw ParameterError("linearized bound: arguments must be nonnegative");
  }
  return std::sqrt(var_p_f) * std::sqrt(2.0 * relative_entropy_value);
}

double xi_plus_objective(const CgfSource& source, double relative_entropy_value, double c) {
  return (source(c) + relative_entropy_value) / c;
}

GoalBound xi_bounds(const CgfSource& source, double relative_entropy_value) {
  const double r = relative_entropy_value;
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw ParameterError("goal-oriented bound: relative entropy must be finite and nonnegative");
  }
  GoalBound out;
  if (r == 0.0 || source.degenerate()) return out;

  auto solve = [&](double sign, double limit) {
    if (!(limit > 0.0)) throw UnboundedObservableError("goal-oriented bound: empty cgf domain");
    LineSearchOptions opts;
    opts.upper_limit = limit;
    try {
      return minimize_positive([&](double c) { return (source(sign * c) + r) / c; }, opts);
    } catch (const DomainError&) {
      throw UnboundedObservableError("goal-oriented bound: cgf is not finite for any c > 0");
    }
  };
  const LineMinimum up = solve(1.0, source.upper());
  const LineMinimum down = solve(-1.0, -source.lower());
  out.xi_plus = std::max(0.0, up.value);
  out.c_star_plus = up.argmin;
  out.xi_minus = std::min(0.0, -down.value);
  out.c_star_minus = down.argmin;
  out.linearized_half_width = linearized_half_width(source.variance(), r);
  return out;
}

GoalBound xi_tensorized(const DiscreteDistribution& p, const DiscreteDistribution& q,
                        const Observable& g, int n) {
  if (n < 1) throw ParameterError("tensorized bound: N must be at least 1");
  return xi_bounds(CgfSource::empirical(p, g), relative_entropy(q, p));
}

bool ExponentialFamily::admissible(std::span<const double> theta) const {
  if (theta.size() != dimension) return false;
  if (in_domain) return in_domain(theta);
  return std::isfinite(log_normalizer(theta));
}

double expfam_relative_entropy(const ExponentialFamily& family, std::span<const double> theta_prime,
                               std::span<const double> theta) {
  if (theta_prime.size() != family.dimension || theta.size() != family.dimension) {
    throw DimensionError("exponential family: parameter dimension mismatch");
  }
  if (!family.admissible(theta_prime) || !family.admissible(theta)) {
    throw ParameterError("exponential family: parameter outside the natural domain");
  }
  const auto grad = family.gradient(theta_prime);
  double s = family.log_normalizer(theta) - family.log_normalizer(theta_prime);
  for (std::size_t i = 0; i < family.dimension; ++i) s += (theta_prime[i] - theta[i]) * grad[i];
  return std::max(0.0, s);
}

GoalBound expfam_xi_bounds(const ExponentialFamily& family, std::span<const double> theta_prime,
                           std::span<const double> theta, std::span<const double> direction) {
  if (direction.size() != family.dimension) {
    throw DimensionError("exponential family: direction dimension mismatch");
  }
  const double r = expfam_relative_entropy(family, theta_prime, theta);
  const bool zero_direction =
      std::all_of(direction.begin(), direction.end(), [](double x) { return x == 0.0; });
  if (zero_direction || r == 0.0) return GoalBound{};

  std::vector<double> minus_direction(direction.begin(), direction.end());
  for (double& x : minus_direction) x = -x;
  const double upper = feasible_extent(family, theta, direction);
  const double lower = feasible_extent(family, theta, minus_direction);
  if (!(upper > 0.0) || !(lower > 0.0)) {
    throw DomainError("exponential family: no feasible c interval along the direction");
  }

  const std::vector<double> base(theta.begin(), theta.end());
  const std::vector<double> v(direction.begin(), direction.end());
  const double f0 = family.log_normalizer(base);
  const double slope = dot(v, family.gradient(base));
  auto cgf = [&family, base, v, f0, slope](double c) {
    return family.log_normalizer(shifted(base, v, c)) - f0 - c * slope;
  };
  const CgfSource source = CgfSource::analytic(cgf, -lower, upper);
  return xi_bounds(source, r);
}

}  // namespace infoscale
