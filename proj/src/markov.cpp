#include "infoscale/markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "infoscale/errors.hpp"
#include "infoscale/perron.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPaths = 2'000'000;

std::vector<bool> reachable(const Eigen::MatrixXd& m, bool transpose) {
  const Eigen::Index n = m.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Eigen::Index> todo{0};
  seen[0] = true;
  while (!todo.empty()) {
    const Eigen::Index x = todo.front();
    todo.pop_front();
    for (Eigen::Index y = 0; y < n; ++y) {
      const double w = transpose ? m(y, x) : m(x, y);
      if (w > 0.0 && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        todo.push_back(y);
      }
    }
  }
  return seen;
}

void require_pair(const TransitionMatrix& q, const TransitionMatrix& p, const char* what) {
  if (q.size() != p.size()) {
    throw DimensionError(std::string(what) + ": chains have different state counts");
  }
  if (!mutually_continuous(q, p)) {
    throw DivergenceUndefinedError(std::string(what) + ": transition supports differ");
  }
}

void require_observable(const TransitionMatrix& p, const Observable& g, const char* what) {
  if (g.size() != p.size()) {
    throw DimensionError(std::string(what) + ": observable length differs from the state count");
  }
}

bool is_constant(const Observable& g) {
  const auto v = g.values();
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

Eigen::VectorXd centered_values(const TransitionMatrix& p, const Observable& g) {
  const DiscreteDistribution mu = stationary_distribution(p);
  const double mean = expectation(mu, g);
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) out(static_cast<Eigen::Index>(i)) = g[i] - mean;
  return out;
}

double log_perron(const Eigen::MatrixXd& m) {
  PerronOptions opts;
  // Second differences of the log root need close to machine precision.
  opts.relative_tolerance = 1e-15;
  return std::log(perron_root(m, opts).root);
}

}  // namespace

TransitionMatrix::TransitionMatrix(std::vector<std::vector<double>> rows, std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  const std::size_t n = rows.size();
  if (n == 0) throw ParameterError("transition matrix: no states");
  if (!labels_.empty() && labels_.size() != n) {
    throw DimensionError("transition matrix: label count differs from the state count");
  }
  matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n) throw DimensionError("transition matrix: row " + std::to_string(x) + " has wrong length");
    double total = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double w = rows[x][y];
      if (!std::isfinite(w) || w < 0.0) {
        throw ParameterError("transition matrix: entries must be finite and nonnegative");
      }
      matrix_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = w;
      total += w;
    }
    if (std::abs(total - 1.0) > kRowTolerance) {
      throw ParameterError("transition matrix: row " + std::to_string(x) + " sums to " + std::to_string(total));
    }
  }
  const auto fwd = reachable(matrix_, false);
  const auto bwd = reachable(matrix_, true);
  const bool irreducible = std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
                           std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
  if (!irreducible) throw StructureError("transition matrix: chain is reducible");
}

DiscreteDistribution TransitionMatrix::row(std::size_t x) const {
  std::vector<double> w(size());
  for (std::size_t y = 0; y < size(); ++y) w[y] = (*this)(x, y);
  return DiscreteDistribution(std::move(w), Normalize::yes);
}

int TransitionMatrix::period() const {
  const std::size_t n = size();
  std::vector<long> level(n, -1);
  std::deque<std::size_t> todo{0};
  level[0] = 0;
  long g = 0;
  while (!todo.empty()) {
    const std::size_t x = todo.front();
    todo.pop_front();
    for (std::size_t y = 0; y < n; ++y) {
      if ((*this)(x, y) <= 0.0) continue;
      if (level[y] < 0) {
        level[y] = level[x] + 1;
        todo.push_back(y);
      } else {
        g = std::gcd(g, std::abs(level[x] + 1 - level[y]));
      }
    }
  }
  return static_cast<int>(g);
}

bool mutually_continuous(const TransitionMatrix& q, const TransitionMatrix& p) {
  if (q.size() != p.size()) throw DimensionError("mutual continuity: chains have different state counts");
  return ((q.matrix().array() > 0.0) == (p.matrix().array() > 0.0)).all();
}

DiscreteDistribution stationary_distribution(const TransitionMatrix& p) {
  const Eigen::Index n = p.matrix().rows();
  Eigen::MatrixXd a = p.matrix().transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  const auto lu = a.fullPivLu();
  Eigen::VectorXd mu = lu.solve(rhs);
  // One step of iterative refinement.
  mu += lu.solve(rhs - a * mu);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = std::max(0.0, mu(i));
  return DiscreteDistribution(std::move(w), Normalize::yes);
}

double relative_entropy_rate(const TransitionMatrix& q, const TransitionMatrix& p) {
  require_pair(q, p, "relative entropy rate");
  const DiscreteDistribution mu_q = stationary_distribution(q);
  double s = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) s += mu_q[x] * relative_entropy(q.row(x), p.row(x));
  return std::max(0.0, s);
}

double renyi_rate(const TransitionMatrix& q, const TransitionMatrix& p, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw ParameterError("renyi rate: order must be positive and different from 1");
  }
  require_pair(q, p, "renyi rate");
  if (std::abs(alpha - 1.0) < 1e-6) return relative_entropy_rate(q, p);
  const Eigen::Index n = p.matrix().rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const double a = q.matrix()(x, y);
      const double b = p.matrix()(x, y);
      if (a > 0.0) m(x, y) = std::exp(alpha * std::log(a) + (1.0 - alpha) * std::log(b));
    }
  }
  return std::max(0.0, log_perron(m) / (alpha - 1.0));
}

double chi2_rate(const TransitionMatrix& q, const TransitionMatrix& p) { return renyi_rate(q, p, 2.0); }

double hellinger_limit(const TransitionMatrix& q, const TransitionMatrix& p) {
  if (q.size() != p.size()) throw DimensionError("hellinger limit: chains have different state counts");
  return q.matrix() == p.matrix() ? 0.0 : std::sqrt(2.0);
}

double lambda_pg(const TransitionMatrix& p, const Observable& g, double c) {
  require_observable(p, g, "lambda_pg");
  if (!std::isfinite(c)) throw DomainError("lambda_pg: c must be finite");
  if (c == 0.0 || is_constant(g)) return 0.0;
  const Eigen::VectorXd centered = centered_values(p, g);
  const Eigen::VectorXd exponent = c * centered;
  const double shift = exponent.maxCoeff();
  const Eigen::VectorXd col_scale = (exponent.array() - shift).exp();
  const Eigen::MatrixXd m = p.matrix() * col_scale.asDiagonal();
  return log_perron(m) + shift;
}

double integrated_autocorrelation(const TransitionMatrix& p, const Observable& g) {
  require_observable(p, g, "integrated autocorrelation");
  if (p.period() != 1) {
    throw StructureError("integrated autocorrelation: chain is periodic (period " +
                         std::to_string(p.period()) + ")");
  }
  if (is_constant(g)) return 0.0;
  const DiscreteDistribution mu = stationary_distribution(p);
  const Eigen::Index n = p.matrix().rows();
  Eigen::VectorXd mu_vec(n);
  for (Eigen::Index i = 0; i < n; ++i) mu_vec(i) = mu[static_cast<std::size_t>(i)];
  const Eigen::VectorXd centered = centered_values(p, g);
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(n, n) - p.matrix() + Eigen::VectorXd::Ones(n) * mu_vec.transpose();
  const Eigen::VectorXd h = a.fullPivLu().solve(centered);
  const double var = mu_vec.dot(centered.cwiseProduct(centered));
  const double summed = mu_vec.dot(centered.cwiseProduct(h));
  return std::max(0.0, 2.0 * summed - var);
}

namespace {

CgfSource rate_source(const TransitionMatrix& p, const Observable& g, double* iact_out) {
  std::optional<double> variance;
  double iact = std::numeric_limits<double>::quiet_NaN();
  if (is_constant(g)) {
    variance = 0.0;
    iact = 0.0;
  } else if (p.period() == 1) {
    iact = integrated_autocorrelation(p, g);
    variance = iact;
  }
  if (iact_out) *iact_out = iact;
  return CgfSource::analytic([p, g](double c) { return lambda_pg(p, g, c); }, -kInf, kInf, variance);
}

}  // namespace

RateBound xi_rate_bounds(const TransitionMatrix& q, const TransitionMatrix& p, const Observable& g) {
  require_pair(q, p, "rate bounds");
  require_observable(p, g, "rate bounds");
  RateBound out;
  const CgfSource source = rate_source(p, g, &out.iact);
  out.rer = relative_entropy_rate(q, p);
  const GoalBound b = xi_bounds(source, out.rer);
  out.xi_plus_rate = b.xi_plus;
  out.xi_minus_rate = b.xi_minus;
  out.c_star_plus = b.c_star_plus;
  out.c_star_minus = b.c_star_minus;
  out.linearized_half_width = b.linearized_half_width;
  out.lambda_curve = [p, g](double c) { return lambda_pg(p, g, c); };
  return out;
}

CheapRateBounds cheap_rate_bounds(const TransitionMatrix& q, const TransitionMatrix& p,
                                  const Observable& g) {
  require_pair(q, p, "cheap rate bounds");
  require_observable(p, g, "cheap rate bounds");
  CheapRateBounds out;
  out.rer = relative_entropy_rate(q, p);
  for (std::size_t x = 0; x < p.size(); ++x) {
    out.sup_row_re = std::max(out.sup_row_re, relative_entropy(q.row(x), p.row(x)));
    for (std::size_t y = 0; y < p.size(); ++y) {
      if (p(x, y) > 0.0) out.sup_log_ratio = std::max(out.sup_log_ratio, std::abs(std::log(q(x, y) / p(x, y))));
    }
  }
  double iact = 0.0;
  const CgfSource source = rate_source(p, g, &iact);
  out.with_rer = xi_bounds(source, out.rer);
  out.with_sup_row_re = xi_bounds(source, out.sup_row_re);
  out.with_sup_log_ratio = xi_bounds(source, out.sup_log_ratio);
  const double v = source.variance();
  out.linearized_rer = linearized_half_width(v, out.rer);
  out.linearized_sup_row_re = linearized_half_width(v, out.sup_row_re);
  out.linearized_sup_log_ratio = linearized_half_width(v, out.sup_log_ratio);
  return out;
}

PathMeasures enumerate_paths(const TransitionMatrix& q, const TransitionMatrix& p,
                             const DiscreteDistribution& initial_q,
                             const DiscreteDistribution& initial_p, const Observable& g, int steps) {
  if (q.size() != p.size()) throw DimensionError("path enumeration: chains have different state counts");
  require_observable(p, g, "path enumeration");
  if (initial_q.size() != p.size() || initial_p.size() != p.size()) {
    throw DimensionError("path enumeration: initial law has the wrong size");
  }
  if (steps < 1) throw ParameterError("path enumeration: N must be at least 1");
  const std::size_t n = p.size();
  double count = 1.0;
  for (int i = 0; i <= steps; ++i) count *= static_cast<double>(n);
  if (count > static_cast<double>(kMaxPaths)) {
    throw StructureError("path enumeration: " + std::to_string(static_cast<long long>(count)) +
                         " paths exceed the cap of 2e6");
  }

  std::vector<double> wq(initial_q.weights().begin(), initial_q.weights().end());
  std::vector<double> wp(initial_p.weights().begin(), initial_p.weights().end());
  std::vector<double> sum(n, 0.0);
  for (int step = 0; step < steps; ++step) {
    const std::size_t m = wq.size();
    std::vector<double> nq(m * n), np(m * n), ns(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t last = i % n;
      for (std::size_t y = 0; y < n; ++y) {
        nq[i * n + y] = wq[i] * q(last, y);
        np[i * n + y] = wp[i] * p(last, y);
        ns[i * n + y] = sum[i] + g[y];
      }
    }
    wq = std::move(nq);
    wp = std::move(np);
    sum = std::move(ns);
  }
  return PathMeasures{DiscreteDistribution(std::move(wq), Normalize::yes),
                      DiscreteDistribution(std::move(wp), Normalize::yes), Observable(std::move(sum)),
                      steps};
}

}  // namespace infoscale
