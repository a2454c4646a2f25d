#include "infoscale/exact_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "infoscale/errors.hpp"
#include "infoscale/goal_oriented.hpp"
#include "infoscale/quadrature.hpp"

namespace infoscale {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double log_abs_sinh(double x) {
  const double ax = std::abs(x);
  if (ax == 0.0) return -kInf;
  if (ax < 20.0) return std::log(std::sinh(ax));
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// log k1 with k1 = sqrt(e^{2bJ} sinh^2(bh) + e^{-2bJ}).
double ising1d_log_k1(double beta_j, double beta_h) {
  return 0.5 * log_add_exp(2.0 * beta_j + 2.0 * log_abs_sinh(beta_h), -2.0 * beta_j);
}

void require_beta(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError(std::string(what) + ": beta must be positive and finite");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ParameterError(std::string(what) + ": parameters must be finite");
}

struct OnsagerTerms {
  double s2;  // sinh^2(2 beta J)
  double c2;  // cosh^2(2 beta J)
};

double onsager_k(const OnsagerTerms& t, double theta) {
  return std::hypot(t.s2 - std::cos(2.0 * theta), std::sin(2.0 * theta));
}

// (s^2 - cos 2t + k) / (k (cosh^2 + k)) with the cancellation for s^2 < cos 2t removed.
double onsager_correlation_integrand(const OnsagerTerms& t, double theta) {
  const double a = t.s2 - std::cos(2.0 * theta);
  const double k = onsager_k(t, theta);
  if (k == 0.0) return 1.0 / t.c2;
  double numerator;
  if (a >= 0.0) {
    numerator = a + k;
  } else {
    const double s = std::sin(2.0 * theta);
    numerator = s * s / (k - a);
  }
  return numerator / (k * (t.c2 + k));
}

double mean_field_log_z1(double field) { return std::numbers::ln2 + log_cosh(field); }

}  // namespace

std::string model_name(const ModelSpec& model) {
  switch (model.index()) {
    case 0:
      return "ising1d";
    case 1:
      return "ising2d";
    default:
      return "meanfield";
  }
}

double ising1d_pressure(double beta_j, double beta_h) {
  return log_add_exp(beta_j + log_cosh(beta_h), ising1d_log_k1(beta_j, beta_h));
}

Ising1DQuantities ising1d_quantities(const Ising1DParams& p) {
  require_beta(p.beta, "ising1d");
  require_finite(p.J, "ising1d");
  require_finite(p.h, "ising1d");
  const double bj = p.beta * p.J;
  const double bh = p.beta * p.h;
  const double log_k1 = ising1d_log_k1(bj, bh);
  Ising1DQuantities q;
  q.pressure = ising1d_pressure(bj, bh);
  q.magnetization = bh == 0.0 ? 0.0 : std::copysign(std::exp(bj + log_abs_sinh(bh) - log_k1), bh);
  q.nn_correlation = 1.0 - 2.0 * std::exp(-2.0 * bj - log_k1 - q.pressure);
  q.variance_per_site = std::exp(-bj + log_cosh(bh) - 3.0 * log_k1);
  return q;
}

double ising2d_critical_beta(double J) {
  if (!(J > 0.0)) throw ParameterError("ising2d: J must be positive");
  return std::log(1.0 + std::numbers::sqrt2) / (2.0 * J);
}

Ising2DQuantities ising2d_quantities(const Ising2DParams& p) {
  require_beta(p.beta, "ising2d");
  const double beta_c = ising2d_critical_beta(p.J);
  const double two_k = 2.0 * p.beta * p.J;
  const double sh = std::sinh(two_k);
  const OnsagerTerms t{sh * sh, std::cosh(two_k) * std::cosh(two_k)};

  QuadratureOptions opts;
  if (std::abs(p.beta - beta_c) < 1e-3 * beta_c) opts.tolerance = 1e-8;

  Ising2DQuantities q;
  const double log_integral =
      adaptive_simpson([&](double th) { return std::log(t.c2 + onsager_k(t, th)); }, 0.0,
                       std::numbers::pi, opts);
  q.pressure = 0.5 * std::numbers::ln2 + log_integral / (2.0 * std::numbers::pi);
  const double corr_integral =
      adaptive_simpson([&](double th) { return onsager_correlation_integrand(t, th); }, 0.0,
                       std::numbers::pi, opts);
  q.nn_correlation = std::sinh(2.0 * two_k) / std::numbers::pi * corr_integral;
  if (p.beta > beta_c) {
    const double m0 = std::pow(1.0 - std::pow(sh, -4.0), 0.125);
    q.spontaneous_magnetization = p.branch == Branch::positive ? m0 : -m0;
  }
  return q;
}

MeanFieldSolution meanfield_solve(const MeanFieldParams& p) {
  require_beta(p.beta, "meanfield");
  require_finite(p.J, "meanfield");
  require_finite(p.h, "meanfield");
  if (p.d < 1) throw ParameterError("meanfield: dimension must be at least 1");
  const double coupling = p.beta * p.J * p.d;
  const double field = p.beta * std::abs(p.h);

  // The root for |h| lies in [0, 1] and is unique there; other signs follow by symmetry.
  double m = 0.0;
  if (field != 0.0 || coupling > 1.0) {
    auto phi = [&](double x) { return std::tanh(coupling * x + field) - x; };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (phi(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    // At h = 0 the lower end is the unstable root 0, so take the upper end.
    m = (field == 0.0 || std::abs(phi(hi)) <= std::abs(phi(lo))) ? hi : lo;
  }
  const bool negate = p.h < 0.0 || (p.h == 0.0 && p.branch == Branch::negative);
  if (negate) m = -m;

  MeanFieldSolution s;
  s.m = m;
  s.h_mf = p.h + p.J * p.d * m;
  s.pressure = mean_field_log_z1(p.beta * s.h_mf);
  s.variance_per_site = 1.0 - m * m;
  return s;
}

double model_magnetization(const ModelSpec& model) {
  if (const auto* a = std::get_if<Ising1DParams>(&model)) return ising1d_quantities(*a).magnetization;
  if (const auto* b = std::get_if<Ising2DParams>(&model)) {
    return ising2d_quantities(*b).spontaneous_magnetization;
  }
  return meanfield_solve(std::get<MeanFieldParams>(model)).m;
}

double cross_model_re_rate(const ModelSpec& model_q, const ModelSpec& model_p) {
  if (const auto* p = std::get_if<MeanFieldParams>(&model_p)) {
    const MeanFieldSolution base = meanfield_solve(*p);
    const double a_p = p->beta * base.h_mf;
    const double log_z_p = mean_field_log_z1(a_p);
    if (const auto* q = std::get_if<MeanFieldParams>(&model_q)) {
      const MeanFieldSolution target = meanfield_solve(*q);
      const double a_q = q->beta * target.h_mf;
      return std::max(0.0, log_z_p - mean_field_log_z1(a_q) + (a_q - a_p) * target.m);
    }
    if (const auto* q = std::get_if<Ising1DParams>(&model_q)) {
      const Ising1DQuantities t = ising1d_quantities(*q);
      return std::max(0.0, log_z_p - t.pressure + q->beta * q->J * t.nn_correlation +
                               q->beta * q->h * t.magnetization - a_p * t.magnetization);
    }
    const auto& q = std::get<Ising2DParams>(model_q);
    const Ising2DQuantities t = ising2d_quantities(q);
    return std::max(0.0, log_z_p - t.pressure + q.beta * q.J * t.nn_correlation -
                             a_p * t.spontaneous_magnetization);
  }
  const auto* p = std::get_if<Ising1DParams>(&model_p);
  const auto* q = std::get_if<Ising1DParams>(&model_q);
  if (p == nullptr || q == nullptr) {
    throw UnsupportedCombinationError("relative entropy rate: no closed form for " + model_name(model_q) +
                                      " against a " + model_name(model_p) + " baseline");
  }
  const Ising1DQuantities base = ising1d_quantities(*p);
  const Ising1DQuantities target = ising1d_quantities(*q);
  return std::max(0.0, base.pressure - target.pressure +
                           (q->beta * q->J - p->beta * p->J) * target.nn_correlation +
                           (q->beta * q->h - p->beta * p->h) * target.magnetization);
}

double model_cgf(const ModelSpec& model_p, double c) {
  if (!std::isfinite(c)) throw DomainError("model cgf: c must be finite");
  if (const auto* p = std::get_if<MeanFieldParams>(&model_p)) {
    const double a = p->beta * meanfield_solve(*p).h_mf;
    return log_cosh(c + a) - log_cosh(a);
  }
  if (const auto* p = std::get_if<Ising1DParams>(&model_p)) {
    require_beta(p->beta, "ising1d");
    const double bj = p->beta * p->J;
    const double bh = p->beta * p->h;
    return ising1d_pressure(bj, bh + c) - ising1d_pressure(bj, bh);
  }
  throw UnsupportedCombinationError("model cgf: the square-lattice model is not available as a baseline");
}

double model_variance(const ModelSpec& model_p) {
  if (const auto* p = std::get_if<MeanFieldParams>(&model_p)) return meanfield_solve(*p).variance_per_site;
  if (const auto* p = std::get_if<Ising1DParams>(&model_p)) return ising1d_quantities(*p).variance_per_site;
  throw UnsupportedCombinationError("model variance: the square-lattice model is not available as a baseline");
}

PhaseRow phase_bound(const ModelSpec& model_q, const ModelSpec& model_p, double param) {
  PhaseRow row;
  row.param = param;
  row.re_rate = cross_model_re_rate(model_q, model_p);
  row.baseline_qoi = model_magnetization(model_p);
  row.true_qoi = model_magnetization(model_q);
  const double mean = row.baseline_qoi;
  const double var = model_variance(model_p);
  const CgfSource source = CgfSource::symmetric(
      [model_p, mean](double c) { return std::max(0.0, model_cgf(model_p, c) - c * mean); }, kInf, var);
  const GoalBound b = xi_bounds(source, row.re_rate);
  row.xi_upper = mean + b.xi_plus;
  row.xi_lower = mean + b.xi_minus;
  row.lin_upper = mean + b.linearized_half_width;
  row.lin_lower = mean - b.linearized_half_width;
  return row;
}

}  // namespace infoscale
