#pragma once

#include <string>
#include <variant>

namespace infoscale {

/// Sign of the selected magnetization branch. For the mean field `positive`
/// is the upper branch; for the square-lattice model it is the h -> 0+ state.
enum class Branch { positive, negative };

struct Ising1DParams {
  double beta = 1.0;
  double J = 1.0;
  double h = 0.0;
};

struct Ising2DParams {
  double beta = 1.0;
  double J = 1.0;
  Branch branch = Branch::positive;
};

struct MeanFieldParams {
  double beta = 1.0;
  double J = 1.0;
  double h = 0.0;
  int d = 1;
  Branch branch = Branch::positive;
};

using ModelSpec = std::variant<Ising1DParams, Ising2DParams, MeanFieldParams>;

std::string model_name(const ModelSpec& model);

struct Ising1DQuantities {
  double magnetization = 0.0;
  double pressure = 0.0;
  double nn_correlation = 0.0;
  double variance_per_site = 0.0;
};

/// Thermodynamic-limit quantities of the nearest-neighbour chain
/// H = -J sum s_i s_{i+1} - h sum s_i at inverse temperature beta.
Ising1DQuantities ising1d_quantities(const Ising1DParams& p);

/// log[e^{bJ} cosh(bh) + k1] evaluated without overflow; depends on (bJ, bh).
double ising1d_pressure(double beta_j, double beta_h);

struct Ising2DQuantities {
  double spontaneous_magnetization = 0.0;
  double pressure = 0.0;
  double nn_correlation = 0.0;  // E[sum over the two bonds at a site of s_x s_y]
};

/// Critical inverse temperature log(1 + sqrt 2) / (2J) of the zero-field square lattice.
double ising2d_critical_beta(double J);

Ising2DQuantities ising2d_quantities(const Ising2DParams& p);

struct MeanFieldSolution {
  double m = 0.0;
  double h_mf = 0.0;
  double pressure = 0.0;
  double variance_per_site = 0.0;
};

/// Solves m = tanh(beta (h + J d m)). With several roots, h > 0 (h < 0) picks
/// the positive (negative) one and h = 0 defers to the branch.
MeanFieldSolution meanfield_solve(const MeanFieldParams& p);

/// Per-site exact magnetization of any supported model.
double model_magnetization(const ModelSpec& model);

/// Per-site relative entropy rate R(model_q || model_p) in the thermodynamic limit.
/// Supported ordered pairs: (meanfield, meanfield), (ising1d, meanfield),
/// (ising2d, meanfield) and (ising1d, ising1d).
double cross_model_re_rate(const ModelSpec& model_q, const ModelSpec& model_p);

/// Per-site uncentered cumulant generating function of the spin sum,
/// lim (1/N) log E exp(c sum s_x). Mean field and ising1d only.
double model_cgf(const ModelSpec& model_p, double c);

/// Per-site variance of the spin sum of a baseline model.
double model_variance(const ModelSpec& model_p);

struct PhaseRow {
  double param = 0.0;
  double baseline_qoi = 0.0;
  double true_qoi = 0.0;
  double xi_lower = 0.0;
  double xi_upper = 0.0;
  double lin_lower = 0.0;
  double lin_upper = 0.0;
  double re_rate = 0.0;
};

/// Bounds on the magnetization of model_q from the baseline model_p at one
/// parameter point; `param` is copied into the row unchanged.
PhaseRow phase_bound(const ModelSpec& model_q, const ModelSpec& model_p, double param = 0.0);

}  // namespace infoscale
